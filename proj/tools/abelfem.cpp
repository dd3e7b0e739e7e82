// Command-line front end for the Abel-type Galerkin solver: single solves,
// convergence and fixed-order studies, alpha sweeps, quadrature checks, and
// the separable-kernel admissibility report.

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "abelfem/abelfem.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
  std::string problem = "exp1";
  int m = 1;
  double alpha = 0.5;
  std::string n_list = "32,64,128,256,512";
  std::string order_mode = "s2";
  int n_modes = 4096;
  int threads = 0;  // 0: ABELFEM_THREADS or hardware default
  bool allow_large = false;
  std::string out_csv, out_svg, config_path;
};

void add_common_flags(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--problem", o.problem, "problem id (exp1, exp2, exp2:alpha=<v>, manufactured:...)");
  cmd->add_option("--m", o.m, "polynomial degree of the trial space")->check(CLI::Range(0, 6));
  cmd->add_option("--alpha", o.alpha, "singularity order in (0,1)");
  cmd->add_option("--n-list", o.n_list, "comma-separated ascending element counts");
  cmd->add_option("--order-mode", o.order_mode, "s1..s5 (adaptive prefactor) or fixed:<k>");
  cmd->add_option("--n-modes", o.n_modes, "spectral norm truncation");
  cmd->add_option("--threads", o.threads, "worker threads (default: ABELFEM_THREADS or hardware)");
  cmd->add_flag("--allow-large", o.allow_large, "allow N > 1024 for m >= 1 (dense memory)");
  cmd->add_option("--out-csv", o.out_csv, "CSV output path");
  cmd->add_option("--out-svg", o.out_svg, "SVG log-log plot output path");
  cmd->add_option("--config", o.config_path, "config file (flat key = value with [section] headers)");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t pos = 0;
    const int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw abelfem::ConfigError("bad integer list entry: " + tok);
    out.push_back(v);
  }
  if (out.empty()) throw abelfem::ConfigError("empty integer list");
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw abelfem::ConfigError("bad number list entry: " + tok);
    out.push_back(v);
  }
  if (out.empty()) throw abelfem::ConfigError("empty number list");
  return out;
}

abelfem::OrderMode parse_order_mode(const std::string& text) {
  if (text.size() == 2 && text[0] == 's' && text[1] >= '1' && text[1] <= '5')
    return abelfem::OrderMode::adaptive(text[1] - '0');
  if (text.rfind("fixed:", 0) == 0) {
    std::size_t pos = 0;
    const std::string arg = text.substr(6);
    const int k = std::stoi(arg, &pos);
    if (pos != arg.size() || k < 1)
      throw abelfem::ConfigError("bad fixed order in order mode: " + text);
    return abelfem::OrderMode::fixed_order(k);
  }
  throw abelfem::ConfigError("unknown order mode: " + text + " (expected s1..s5 or fixed:<k>)");
}

int env_threads() {
  const char* env = std::getenv("ABELFEM_THREADS");
  if (!env) return 0;
  try {
    return std::max(0, std::stoi(env));
  } catch (const std::exception&) {
    throw abelfem::ConfigError("ABELFEM_THREADS is not an integer");
  }
}

// File values fill any option the command line left at its default;
// flags override the file.
void apply_config_file(CommonOpts& o, const CLI::App* cmd) {
  if (o.config_path.empty()) return;
  const abelfem::Config cfg = abelfem::Config::parse_file(o.config_path);
  cfg.require_known({"study.problem", "study.m", "study.alpha", "study.n_list",
                     "study.order_mode", "study.n_modes", "study.threads",
                     "study.allow_large", "output.csv", "output.svg"});
  auto defaulted = [&](const char* flag) { return cmd->count(flag) == 0; };
  if (defaulted("--problem")) o.problem = cfg.get_string("study.problem", o.problem);
  if (defaulted("--m")) o.m = cfg.get_int("study.m", o.m);
  if (defaulted("--alpha")) o.alpha = cfg.get_double("study.alpha", o.alpha);
  if (defaulted("--n-list")) o.n_list = cfg.get_string("study.n_list", o.n_list);
  if (defaulted("--order-mode")) o.order_mode = cfg.get_string("study.order_mode", o.order_mode);
  if (defaulted("--n-modes")) o.n_modes = cfg.get_int("study.n_modes", o.n_modes);
  if (defaulted("--threads")) o.threads = cfg.get_int("study.threads", o.threads);
  if (defaulted("--allow-large")) o.allow_large = cfg.get_bool("study.allow_large", o.allow_large);
  if (defaulted("--out-csv")) o.out_csv = cfg.get_string("output.csv", o.out_csv);
  if (defaulted("--out-svg")) o.out_svg = cfg.get_string("output.svg", o.out_svg);
}

abelfem::StudyConfig make_study_config(const CommonOpts& o) {
  abelfem::StudyConfig cfg;
  cfg.problem_id = o.problem;
  cfg.alpha = o.alpha;
  cfg.m = o.m;
  cfg.n_list = parse_int_list(o.n_list);
  cfg.order = parse_order_mode(o.order_mode);
  cfg.n_modes = o.n_modes;
  cfg.threads = o.threads > 0 ? o.threads : env_threads();
  cfg.allow_large = o.allow_large;
  cfg.validate();
  return cfg;
}

void print_report(const abelfem::ConvergenceReport& rep) {
  std::printf("# series %s\n%s", rep.label.c_str(), abelfem::to_csv(rep.rows).c_str());
  if (rep.rows.size() > 1)
    std::printf("# fitted slope %.4f (rms residual %.4f)\n", rep.fitted_slope,
                rep.slope_residual);
}

abelfem::PlotSeries to_series(const abelfem::ConvergenceReport& rep) {
  abelfem::PlotSeries s;
  s.label = rep.label;
  for (const auto& r : rep.rows) {
    s.x.push_back(static_cast<double>(r.n));
    s.y.push_back(r.error);
  }
  return s;
}

int cmd_convergence(const CommonOpts& o, bool single) {
  abelfem::StudyConfig cfg = make_study_config(o);
  if (single && cfg.n_list.size() != 1)
    throw abelfem::ConfigError("solve takes exactly one N");
  const abelfem::ConvergenceReport rep = abelfem::run_convergence(cfg);
  print_report(rep);
  if (!o.out_csv.empty()) abelfem::write_csv(o.out_csv, rep.rows);
  if (!o.out_svg.empty()) {
    abelfem::PlotOptions opt;
    opt.title = "error vs N (" + cfg.problem_id + ", m=" + std::to_string(cfg.m) + ")";
    opt.y_label = "error";
    opt.reference_slope = cfg.m + 1.0;
    abelfem::write_loglog_svg(o.out_svg, {to_series(rep)}, opt);
  }
  return 0;
}

int cmd_fixed_order(const CommonOpts& o, const std::string& orders_text) {
  abelfem::StudyConfig cfg = make_study_config(o);
  const std::vector<int> orders = parse_int_list(orders_text);
  const auto reports = abelfem::run_fixed_order_study(cfg, orders);
  std::vector<abelfem::PlotSeries> series;
  for (const auto& rep : reports) {
    print_report(rep);
    series.push_back(to_series(rep));
    if (!o.out_csv.empty()) {
      std::string path = o.out_csv;
      const auto dot = path.rfind('.');
      const std::string tag = "_" + rep.label;
      if (dot == std::string::npos) path += tag;
      else path.insert(dot, tag);
      abelfem::write_csv(path, rep.rows);
    }
  }
  if (!o.out_svg.empty()) {
    abelfem::PlotOptions opt;
    opt.title = "fixed-order study (m=" + std::to_string(cfg.m) + ")";
    abelfem::write_loglog_svg(o.out_svg, series, opt);
  }
  return 0;
}

int cmd_alpha_sweep(const CommonOpts& o, const std::string& alphas_text) {
  abelfem::StudyConfig cfg = make_study_config(o);
  if (cfg.problem_id == "exp1") cfg.problem_id = "exp2";  // sweep needs the alpha family
  const std::vector<double> alphas = parse_double_list(alphas_text);
  const auto rows = abelfem::run_alpha_sweep(cfg, alphas);
  std::printf("alpha,error,rel_error\n");
  for (const auto& r : rows)
    std::printf("%s,%s,%s\n", abelfem::format_real(r.alpha).c_str(),
                abelfem::format_real(r.error).c_str(),
                abelfem::format_real(r.rel_error).c_str());
  if (!o.out_csv.empty()) {
    std::ofstream out(o.out_csv);
    if (!out) throw std::runtime_error("cannot write csv file: " + o.out_csv);
    out << "alpha,error,rel_error\n";
    for (const auto& r : rows)
      out << abelfem::format_real(r.alpha) << ',' << abelfem::format_real(r.error)
          << ',' << abelfem::format_real(r.rel_error) << "\n";
  }
  if (!o.out_svg.empty()) {
    abelfem::PlotSeries s;
    s.label = "relative error";
    for (const auto& r : rows) {
      s.x.push_back(r.alpha);
      s.y.push_back(r.rel_error);
    }
    abelfem::PlotOptions opt;
    opt.title = "relative error vs alpha (N=" + std::to_string(cfg.n_list[0]) + ")";
    opt.x_label = "alpha";
    abelfem::write_loglog_svg(o.out_svg, {s}, opt);
  }
  return 0;
}

int cmd_quad_check() {
  std::printf("rule,n,param,worst_moment_error\n");
  for (int n = 1; n <= 20; ++n) {
    const auto rule = abelfem::gauss_legendre(n);
    double worst = 0.0;
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double acc = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q)
        acc += rule.weights[q] * std::pow(rule.nodes[q], k);
      worst = std::max(worst, std::abs(acc - 1.0 / (k + 1)) * (k + 1));
    }
    std::printf("legendre,%d,,%.3e\n", n, worst);
  }
  for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    for (int n : {2, 5, 10, 20}) {
      const auto rule = abelfem::gauss_jacobi(n, 0.0, alpha);
      double worst = 0.0;
      for (int k = 0; k <= 2 * n - 1; ++k) {
        double acc = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q)
          acc += rule.weights[q] * std::pow(rule.nodes[q], k);
        const double exact = abelfem::beta_function(1.0, alpha + k + 1.0);
        worst = std::max(worst, std::abs(acc - exact) / exact);
      }
      std::printf("jacobi(0;%.1f),%d,%.1f,%.3e\n", alpha, n, alpha, worst);
    }
  }
  return 0;
}

int cmd_admissibility(const CommonOpts& o) {
  abelfem::AdmissibilityInput in = abelfem::polynomial_kernel_admissibility(o.alpha);
  if (!o.config_path.empty()) {
    const abelfem::Config cfg = abelfem::Config::parse_file(o.config_path);
    in.d.clear();
    in.c_lower.clear();
    in.c_upper.clear();
    in.alpha = cfg.get_double("admissibility.alpha", o.alpha);
    in.c_cont = cfg.get_double("admissibility.c_c", 1.0);
    for (const auto& key : cfg.keys()) {
      if (key == "admissibility.alpha" || key == "admissibility.c_c") continue;
      if (key.rfind("admissibility.d_", 0) == 0) {
        const std::string body = key.substr(16);
        const auto us = body.find('_');
        if (us == std::string::npos)
          throw abelfem::ConfigError("bad kernel coefficient key: " + key);
        in.d[{std::stoi(body.substr(0, us)), std::stoi(body.substr(us + 1))}] =
            cfg.get_double(key, 0.0);
      } else if (key.rfind("admissibility.c_", 0) == 0) {
        in.c_lower[std::stoi(key.substr(16))] = cfg.get_double(key, 0.0);
      } else if (key.rfind("admissibility.C_", 0) == 0) {
        in.c_upper[std::stoi(key.substr(16))] = cfg.get_double(key, 0.0);
      } else {
        throw abelfem::ConfigError("unknown config key: " + key);
      }
    }
  }
  const abelfem::AdmissibilityReport rep = abelfem::evaluate_admissibility(in);
  std::printf("gamma=%.17g\nC_s^2=%.17g\ngamma_tilde=%.17g\nadmissible=%s\n",
              rep.gamma, rep.cs_squared, rep.gamma_tilde,
              rep.admissible ? "true" : "false");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Galerkin solver for generalized Abel-type integral equations"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string orders = "2,3,4,5,6,10";
  std::string alphas = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9";
  std::string dump_path;

  CLI::App* solve = app.add_subcommand("solve", "single assemble/solve/error run");
  add_common_flags(solve, opts);
  solve->add_option("--dump", dump_path, "binary dump of A and r");
  CLI::App* conv = app.add_subcommand("convergence", "error vs N study");
  add_common_flags(conv, opts);
  CLI::App* fixed = app.add_subcommand("fixed-order", "pollution study with fixed n1");
  add_common_flags(fixed, opts);
  fixed->add_option("--orders", orders, "comma-separated fixed orders");
  CLI::App* sweep = app.add_subcommand("alpha-sweep", "relative error across alpha at fixed N");
  add_common_flags(sweep, opts);
  sweep->add_option("--alphas", alphas, "comma-separated alpha values");
  app.add_subcommand("quad-check", "print quadrature moment-error table");
  CLI::App* adm = app.add_subcommand("admissibility", "separable-kernel ellipticity report");
  add_common_flags(adm, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    apply_config_file(opts, sub);
    const std::string name = sub->get_name();
    if (name == "solve") {
      if (!dump_path.empty()) {
        abelfem::StudyConfig cfg = make_study_config(opts);
        abelfem::AbelProblem problem = abelfem::make_problem(cfg.problem_id, cfg.alpha);
        abelfem::FeSpace space(abelfem::Mesh::uniform(cfg.n_list.back()), cfg.m);
        const auto policy = abelfem::make_policy(cfg, problem, space.mesh().h_max());
        abelfem::dump_system(dump_path, abelfem::assemble(space, problem, policy, cfg.threads));
      }
      return cmd_convergence(opts, true);
    }
    if (name == "convergence") return cmd_convergence(opts, false);
    if (name == "fixed-order") return cmd_fixed_order(opts, orders);
    if (name == "alpha-sweep") return cmd_alpha_sweep(opts, alphas);
    if (name == "quad-check") return cmd_quad_check();
    if (name == "admissibility") return cmd_admissibility(opts);
    return kExitConfig;
  } catch (const abelfem::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const abelfem::SingularSystemError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kExitNumerical;
  }
}
