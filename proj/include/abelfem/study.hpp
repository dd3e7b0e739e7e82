#ifndef ABELFEM_STUDY_HPP
#define ABELFEM_STUDY_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "abelfem/assembly.hpp"
#include "abelfem/csv.hpp"
#include "abelfem/fe_space.hpp"
#include "abelfem/norms.hpp"
#include "abelfem/problem.hpp"
#include "abelfem/quad_policy.hpp"
#include "abelfem/solve.hpp"

namespace abelfem {

/// Order mode of a study: adaptive with prefactor s_i = m + i + alpha/4
/// (i in 1..5), or one fixed order for every pair.
struct OrderMode {
  int adaptive_i = 2;
  std::optional<int> fixed;

  static OrderMode adaptive(int i) {
    if (i < 1 || i > 5) throw std::invalid_argument("adaptive order index must be in 1..5");
    OrderMode m;
    m.adaptive_i = i;
    return m;
  }
  static OrderMode fixed_order(int n) {
    if (n < 1) throw std::invalid_argument("fixed order must be >= 1");
    OrderMode m;
    m.fixed = n;
    return m;
  }
};

struct StudyConfig {
  std::string problem_id = "exp1";
  double alpha = 0.5;     // used by problems parameterized in alpha
  int m = 1;
  std::vector<int> n_list;  // ascending element counts
  OrderMode order;
  std::optional<double> beta;  // norm order; defaults to -alpha/2
  int n_modes = 4096;
  int threads = 1;
  bool allow_large = false;  // lifts the m>=1, N>2^10 dense-memory guard

  void validate() const {
    if (n_list.empty()) throw std::invalid_argument("study: N list must be non-empty");
    for (std::size_t k = 0; k < n_list.size(); ++k) {
      if (n_list[k] < 1) throw std::invalid_argument("study: N must be positive");
      if (k > 0 && n_list[k] <= n_list[k - 1])
        throw std::invalid_argument("study: N list must be ascending");
    }
    if (m >= 1 && !allow_large && n_list.back() > 1024)
      throw std::invalid_argument(
          "study: N > 1024 with m >= 1 needs allow_large (dense matrix memory)");
  }
};

struct ConvergenceReport {
  std::string label;
  std::vector<StudyRow> rows;
  double fitted_slope = 0.0;     // least squares on log2 N vs log2 error
  double slope_residual = 0.0;   // rms residual of that fit
};

namespace detail {

inline void fit_slope(ConvergenceReport& rep) {
  const std::size_t n = rep.rows.size();
  if (n < 2) return;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rep.rows) {
    const double x = std::log2(static_cast<double>(r.n));
    const double y = std::log2(r.error);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / denom;
  const double icept = (sy - slope * sx) / n;
  double res = 0.0;
  for (const auto& r : rep.rows) {
    const double x = std::log2(static_cast<double>(r.n));
    const double d = std::log2(r.error) - (slope * x + icept);
    res += d * d;
  }
  rep.fitted_slope = -slope;
  rep.slope_residual = std::sqrt(res / n);
}

}  // namespace detail

inline QuadPolicy make_policy(const StudyConfig& cfg, const AbelProblem& problem,
                              double h) {
  QuadPolicy policy;
  policy.m = cfg.m;
  policy.alpha = problem.alpha;
  policy.lambda_k = problem.kernel.lambda;
  policy.h = h;
  policy.increment = cfg.order.adaptive_i;
  policy.fixed_order = cfg.order.fixed;
  return policy;
}

/// One assemble/solve/error-norm pass per N.  The exact solution's spectral
/// coefficients are computed once and shared across all mesh sizes.
inline ConvergenceReport run_convergence(const StudyConfig& cfg) {
  cfg.validate();
  AbelProblem problem = make_problem(cfg.problem_id, cfg.alpha);
  if (!problem.exact)
    throw std::invalid_argument("convergence study needs a problem with an exact solution");
  const double beta = cfg.beta ? *cfg.beta : -problem.alpha / 2.0;
  SpectralNormEvaluator norms(cfg.n_modes, cfg.threads);
  const std::vector<double> exact_coeffs = norms.function_coeffs(*problem.exact);

  ConvergenceReport rep;
  rep.label = cfg.order.fixed ? "n1=" + std::to_string(*cfg.order.fixed)
                              : "s" + std::to_string(cfg.order.adaptive_i);
  double prev_error = 0.0;
  for (std::size_t k = 0; k < cfg.n_list.size(); ++k) {
    const int n = cfg.n_list[k];
    FeSpace space(Mesh::uniform(n), cfg.m);
    const QuadPolicy policy = make_policy(cfg, problem, space.mesh().h_max());
    GalerkinSystem sys = assemble(space, problem, policy, cfg.threads);
    SolveReport sol = solve_system(space, sys);
    const auto err = norms.error_norm(exact_coeffs, sol.solution, beta);
    if (!std::isfinite(err.absolute))
      throw std::runtime_error("convergence study: non-finite error norm");
    StudyRow row;
    row.n = n;
    row.h = space.mesh().h_max();
    row.m_dim = space.dim();
    row.error = err.absolute;
    row.rel_error = err.relative;
    if (k > 0) row.rate = std::log2(prev_error / err.absolute);
    prev_error = err.absolute;
    rep.rows.push_back(row);
  }
  detail::fit_slope(rep);
  return rep;
}

/// One convergence report per fixed order.
inline std::vector<ConvergenceReport> run_fixed_order_study(
    const StudyConfig& base, const std::vector<int>& fixed_orders) {
  if (fixed_orders.empty())
    throw std::invalid_argument("fixed-order study needs at least one order");
  std::vector<ConvergenceReport> reports;
  for (int n1 : fixed_orders) {
    StudyConfig cfg = base;
    cfg.order = OrderMode::fixed_order(n1);
    reports.push_back(run_convergence(cfg));
  }
  return reports;
}

struct AlphaSweepRow {
  double alpha = 0.0;
  double error = 0.0;
  double rel_error = 0.0;
};

/// Relative error at one fixed N across a list of alpha values, each on
/// its own problem instance (and its own H^{-alpha/2} surrogate order).
inline std::vector<AlphaSweepRow> run_alpha_sweep(const StudyConfig& base,
                                                  const std::vector<double>& alphas) {
  if (base.n_list.size() != 1)
    throw std::invalid_argument("alpha sweep runs at a single fixed N");
  std::vector<AlphaSweepRow> out;
  for (double a : alphas) {
    StudyConfig cfg = base;
    cfg.alpha = a;
    cfg.beta.reset();
    ConvergenceReport rep = run_convergence(cfg);
    AlphaSweepRow row;
    row.alpha = a;
    row.error = rep.rows[0].error;
    row.rel_error = rep.rows[0].rel_error;
    out.push_back(row);
  }
  return out;
}

}  // namespace abelfem

#endif
