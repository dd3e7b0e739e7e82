#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "abelfem/assembly.hpp"
#include "abelfem/config.hpp"
#include "abelfem/csv.hpp"
#include "abelfem/svg.hpp"

using namespace abelfem;

TEST_CASE("config parsing with sections, comments and types") {
  const Config cfg = Config::parse_string(
      "# study setup\n"
      "top = 1\n"
      "[study]\n"
      "problem = exp1  ; trailing comment\n"
      "m = 1\n"
      "alpha = 0.5\n"
      "allow_large = true\n"
      "[output]\n"
      "csv = out.csv\n");
  REQUIRE(cfg.get_int("top", 0) == 1);
  REQUIRE(cfg.get_string("study.problem", "") == "exp1");
  REQUIRE(cfg.get_int("study.m", -1) == 1);
  REQUIRE(cfg.get_double("study.alpha", 0.0) == Catch::Approx(0.5));
  REQUIRE(cfg.get_bool("study.allow_large", false));
  REQUIRE(cfg.get_string("output.csv", "") == "out.csv");
  REQUIRE(cfg.get_int("study.missing", 7) == 7);
}

TEST_CASE("config rejects malformed input") {
  REQUIRE_THROWS_AS(Config::parse_string("novalue\n"), ConfigError);
  REQUIRE_THROWS_AS(Config::parse_string("[unterminated\n"), ConfigError);
  REQUIRE_THROWS_AS(Config::parse_string("a = 1\na = 2\n"), ConfigError);
  const Config cfg = Config::parse_string("a = x\nb = maybe\n");
  REQUIRE_THROWS_AS(cfg.get_double("a", 0.0), ConfigError);
  REQUIRE_THROWS_AS(cfg.get_bool("b", false), ConfigError);
}

TEST_CASE("unknown keys are rejected by name") {
  const Config cfg = Config::parse_string("[study]\nm = 1\ntypo_key = 3\n");
  try {
    cfg.require_known({"study.m"});
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    REQUIRE(std::string(e.what()).find("study.typo_key") != std::string::npos);
  }
}

TEST_CASE("csv round-trips exactly") {
  std::vector<StudyRow> rows(3);
  rows[0] = {32, 1.0 / 32, 33, 1.791594913239873e-05, 5.3172952e-05, std::nullopt};
  rows[1] = {64, 1.0 / 64, 65, 3.9697061e-06, 1.17817351e-05, 2.173912345678901};
  rows[2] = {128, 1.0 / 128, 129, 8.75e-07, 2.59e-06, 2.18};
  const auto back = from_csv(to_csv(rows));
  REQUIRE(back.size() == rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    REQUIRE(back[k].n == rows[k].n);
    REQUIRE(back[k].h == rows[k].h);
    REQUIRE(back[k].m_dim == rows[k].m_dim);
    REQUIRE(back[k].error == rows[k].error);
    REQUIRE(back[k].rel_error == rows[k].rel_error);
    REQUIRE(back[k].rate.has_value() == rows[k].rate.has_value());
    if (rows[k].rate) REQUIRE(*back[k].rate == *rows[k].rate);
  }
}

TEST_CASE("csv header is validated") {
  REQUIRE_THROWS(from_csv("n,h\n1,2\n"));
  const std::string good = std::string(kCsvHeader) + "\n";
  REQUIRE(from_csv(good).empty());
}

TEST_CASE("csv file io") {
  const std::string path = "test_roundtrip.csv";
  std::vector<StudyRow> rows(1);
  rows[0] = {8, 0.125, 9, 1.5e-3, 4.5e-3, std::nullopt};
  write_csv(path, rows);
  const auto back = read_csv(path);
  REQUIRE(back.size() == 1);
  REQUIRE(back[0].error == rows[0].error);
  std::remove(path.c_str());
}

TEST_CASE("svg rendering") {
  PlotSeries s;
  s.label = "series";
  s.x = {32, 64, 128};
  s.y = {1e-3, 2.5e-4, 6e-5};
  PlotOptions opt;
  opt.title = "test";
  opt.reference_slope = 2.0;
  const std::string svg = render_loglog_svg({s}, opt);
  REQUIRE(svg.find("<svg") != std::string::npos);
  REQUIRE(svg.find("polyline") != std::string::npos);
  REQUIRE(svg.find("stroke-dasharray") != std::string::npos);
  REQUIRE(svg.find("series") != std::string::npos);
  PlotSeries bad = s;
  bad.y[1] = 0.0;
  REQUIRE_THROWS_AS(render_loglog_svg({bad}, opt), std::invalid_argument);
  REQUIRE_THROWS_AS(render_loglog_svg({}, opt), std::invalid_argument);
}

TEST_CASE("binary dump layout") {
  const AbelProblem p = experiment1();
  FeSpace space(Mesh::uniform(3), 0);
  QuadPolicy policy;
  policy.m = 0;
  policy.alpha = 0.5;
  policy.h = 1.0 / 3;
  const GalerkinSystem sys = assemble(space, p, policy);
  const std::string path = "test_dump.bin";
  dump_system(path, sys);
  std::ifstream in(path, std::ios::binary);
  std::uint64_t dims[2];
  in.read(reinterpret_cast<char*>(dims), sizeof dims);
  REQUIRE(dims[0] == 3);
  REQUIRE(dims[1] == 3);
  std::vector<double> a(9), r(3);
  in.read(reinterpret_cast<char*>(a.data()), 9 * sizeof(double));
  in.read(reinterpret_cast<char*>(r.data()), 3 * sizeof(double));
  REQUIRE(in.good());
  REQUIRE(a == sys.A.data());
  REQUIRE(r == sys.r);
  std::remove(path.c_str());
}
