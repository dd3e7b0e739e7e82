#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "abelfem/norms.hpp"
#include "abelfem/fe_space.hpp"

using namespace abelfem;

namespace {

// Exact L2 norm of an FE function from its element-local polynomials.
double exact_l2(const FeSolution& v) {
  const FeSpace& s = *v.space;
  double acc = 0.0;
  for (int e = 0; e < s.mesh().num_elements(); ++e) {
    std::vector<double> p(s.degree() + 1, 0.0);
    for (int l = 0; l < s.local_count(); ++l) {
      const double c = v.coefficients[s.global_dof(e, l)];
      const auto& sh = s.shape_coeffs(l);
      for (std::size_t k = 0; k < sh.size(); ++k) p[k] += c * sh[k];
    }
    double cell = 0.0;
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = 0; b < p.size(); ++b) cell += p[a] * p[b] / (a + b + 1.0);
    acc += cell * s.mesh().element_size(e);
  }
  return std::sqrt(acc);
}

FeSolution random_fe(const FeSpace& s, std::mt19937& rng) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::vector<double> c(s.dim());
  for (auto& v : c) v = unif(rng);
  return FeSolution(s, std::move(c));
}

}  // namespace

TEST_CASE("integrate_poly_cos worked examples") {
  const double mu1 = 0.5 * M_PI;
  REQUIRE(integrate_poly_cos({1.0}, 0.0, 1.0, mu1) ==
          Catch::Approx(2.0 * std::sqrt(2.0) / M_PI).epsilon(1e-14));
  for (int n = 1; n <= 12; ++n) {
    const double mu = (n - 0.5) * M_PI;
    const double expected = std::sqrt(2.0) * (n % 2 == 1 ? 1.0 : -1.0) / mu;
    REQUIRE(integrate_poly_cos({1.0}, 0.0, 1.0, mu) ==
            Catch::Approx(expected).epsilon(1e-13));
  }
  // mu -> 0 limit: sqrt(2) * integral of p
  REQUIRE(integrate_poly_cos({1.0, 2.0}, 0.0, 1.0, 0.0) ==
          Catch::Approx(std::sqrt(2.0) * 2.0).epsilon(1e-14));
}

TEST_CASE("moment recurrence and series branches agree near the switch") {
  // same integral evaluated with mu*h slightly below and above 1 by
  // splitting the interval differently
  const double mu = 0.9;
  const std::vector<double> p{0.3, -0.7, 1.1};
  // reference by fine composite Gauss
  const QuadRule g = gauss_legendre(30);
  auto ref = [&](double a, double h) {
    double acc = 0.0;
    for (std::size_t k = 0; k < g.nodes.size(); ++k) {
      const double t = g.nodes[k];
      const double x = a + h * t;
      acc += h * g.weights[k] * (p[0] + t * (p[1] + t * p[2])) * std::sqrt(2.0) *
             std::cos(mu * x);
    }
    return acc;
  };
  for (double h : {0.9, 1.2, 2.0}) {  // mu*h = 0.81, 1.08, 1.8
    REQUIRE(integrate_poly_cos(p, 0.2, h, mu) ==
            Catch::Approx(ref(0.2, h)).epsilon(1e-13));
  }
}

TEST_CASE("basis functions are orthonormal") {
  SpectralNormEvaluator ev(64);
  const auto& mu = ev.frequencies();
  for (int n = 0; n < 20; ++n) {
    const auto coeffs = ev.function_coeffs(
        [&](double t) { return std::sqrt(2.0) * std::cos(mu[n] * t); });
    for (int k = 0; k < 64; ++k)
      REQUIRE(std::abs(coeffs[k] - (k == n ? 1.0 : 0.0)) <= 1e-10);
  }
}

TEST_CASE("coefficients of the constant function") {
  SpectralNormEvaluator ev(128);
  const auto from_function = ev.function_coeffs([](double) { return 1.0; });
  FeSpace space(Mesh::uniform(7), 1);
  const FeSolution one(space, std::vector<double>(space.dim(), 1.0));
  const auto from_fe = ev.fe_coeffs(one);
  for (int n = 0; n < 128; ++n) {
    const double mu = ev.frequencies()[n];
    const double expected = std::sqrt(2.0) * (n % 2 == 0 ? 1.0 : -1.0) / mu;
    REQUIRE(from_function[n] == Catch::Approx(expected).margin(1e-12));
    REQUIRE(from_fe[n] == Catch::Approx(expected).margin(1e-12));
  }
}

TEST_CASE("single-mode norm value") {
  SpectralNormEvaluator ev(64);
  const double mu1 = ev.frequencies()[0];
  const auto coeffs = ev.function_coeffs(
      [&](double t) { return std::sqrt(2.0) * std::cos(mu1 * t); });
  REQUIRE(ev.norm_from_coeffs(coeffs, -0.25) ==
          Catch::Approx(std::pow(0.5 * M_PI, -0.25)).epsilon(1e-10));
}

TEST_CASE("Parseval for random FE functions") {
  std::mt19937 rng(777);
  SpectralNormEvaluator ev(4096);
  // Continuous functions vanishing at t=1 lie in the span of the cosine
  // basis with mu^{-2} coefficient decay, so 4096 modes capture the L2
  // norm essentially exactly.
  {
    FeSpace space(Mesh::uniform(16), 1);
    for (int rep = 0; rep < 5; ++rep) {
      FeSolution v = random_fe(space, rng);
      v.coefficients.back() = 0.0;  // basis functions all vanish at t = 1
      const double l2 = exact_l2(v);
      REQUIRE(std::abs(ev.x_norm(v, 0.0) - l2) / l2 <= 1e-6);
    }
  }
  // Discontinuous functions only have mu^{-1} decay; the truncated sum is
  // still within the O(n_modes^{-1/2}) tail bound and improves with more
  // modes.
  {
    FeSpace space(Mesh::uniform(16), 0);
    SpectralNormEvaluator fine(8192);
    for (int rep = 0; rep < 3; ++rep) {
      const FeSolution v = random_fe(space, rng);
      const double l2 = exact_l2(v);
      const double err_coarse = std::abs(ev.x_norm(v, 0.0) - l2) / l2;
      const double err_fine = std::abs(fine.x_norm(v, 0.0) - l2) / l2;
      REQUIRE(err_coarse <= 2e-3);
      REQUIRE(err_fine < err_coarse);
    }
  }
}

TEST_CASE("norm is homogeneous and satisfies the triangle inequality") {
  std::mt19937 rng(4242);
  SpectralNormEvaluator ev(256);
  FeSpace space(Mesh::uniform(8), 1);
  for (int rep = 0; rep < 10; ++rep) {
    FeSolution v = random_fe(space, rng);
    FeSolution w = random_fe(space, rng);
    const auto cv = ev.fe_coeffs(v), cw = ev.fe_coeffs(w);
    std::vector<double> scaled = cv, sum = cv;
    for (std::size_t k = 0; k < cv.size(); ++k) {
      scaled[k] *= -3.5;
      sum[k] += cw[k];
    }
    for (double beta : {-0.25, 0.0, 0.4}) {
      REQUIRE(ev.norm_from_coeffs(scaled, beta) ==
              Catch::Approx(3.5 * ev.norm_from_coeffs(cv, beta)).epsilon(1e-13));
      REQUIRE(ev.norm_from_coeffs(sum, beta) <=
              ev.norm_from_coeffs(cv, beta) + ev.norm_from_coeffs(cw, beta) + 1e-12);
    }
  }
}

TEST_CASE("truncation is monotone") {
  FeSpace space(Mesh::uniform(8), 1);
  std::vector<double> c(space.dim(), 0.0);
  c[3] = 1.0;
  const FeSolution v(space, c);
  double prev = 0.0;
  for (int modes : {16, 64, 256, 1024}) {
    SpectralNormEvaluator ev(modes);
    const double norm = ev.x_norm(v, -0.25);
    REQUIRE(norm >= prev);
    prev = norm;
  }
}

TEST_CASE("error norm of a function against itself is zero") {
  std::mt19937 rng(99);
  SpectralNormEvaluator ev(256);
  FeSpace space(Mesh::uniform(6), 1);
  const FeSolution v = random_fe(space, rng);
  const auto res = ev.error_norm(ev.fe_coeffs(v), v, -0.25);
  REQUIRE(res.absolute <= 1e-12);
}

TEST_CASE("coefficient computation is identical across thread counts") {
  FeSpace space(Mesh::uniform(9), 1);
  std::vector<double> c(space.dim());
  for (int i = 0; i < space.dim(); ++i) c[i] = std::cos(2.0 * i);
  const FeSolution v(space, c);
  const auto ref = SpectralNormEvaluator(512, 1).fe_coeffs(v);
  for (int threads : {2, 5}) {
    const auto got = SpectralNormEvaluator(512, threads).fe_coeffs(v);
    REQUIRE(got == ref);
  }
}

TEST_CASE("evaluator rejects bad inputs") {
  REQUIRE_THROWS_AS(SpectralNormEvaluator(0), std::invalid_argument);
  SpectralNormEvaluator ev(8);
  REQUIRE_THROWS_AS(ev.norm_from_coeffs(std::vector<double>(7, 0.0), 0.0),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(integrate_poly_cos({}, 0.0, 1.0, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(integrate_poly_cos({1.0}, 0.0, 0.0, 1.0), std::invalid_argument);
}
