#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>

#include "abelfem/assembly.hpp"
#include "support/oracle.hpp"

using namespace abelfem;

TEST_CASE("identical-panel integral matches the closed form for K=1") {
  // (1/Gamma(1/2)) int_0^1 int_0^x (x-y)^(-1/2) dy dx = (4/3)/sqrt(pi)
  AbelProblem p = manufactured_problem(0.5, [](double) { return 0.0; });
  FeSpace space(Mesh::uniform(1), 0);
  const double v = integrate_identical(space, p, 0, 0, 0, 5, 5);
  REQUIRE(v == Catch::Approx((4.0 / 3.0) / std::sqrt(M_PI)).epsilon(1e-13));
}

TEST_CASE("identical-panel integral is translation invariant for K=1") {
  AbelProblem p = manufactured_problem(0.5, [](double) { return 0.0; });
  FeSpace space(Mesh::uniform(4), 0);
  const double v0 = integrate_identical(space, p, 0, 0, 0, 6, 6);
  for (int e = 1; e < 4; ++e)
    REQUIRE(integrate_identical(space, p, e, e, e, 6, 6) ==
            Catch::Approx(v0).epsilon(1e-14));
}

TEST_CASE("identical-panel orders are saturated on experiment 1 panels") {
  const AbelProblem p = experiment1();
  for (int m : {0, 1}) {
    FeSpace space(Mesh::uniform(8), m);
    for (int e : {0, 3, 7}) {
      const int i = space.global_dof(e, 0);
      const int j = space.global_dof(e, m);
      const double a = integrate_identical(space, p, e, i, j, 4, 4);
      const double b = integrate_identical(space, p, e, i, j, 12, 12);
      REQUIRE(std::abs(a - b) <= 1e-12);
    }
  }
}

TEST_CASE("adjacent-panel integral matches closed form and oracle") {
  AbelProblem p = manufactured_problem(0.5, [](double) { return 0.0; });
  FeSpace space(Mesh::uniform(2), 0);
  const double v = integrate_adjacent(space, p, 1, 1, 0, 8);
  // int_{1/2}^1 int_0^{1/2} (x-y)^(-1/2) dy dx = (4/3)(1 - 2 (1/2)^{3/2})
  const double closed = (4.0 / 3.0) * (1.0 - 2.0 * std::pow(0.5, 1.5)) / std::sqrt(M_PI);
  REQUIRE(v == Catch::Approx(closed).epsilon(1e-12));
  REQUIRE(v == Catch::Approx(oracle::pair_integral(space, p, 1, 0, 0, 0)).epsilon(1e-10));
  REQUIRE_THROWS_AS(integrate_adjacent(space, p, 0, 0, 0, 8), std::invalid_argument);
}

TEST_CASE("separated-panel integral matches the closed form") {
  AbelProblem p = manufactured_problem(0.5, [](double) { return 0.0; });
  FeSpace space(Mesh::uniform(4), 0);
  // tau = [3/4,1], sigma = [0,1/4]
  const double closed =
      (4.0 / 3.0) *
      (1.0 - 2.0 * std::pow(0.75, 1.5) + std::pow(0.5, 1.5)) / std::sqrt(M_PI);
  const double v = integrate_separated(space, p, 3, 0, 3, 0, 20);
  REQUIRE(v == Catch::Approx(closed).epsilon(1e-10));
  REQUIRE_THROWS_AS(integrate_separated(space, p, 1, 0, 1, 0, 5), std::invalid_argument);
}

TEST_CASE("assembled matrix is lower triangular for m=0 with equal diagonal") {
  AbelProblem p = manufactured_problem(0.5, [](double) { return 0.0; });
  FeSpace space(Mesh::uniform(2), 0);
  QuadPolicy policy;
  policy.m = 0;
  policy.alpha = 0.5;
  policy.h = 0.5;
  const GalerkinSystem sys = assemble(space, p, policy);
  REQUIRE(sys.A.is_lower_triangular());
  REQUIRE(sys.A(0, 0) == Catch::Approx(sys.A(1, 1)).epsilon(1e-14));
  REQUIRE(sys.A(0, 1) == 0.0);
}

TEST_CASE("zero pattern for m=0, N=4 is the strict upper triangle") {
  const AbelProblem p = experiment1();
  FeSpace space(Mesh::uniform(4), 0);
  QuadPolicy policy;
  policy.m = 0;
  policy.alpha = 0.5;
  policy.h = 0.25;
  const GalerkinSystem sys = assemble(space, p, policy);
  const auto zeros = sys.zero_pattern();
  REQUIRE(zeros.size() == 6);
  for (const auto& [i, j] : zeros) {
    REQUIRE(j > i);
    REQUIRE(sys.A(i, j) == 0.0);
  }
}

TEST_CASE("entries match the subdivision oracle for small N") {
  for (int m : {0, 1}) {
    for (double alpha : {0.3, 0.5}) {
      AbelProblem p = experiment1();
      p.alpha = alpha;
      const int n = 4;
      FeSpace space(Mesh::uniform(n), m);
      QuadPolicy policy;
      policy.m = m;
      policy.alpha = alpha;
      policy.h = 1.0 / n;
      const GalerkinSystem sys = assemble(space, p, policy);
      for (int i = 0; i < space.dim(); ++i)
        for (int j = 0; j < space.dim(); ++j) {
          const double ref =
              structural_zero(space, i, j) ? 0.0 : oracle::matrix_entry(space, p, i, j);
          REQUIRE(std::abs(sys.A(i, j) - ref) <= 1e-8);
        }
    }
  }
}

TEST_CASE("symmetric part is positive definite") {
  for (double alpha : {0.1, 0.9}) {
    AbelProblem p = experiment1();
    p.alpha = alpha;
    FeSpace space(Mesh::uniform(8), 1);
    QuadPolicy policy;
    policy.m = 1;
    policy.alpha = alpha;
    policy.h = 1.0 / 8;
    const GalerkinSystem sys = assemble(space, p, policy);
    const auto eigs = symmetric_eigenvalues(sys.A.symmetric_part());
    REQUIRE(eigs.front() > 0.0);
  }
}

TEST_CASE("assembly is bit-identical across thread counts") {
  const AbelProblem p = experiment1();
  for (int m : {0, 1}) {
    FeSpace space(Mesh::uniform(16), m);
    QuadPolicy policy;
    policy.m = m;
    policy.alpha = 0.5;
    policy.h = 1.0 / 16;
    const GalerkinSystem ref = assemble(space, p, policy, 1);
    for (int threads : {2, 3, 7}) {
      const GalerkinSystem sys = assemble(space, p, policy, threads);
      REQUIRE(std::memcmp(sys.A.data().data(), ref.A.data().data(),
                          ref.A.data().size() * sizeof(double)) == 0);
      REQUIRE(sys.r == ref.r);
    }
  }
}

TEST_CASE("assembly stats account for every element pair") {
  const AbelProblem p = experiment1();
  FeSpace space(Mesh::uniform(8), 1);
  QuadPolicy policy;
  policy.m = 1;
  policy.alpha = 0.5;
  policy.h = 1.0 / 8;
  const GalerkinSystem sys = assemble(space, p, policy);
  REQUIRE(sys.stats.identical_pairs == 8);
  REQUIRE(sys.stats.adjacent_pairs == 7);
  REQUIRE(sys.stats.separated_pairs == 21);
  REQUIRE(sys.stats.zero_pairs == 28);
  REQUIRE(sys.stats.quad_points > 0);
  REQUIRE(sys.stats.max_order <= policy.n_max);
}

TEST_CASE("policy degree must match the space") {
  const AbelProblem p = experiment1();
  FeSpace space(Mesh::uniform(4), 1);
  QuadPolicy policy;
  policy.m = 0;
  policy.alpha = 0.5;
  policy.h = 0.25;
  REQUIRE_THROWS_AS(assemble(space, p, policy), std::invalid_argument);
}
