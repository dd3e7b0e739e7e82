#ifndef ABELFEM_PROBLEM_HPP
#define ABELFEM_PROBLEM_HPP

#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "abelfem/quadrature.hpp"

namespace abelfem {

/// Kernel K(x,y) on the closed triangle 0 <= y <= x <= 1, with the
/// analyticity constants entering the quadrature-order policy.
struct KernelSpec {
  std::function<double(double, double)> evaluate;
  double c_analytic = 1.0;   // C_K
  double lambda = 2.0;       // Lambda_K, assumed >= 2
  /// Separable representation sum d_{n,m} psi_n(x) psi_m(y), where known.
  std::map<std::pair<int, int>, double> separable;
};

struct AbelProblem {
  std::string name;
  double alpha = 0.5;
  KernelSpec kernel;
  std::function<double(double)> rhs;
  double rhs_lambda = 2.0;  // Lambda_g
  std::optional<std::function<double(double)>> exact;

  void validate() const {
    if (!(alpha > 0.0 && alpha < 1.0))
      throw std::invalid_argument("alpha must lie in (0,1)");
    if (kernel.lambda < 2.0)
      throw std::invalid_argument("kernel analyticity scale Lambda_K must be >= 2");
  }
};

/// High-accuracy evaluation of (A f)(x) = Gamma(alpha)^-1
/// int_0^x (x-y)^(alpha-1) K(x,y) f(y) dy.  The substitution y = x t turns
/// the singularity into the Gauss-Jacobi weight (1-t)^(alpha-1), so the
/// rule converges rapidly for analytic K and f.
inline double apply_operator(const AbelProblem& problem,
                             const std::function<double(double)>& f, double x,
                             const QuadRule& rule) {
  if (x < 0.0) throw std::invalid_argument("apply_operator: x must be nonnegative");
  if (x == 0.0) return 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double y = x * rule.nodes[k];
    acc += rule.weights[k] * problem.kernel.evaluate(x, y) * f(y);
  }
  return std::pow(x, problem.alpha) / std::tgamma(problem.alpha) * acc;
}

inline double apply_operator(const AbelProblem& problem,
                             const std::function<double(double)>& f, double x,
                             int order = 40) {
  return apply_operator(problem, f, x, gauss_jacobi(order, problem.alpha - 1.0, 0.0));
}

inline KernelSpec polynomial_test_kernel() {
  KernelSpec k;
  k.evaluate = [](double x, double y) { return 1.0 - (x + y) / 10.0 - x * y / 10.0; };
  k.lambda = 2.0;
  k.c_analytic = 1.0;
  // K(x,y) = 11/10 * 1*1 - 1/10 * (1+x)(1+y)
  k.separable = {{{1, 1}, 1.1}, {{2, 2}, -0.1}};
  return k;
}

inline KernelSpec unit_kernel() {
  KernelSpec k;
  k.evaluate = [](double, double) { return 1.0; };
  k.lambda = 2.0;
  k.c_analytic = 1.0;
  k.separable = {{{1, 1}, 1.0}};
  return k;
}

/// alpha = 1/2 test problem with exact solution f(y) = y^(3/2).
inline AbelProblem experiment1() {
  AbelProblem p;
  p.name = "exp1";
  p.alpha = 0.5;
  p.kernel = polynomial_test_kernel();
  const double sqrt_pi = std::sqrt(M_PI);
  p.rhs = [sqrt_pi](double x) {
    return -(sqrt_pi * x * x / 160.0) * (-60.0 + x * (11.0 + 5.0 * x));
  };
  p.rhs_lambda = 2.0;
  p.exact = [](double y) { return std::pow(y, 1.5); };
  return p;
}

/// Same kernel as experiment1, exact solution f(y) = y^(2-alpha).
/// The right-hand side is the closed form obtained from the Beta-function
/// identities; it reduces to the experiment1 data at alpha = 1/2 and is
/// cross-checked against apply_operator in the test suite.
inline AbelProblem experiment2(double alpha) {
  AbelProblem p;
  p.name = "exp2:alpha=" + std::to_string(alpha);
  p.alpha = alpha;
  p.kernel = polynomial_test_kernel();
  const double g3a = std::tgamma(3.0 - alpha);
  p.rhs = [g3a, alpha](double x) {
    return g3a * x * x * (30.0 - x * (6.0 - alpha + x * (3.0 - alpha))) / 60.0;
  };
  p.rhs_lambda = 2.0;
  p.exact = [alpha](double y) { return std::pow(y, 2.0 - alpha); };
  p.validate();
  return p;
}

/// Problem with prescribed exact solution f and K = 1; the right-hand side
/// is generated through the operator oracle, so no hand-derived g enters.
inline AbelProblem manufactured_problem(double alpha,
                                        std::function<double(double)> f,
                                        int oracle_order = 40,
                                        std::string name = "manufactured") {
  AbelProblem p;
  p.name = std::move(name);
  p.alpha = alpha;
  p.kernel = unit_kernel();
  p.exact = f;
  p.validate();
  auto rule = std::make_shared<QuadRule>(gauss_jacobi(oracle_order, alpha - 1.0, 0.0));
  AbelProblem base = p;
  p.rhs = [base, f = std::move(f), rule](double x) {
    return apply_operator(base, f, x, *rule);
  };
  return p;
}

/// Registry ids: "exp1", "exp2:alpha=<v>", "manufactured:pow:<s>",
/// "manufactured:poly:<c0>,<c1>,...".  Manufactured problems take alpha
/// from the second argument.
inline AbelProblem make_problem(const std::string& id, double alpha = 0.5) {
  if (id == "exp1") return experiment1();
  if (id.rfind("exp2:alpha=", 0) == 0) {
    const double a = std::stod(id.substr(11));
    return experiment2(a);
  }
  if (id == "exp2") return experiment2(alpha);
  if (id.rfind("manufactured:pow:", 0) == 0) {
    const double s = std::stod(id.substr(17));
    if (s < 0.0) throw std::invalid_argument("manufactured exponent must be nonnegative");
    AbelProblem p =
        manufactured_problem(alpha, [s](double y) { return std::pow(y, s); }, 40, id);
    // K = 1 maps y^s to a single power of x in closed form.
    const double factor = std::tgamma(s + 1.0) / std::tgamma(alpha + s + 1.0);
    p.rhs = [s, alpha, factor](double x) { return factor * std::pow(x, alpha + s); };
    return p;
  }
  if (id.rfind("manufactured:poly:", 0) == 0) {
    std::vector<double> coeffs;
    std::istringstream in(id.substr(18));
    std::string tok;
    while (std::getline(in, tok, ',')) coeffs.push_back(std::stod(tok));
    if (coeffs.empty()) throw std::invalid_argument("manufactured polynomial needs coefficients");
    auto f = [coeffs](double y) {
      double v = 0.0;
      for (std::size_t k = coeffs.size(); k-- > 0;) v = v * y + coeffs[k];
      return v;
    };
    AbelProblem p = manufactured_problem(alpha, f, 40, id);
    // Monomial-by-monomial closed form for K = 1.
    p.rhs = [coeffs, alpha](double x) {
      double acc = 0.0;
      for (std::size_t k = 0; k < coeffs.size(); ++k)
        acc += coeffs[k] * std::tgamma(k + 1.0) / std::tgamma(alpha + k + 1.0) *
               std::pow(x, alpha + k);
      return acc;
    };
    return p;
  }
  throw std::invalid_argument("unknown problem id: " + id);
}

}  // namespace abelfem

#endif
