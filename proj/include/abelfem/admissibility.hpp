#ifndef ABELFEM_ADMISSIBILITY_HPP
#define ABELFEM_ADMISSIBILITY_HPP

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace abelfem {

/// Ellipticity constant of the weakly singular operator.
inline double gamma_constant(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("gamma_constant: alpha must lie in (0,1)");
  return std::cos(M_PI * alpha / 2.0);
}

/// Data for the separable-kernel admissibility check: kernel coefficients
/// d_{n,m}, per-factor multiplier bounds 0 < c_n <= C_n at the relevant
/// fractional order, and the continuity constant C_c (default 1; the
/// off-diagonal penalty can be evaluated with or without it).
struct AdmissibilityInput {
  double alpha = 0.5;
  std::map<std::pair<int, int>, double> d;
  std::map<int, double> c_lower;  // c_n
  std::map<int, double> c_upper;  // C_n
  double c_cont = 1.0;            // C_c
};

struct AdmissibilityReport {
  double gamma = 0.0;
  double cs_squared = 0.0;   // C_s^2 = sum |d_{n,m}| C_n C_m
  double gamma_tilde = 0.0;  // gamma sum d_{n,n} c_n^2 - C_c sum_{n!=m} |d_{n,m}| C_n C_m
  bool admissible = false;
};

inline AdmissibilityReport evaluate_admissibility(const AdmissibilityInput& in) {
  const double g = gamma_constant(in.alpha);
  auto bound = [&](const std::map<int, double>& table, int n) {
    const auto it = table.find(n);
    if (it == table.end())
      throw std::invalid_argument("admissibility: missing multiplier constant for factor " +
                                  std::to_string(n));
    return it->second;
  };
  double cs2 = 0.0, diag = 0.0, offdiag = 0.0;
  for (const auto& [nm, dval] : in.d) {
    const auto [n, m] = nm;
    const double cn = bound(in.c_lower, n), cm = bound(in.c_lower, m);
    const double bn = bound(in.c_upper, n), bm = bound(in.c_upper, m);
    if (!(cn > 0.0) || !(cm > 0.0) || cn > bn || cm > bm)
      throw std::invalid_argument("admissibility: need 0 < c_n <= C_n");
    cs2 += std::abs(dval) * bn * bm;
    if (n == m)
      diag += dval * cn * cn;
    else
      offdiag += std::abs(dval) * bn * bm;
  }
  AdmissibilityReport rep;
  rep.gamma = g;
  rep.cs_squared = cs2;
  rep.gamma_tilde = g * diag - in.c_cont * offdiag;
  rep.admissible = rep.gamma_tilde > 0.0;
  return rep;
}

/// The constants used for the polynomial test kernel: c_2 = 2^{-1/2},
/// C_2 = 2 sqrt(2), and the trivial factor psi_1 = 1 with c_1 = C_1 = 1.
inline AdmissibilityInput polynomial_kernel_admissibility(double alpha = 0.5,
                                                          double c_cont = 1.0) {
  AdmissibilityInput in;
  in.alpha = alpha;
  in.d = {{{1, 1}, 1.1}, {{2, 2}, -0.1}};
  in.c_lower = {{1, 1.0}, {2, std::sqrt(0.5)}};
  in.c_upper = {{1, 1.0}, {2, 2.0 * std::sqrt(2.0)}};
  in.c_cont = c_cont;
  return in;
}

}  // namespace abelfem

#endif
