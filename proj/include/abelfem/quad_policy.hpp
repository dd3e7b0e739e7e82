#ifndef ABELFEM_QUAD_POLICY_HPP
#define ABELFEM_QUAD_POLICY_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace abelfem {

/// Quadrature-order selection for the Galerkin entries.  For a pair of
/// well-separated elements the tensor Gauss-Legendre order grows like
/// log(1/h) divided by the log of the relative distance, with a prefactor
/// s = m + increment + alpha/4 that can be varied to probe robustness.
struct QuadPolicy {
  int m = 0;             // polynomial degree of the trial/test space
  double alpha = 0.5;
  double lambda_k = 2.0; // analyticity scale of the kernel
  double h = 0.0;        // global mesh width entering log(1/h)
  int n_max = 25;
  int increment = 2;     // the "i" in s_i = m + i + alpha/4
  std::optional<int> fixed_order;  // overrides the adaptive rule everywhere
  double order_scale = 1.0;        // multiplies every selected order (saturation checks)

  int n_min() const { return m / 2 + 1; }

  int scaled(double n) const { return static_cast<int>(std::ceil(order_scale * n)); }

  /// Order for a separated pair: dist is the gap between the elements,
  /// h_pair the larger of the two element widths.  Valid in the regime
  /// dist >= lambda_k * h_pair; closer pairs fall back to the near field
  /// floor, which caps the denominator at log 2.
  int order_regular(double dist, double h_pair) const {
    if (fixed_order) return *fixed_order;
    if (!(dist > 0.0)) throw std::invalid_argument("order_regular: need positive distance");
    if (!(h_pair > 0.0) || !(h > 0.0))
      throw std::invalid_argument("order_regular: need positive mesh widths");
    const double s = m + increment + alpha / 4.0;
    const double num = s * std::log(1.0 / h);
    const double den = std::log(std::max(2.0, (2.0 / lambda_k) * dist / h_pair));
    const int n = scaled(std::ceil(num / den));
    return std::clamp(n, n_min(), scaled(n_max));
  }

  /// Order for the identical-panel case, where the simplex transform plus
  /// Gauss-Jacobi weights leave a smooth (for polynomial kernels, exactly
  /// integrated) integrand.
  int order_singular() const {
    if (fixed_order) return *fixed_order;
    return scaled(std::max(n_min(), m + 3));
  }

  /// Order for touching pairs.  The Duffy splits leave a factor analytic on
  /// [0,1] but with a branch point one interval-length away, so the Gauss
  /// error decays like 5.83^{-2n}; m + 6 points push it below 1e-9.
  int order_adjacent() const {
    if (fixed_order) return *fixed_order;
    return scaled(std::max(n_min(), m + 6));
  }

  /// Order for the right-hand-side moments.
  int order_rhs() const {
    if (fixed_order) return *fixed_order;
    return scaled(std::ceil(m + alpha / 2.0 + 0.75));
  }
};

}  // namespace abelfem

#endif
