#ifndef ABELFEM_NORMS_HPP
#define ABELFEM_NORMS_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "abelfem/fe_space.hpp"
#include "abelfem/parallel.hpp"
#include "abelfem/quadrature.hpp"

namespace abelfem {

namespace detail {

// Moments C_k = int_0^h s^k cos(mu s) ds and S_k = int_0^h s^k sin(mu s) ds
// for k = 0..kmax.  The integration-by-parts recurrence loses accuracy to
// cancellation once mu*h is small, so that regime switches to the
// alternating Taylor series, which also covers mu = 0.
inline void cos_sin_moments(double mu, double h, int kmax,
                            std::vector<double>& c, std::vector<double>& s) {
  c.assign(kmax + 1, 0.0);
  s.assign(kmax + 1, 0.0);
  const double z = mu * h;
  if (z < 1.0) {
    double hp = h;  // h^(k+1)
    for (int k = 0; k <= kmax; ++k, hp *= h) {
      double term = 1.0, cs = 0.0, ss = 0.0;
      for (int j = 0; j < 40; ++j) {
        cs += term / (k + 2 * j + 1);
        const double t2 = term * z / (2 * j + 1);
        ss += t2 / (k + 2 * j + 2);
        term = -t2 * z / (2 * j + 2);
        if (std::abs(term) < 1e-20) break;
      }
      c[k] = hp * cs;
      s[k] = hp * ss;
    }
    return;
  }
  const double sh = std::sin(z), ch = std::cos(z);
  c[0] = sh / mu;
  s[0] = (1.0 - ch) / mu;
  double hp = 1.0;  // h^k
  for (int k = 1; k <= kmax; ++k) {
    hp *= h;
    c[k] = hp * sh / mu - k / mu * s[k - 1];
    s[k] = -hp * ch / mu + k / mu * c[k - 1];
  }
}

}  // namespace detail

/// Exact value of int_a^{a+h} p((x-a)/h) * sqrt(2) * cos(mu x) dx for a
/// polynomial given by monomial coefficients in the reference coordinate.
inline double integrate_poly_cos(const std::vector<double>& coeffs, double a,
                                 double h, double mu) {
  if (coeffs.empty() || !(h > 0.0))
    throw std::invalid_argument("integrate_poly_cos: bad polynomial or interval");
  const int kmax = static_cast<int>(coeffs.size()) - 1;
  std::vector<double> c, s;
  detail::cos_sin_moments(mu, h, kmax, c, s);
  const double ca = std::cos(mu * a), sa = std::sin(mu * a);
  double acc = 0.0, hp = 1.0;
  for (int k = 0; k <= kmax; ++k, hp *= h)
    acc += coeffs[k] / hp * (ca * c[k] - sa * s[k]);
  return std::sqrt(2.0) * acc;
}

/// Coefficients and norms on the cosine scale X_beta with frequencies
/// mu_n = (n - 1/2) pi and basis phi_n = sqrt(2) cos(mu_n t).
class SpectralNormEvaluator {
 public:
  explicit SpectralNormEvaluator(int n_modes = 4096, int threads = 1)
      : threads_(threads) {
    if (n_modes < 1) throw std::invalid_argument("need at least one mode");
    mu_.resize(n_modes);
    for (int n = 0; n < n_modes; ++n) mu_[n] = (n + 0.5) * M_PI;
  }

  int n_modes() const { return static_cast<int>(mu_.size()); }
  const std::vector<double>& frequencies() const { return mu_; }

  /// (v, phi_n) for an FE function, element by element through the exact
  /// polynomial-times-cosine recurrence; no quadrature error.
  std::vector<double> fe_coeffs(const FeSolution& v) const {
    const FeSpace& space = *v.space;
    const int n_elem = space.mesh().num_elements();
    const int loc = space.local_count();
    // Element-local polynomials of v in reference coordinates.
    std::vector<std::vector<double>> poly(n_elem);
    for (int e = 0; e < n_elem; ++e) {
      std::vector<double> p(space.degree() + 1, 0.0);
      for (int lj = 0; lj < loc; ++lj) {
        const double cj = v.coefficients[space.global_dof(e, lj)];
        const auto& sh = space.shape_coeffs(lj);
        for (std::size_t k = 0; k < sh.size(); ++k) p[k] += cj * sh[k];
      }
      poly[e] = std::move(p);
    }
    std::vector<double> out(mu_.size(), 0.0);
    detail::run_parallel(n_modes(), threads_, [&](int n) {
      double acc = 0.0;
      for (int e = 0; e < n_elem; ++e)
        acc += integrate_poly_cos(poly[e], space.mesh().element_left(e),
                                  space.mesh().element_size(e), mu_[n]);
      out[n] = acc;
    });
    return out;
  }

  /// (v, phi_n) for a sampled map.  Composite Gauss on a mesh graded
  /// geometrically toward 0 (for algebraic endpoint behavior), with each
  /// graded cell further split so no subcell spans more than about half a
  /// wavelength of the combined oscillation.  `resolution` bounds the
  /// frequency content attributed to v itself; raise it when projecting a
  /// function that oscillates faster than ~10 periods over the interval.
  std::vector<double> function_coeffs(const std::function<double(double)>& v,
                                      int levels = 32, int points = 12,
                                      double resolution = 64.0) const {
    std::vector<double> breaks(levels + 1);
    breaks[0] = 0.0;
    for (int l = 1; l <= levels; ++l) breaks[l] = std::ldexp(1.0, l - levels);
    const QuadRule base = gauss_legendre(points);
    const double sqrt2 = std::sqrt(2.0);
    std::vector<double> out(mu_.size(), 0.0);
    detail::run_parallel(n_modes(), threads_, [&](int n) {
      const double mu = mu_[n];
      double acc = 0.0;
      for (int l = 0; l < levels; ++l) {
        const double lo = breaks[l], len = breaks[l + 1] - breaks[l];
        const int parts = std::max(
            1, static_cast<int>(std::ceil(len * (mu + resolution) / 3.0)));
        const double sub = len / parts;
        for (int p = 0; p < parts; ++p) {
          const double a = lo + p * sub;
          for (std::size_t k = 0; k < base.nodes.size(); ++k) {
            const double x = a + sub * base.nodes[k];
            acc += sub * base.weights[k] * v(x) * sqrt2 * std::cos(mu * x);
          }
        }
      }
      out[n] = acc;
    });
    return out;
  }

  double norm_from_coeffs(const std::vector<double>& coeffs, double beta) const {
    if (coeffs.size() != mu_.size())
      throw std::invalid_argument("coefficient count does not match mode count");
    double acc = 0.0;
    for (std::size_t n = 0; n < mu_.size(); ++n)
      acc += std::pow(mu_[n], 2.0 * beta) * coeffs[n] * coeffs[n];
    return std::sqrt(acc);
  }

  double x_norm(const FeSolution& v, double beta) const {
    return norm_from_coeffs(fe_coeffs(v), beta);
  }

  double x_norm(const std::function<double(double)>& v, double beta) const {
    return norm_from_coeffs(function_coeffs(v), beta);
  }

  struct ErrorResult {
    double absolute = 0.0;
    double relative = 0.0;
  };

  /// ||exact - v||_{X_beta}, with the exact part's coefficients supplied so
  /// callers can cache them across mesh refinements.
  ErrorResult error_norm(const std::vector<double>& exact_coeffs,
                         const FeSolution& v, double beta) const {
    std::vector<double> diff = fe_coeffs(v);
    for (std::size_t n = 0; n < diff.size(); ++n)
      diff[n] = exact_coeffs[n] - diff[n];
    ErrorResult res;
    res.absolute = norm_from_coeffs(diff, beta);
    const double denom = norm_from_coeffs(exact_coeffs, beta);
    res.relative = denom > 0.0 ? res.absolute / denom : res.absolute;
    return res;
  }

  ErrorResult error_norm(const std::function<double(double)>& exact,
                         const FeSolution& v, double beta) const {
    return error_norm(function_coeffs(exact), v, beta);
  }

 private:
  std::vector<double> mu_;
  int threads_ = 1;
};

}  // namespace abelfem

#endif
