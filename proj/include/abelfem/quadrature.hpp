#ifndef ABELFEM_QUADRATURE_HPP
#define ABELFEM_QUADRATURE_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace abelfem {

inline double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

inline double beta_function(double a, double b) { return std::exp(log_beta(a, b)); }

/// Quadrature rule on the reference interval [0,1].
/// Legendre rules integrate plain integrands; Jacobi rules carry the
/// weight (1-x)^a x^b implicitly, so the weight must not be sampled again.
struct QuadRule {
  enum class Kind { legendre, jacobi };
  std::vector<double> nodes;
  std::vector<double> weights;
  Kind kind = Kind::legendre;
  double jacobi_a = 0.0;
  double jacobi_b = 0.0;

  int order() const { return static_cast<int>(nodes.size()); }
};

namespace detail {

// Eigenvalues of a symmetric tridiagonal matrix (implicit QL with shifts).
// d holds the diagonal on entry and the eigenvalues on exit; e the
// subdiagonal in e[0..n-2].
inline void tridiagonal_eigenvalues(std::vector<double>& d, std::vector<double> e) {
  const int n = static_cast<int>(d.size());
  e.resize(n, 0.0);
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-17 * dd) break;
      }
      if (m != l) {
        if (++iter > 80) throw std::runtime_error("tridiagonal QL did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
}

struct JacobiRecurrence {
  // Three-term recurrence coefficients for polynomials orthogonal w.r.t.
  // (1-x)^a (1+x)^b on [-1,1], plus the total mass mu0.
  std::vector<double> alpha, beta;
  double mu0;

  JacobiRecurrence(int n, double a, double b) : alpha(n), beta(n) {
    mu0 = std::exp((a + b + 1.0) * std::log(2.0) + log_beta(a + 1.0, b + 1.0));
    alpha[0] = (b - a) / (a + b + 2.0);
    beta[0] = mu0;
    for (int k = 1; k < n; ++k) {
      const double s = 2.0 * k + a + b;
      alpha[k] = (b * b - a * a) / (s * (s + 2.0));
      beta[k] = 4.0 * k * (k + a) * (k + b) * (k + a + b) /
                (s * s * (s + 1.0) * (s - 1.0));
    }
  }

  // Orthonormal polynomial of degree n at x, together with its derivative.
  // Requires the recurrence to hold coefficients up to index n.
  void eval(int n, double x, double& pn, double& dpn) const {
    double pkm1 = 0.0, pk = 1.0 / std::sqrt(mu0);
    double dkm1 = 0.0, dk = 0.0;
    for (int k = 0; k < n; ++k) {
      const double lo = (k > 0) ? std::sqrt(beta[k]) : 0.0;
      const double hi = std::sqrt(beta[k + 1]);
      const double pk1 = ((x - alpha[k]) * pk - lo * pkm1) / hi;
      const double dk1 = ((x - alpha[k]) * dk + pk - lo * dkm1) / hi;
      pkm1 = pk; pk = pk1;
      dkm1 = dk; dk = dk1;
    }
    pn = pk;
    dpn = dk;
  }
};

}  // namespace detail

/// Gauss rule for the weight (1-x)^a x^b on [0,1]: nodes via the
/// Golub-Welsch tridiagonal eigenproblem, one Newton polish per node,
/// weights from the Christoffel function.
inline QuadRule gauss_jacobi(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_jacobi: order must be >= 1");
  if (a <= -1.0 || b <= -1.0) throw std::invalid_argument("gauss_jacobi: exponents must exceed -1");

  // Recurrence on [-1,1] with the roles of the endpoints matching
  // weight (1-x)^a (1+x)^b, so that x=+1 carries exponent a.
  detail::JacobiRecurrence rec(n + 1, a, b);
  std::vector<double> diag(rec.alpha.begin(), rec.alpha.begin() + n);
  std::vector<double> off(n > 1 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(rec.beta[k]);
  detail::tridiagonal_eigenvalues(diag, off);

  QuadRule rule;
  rule.kind = QuadRule::Kind::jacobi;
  rule.jacobi_a = a;
  rule.jacobi_b = b;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double scale = std::pow(2.0, a + b + 1.0);
  for (int i = 0; i < n; ++i) {
    double x = diag[i];
    double pn, dpn;
    rec.eval(n, x, pn, dpn);
    if (dpn != 0.0) x -= pn / dpn;  // one Newton step
    // Christoffel weight: inverse sum of squared orthonormal polynomials.
    double sum = 0.0;
    double pkm1 = 0.0, pk = 1.0 / std::sqrt(rec.mu0);
    sum += pk * pk;
    for (int k = 0; k < n - 1; ++k) {
      const double pk1 = ((x - rec.alpha[k]) * pk -
                          (k > 0 ? std::sqrt(rec.beta[k]) : 0.0) * pkm1) /
                         std::sqrt(rec.beta[k + 1]);
      pkm1 = pk;
      pk = pk1;
      sum += pk * pk;
    }
    rule.nodes[i] = 0.5 * (x + 1.0);
    rule.weights[i] = 1.0 / (sum * scale);
  }
  return rule;
}

/// n-point Gauss-Legendre rule on [0,1]; weights sum to 1.
inline QuadRule gauss_legendre(int n) {
  QuadRule rule = gauss_jacobi(n, 0.0, 0.0);
  rule.kind = QuadRule::Kind::legendre;
  return rule;
}

/// Affine image of a Legendre rule on [lo,hi]; Jacobi rules stay on the
/// reference interval because their weight does not transform affinely.
inline QuadRule map_rule(const QuadRule& rule, double lo, double hi) {
  if (!(hi > lo)) throw std::invalid_argument("map_rule: interval must satisfy hi > lo");
  if (rule.kind != QuadRule::Kind::legendre)
    throw std::invalid_argument("map_rule: only Legendre rules can be mapped");
  QuadRule out = rule;
  const double len = hi - lo;
  for (std::size_t i = 0; i < out.nodes.size(); ++i) {
    out.nodes[i] = lo + len * rule.nodes[i];
    out.weights[i] = len * rule.weights[i];
  }
  return out;
}

}  // namespace abelfem

#endif
