#ifndef ABELFEM_SOLVE_HPP
#define ABELFEM_SOLVE_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "abelfem/assembly.hpp"
#include "abelfem/fe_space.hpp"
#include "abelfem/linalg.hpp"

namespace abelfem {

struct SolveReport {
  FeSolution solution;
  double residual_inf = 0.0;  // ||A c - r||_inf of the returned coefficients
  double pivot_min = 0.0;     // smallest absolute pivot seen by the factorization
};

/// Solve the Galerkin system.  The m = 0 matrix is lower triangular by
/// construction and is handled by forward substitution.  For m >= 1 the
/// upper triangle is banded with bandwidth m (everything further right is
/// a structural zero), so a banded no-pivot LU runs in O(M^2 m); the
/// symmetric part of A is positive definite, which makes the pivot-free
/// factorization well defined.  The residual is reported as a check.
inline SolveReport solve_system(const FeSpace& space, const GalerkinSystem& sys) {
  const std::size_t n = sys.A.rows();
  if (sys.r.size() != n || static_cast<std::size_t>(space.dim()) != n)
    throw std::invalid_argument("solve_system: shape mismatch");
  SolveReport rep;
  std::vector<double> c = sys.r;
  if (space.degree() == 0 && sys.A.is_lower_triangular())
    rep.pivot_min = forward_solve(sys.A, c);
  else
    rep.pivot_min = lu_solve_banded_upper(sys.A, c, space.degree());
  for (double v : c)
    if (!std::isfinite(v)) throw std::runtime_error("solve_system: non-finite solution");
  std::vector<double> res = sys.A.multiply(c);
  for (std::size_t i = 0; i < n; ++i)
    rep.residual_inf = std::max(rep.residual_inf, std::abs(res[i] - sys.r[i]));
  rep.solution = FeSolution(space, std::move(c));
  return rep;
}

}  // namespace abelfem

#endif
