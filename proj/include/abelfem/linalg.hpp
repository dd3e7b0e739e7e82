#ifndef ABELFEM_LINALG_HPP
#define ABELFEM_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace abelfem {

/// Dense row-major matrix, the only matrix shape the solver needs.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double value = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, value) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  double* row(std::size_t i) { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const { return data_.data() + i * cols_; }

  const std::vector<double>& data() const { return data_; }

  bool all_finite() const {
    for (double v : data_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  bool is_lower_triangular() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != 0.0) return false;
    return true;
  }

  DenseMatrix symmetric_part() const {
    DenseMatrix s(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        s(i, j) = 0.5 * ((*this)(i, j) + (*this)(j, i));
    return s;
  }

  std::vector<double> multiply(const std::vector<double>& x) const {
    std::vector<double> y(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
      const double* r = row(i);
      double acc = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) acc += r[j] * x[j];
      y[i] = acc;
    }
    return y;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> data_;
};

class SingularSystemError : public std::runtime_error {
 public:
  SingularSystemError(std::size_t index, double pivot)
      : std::runtime_error("singular system: pivot " + std::to_string(index) +
                           " has magnitude " + std::to_string(pivot)),
        pivot_index(index), pivot_value(pivot) {}
  std::size_t pivot_index;
  double pivot_value;
};

/// LU factorization with partial (row) pivoting, solving in place.
/// Returns the smallest absolute pivot encountered.
inline double lu_solve(DenseMatrix a, std::vector<double>& x) {
  const std::size_t n = a.rows();
  if (a.cols() != n || x.size() != n) throw std::invalid_argument("lu_solve: shape mismatch");
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  double pivot_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(x[k], x[p]);
    }
    const double pivot = a(k, k);
    if (std::abs(pivot) < 1e-300) throw SingularSystemError(k, std::abs(pivot));
    pivot_min = std::min(pivot_min, std::abs(pivot));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = a(i, k) / pivot;
      if (l == 0.0) continue;
      a(i, k) = l;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= l * a(k, j);
      x[i] -= l * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double acc = x[k];
    for (std::size_t j = k + 1; j < n; ++j) acc -= a(k, j) * x[j];
    x[k] = acc / a(k, k);
  }
  return pivot_min;
}

/// LU without pivoting for matrices whose upper triangle is banded with
/// bandwidth q (a(i,j) = 0 for j > i+q).  U keeps that bandwidth, so the
/// factorization costs O(n^2 q) instead of O(n^3).  No pivoting is valid
/// when the symmetric part is positive definite (every leading principal
/// submatrix is then nonsingular); callers should verify the residual.
inline double lu_solve_banded_upper(DenseMatrix a, std::vector<double>& x,
                                    std::size_t q) {
  const std::size_t n = a.rows();
  if (a.cols() != n || x.size() != n)
    throw std::invalid_argument("lu_solve_banded_upper: shape mismatch");
  double pivot_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const double pivot = a(k, k);
    if (std::abs(pivot) < 1e-300) throw SingularSystemError(k, std::abs(pivot));
    pivot_min = std::min(pivot_min, std::abs(pivot));
    const std::size_t jmax = std::min(n - 1, k + q);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double l = a(i, k) / pivot;
      if (l == 0.0) continue;
      for (std::size_t j = k + 1; j <= jmax; ++j) a(i, j) -= l * a(k, j);
      x[i] -= l * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double acc = x[k];
    const std::size_t jmax = std::min(n - 1, k + q);
    for (std::size_t j = k + 1; j <= jmax; ++j) acc -= a(k, j) * x[j];
    x[k] = acc / a(k, k);
  }
  return pivot_min;
}

/// Forward substitution for lower-triangular systems.
inline double forward_solve(const DenseMatrix& a, std::vector<double>& x) {
  const std::size_t n = a.rows();
  double pivot_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a(i, i);
    if (std::abs(d) < 1e-300) throw SingularSystemError(i, std::abs(d));
    pivot_min = std::min(pivot_min, std::abs(d));
    double acc = x[i];
    for (std::size_t j = 0; j < i; ++j) acc -= a(i, j) * x[j];
    x[i] = acc / d;
  }
  return pivot_min;
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
/// Intended for the desk-scale definiteness checks, not large systems.
inline std::vector<double> symmetric_eigenvalues(DenseMatrix s) {
  const std::size_t n = s.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += s(i, j) * s(i, j);
    if (off < 1e-28 * (n * n)) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(s(p, q)) < 1e-300) continue;
        const double theta = (s(q, q) - s(p, p)) / (2.0 * s(p, q));
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double skp = s(k, p), skq = s(k, q);
          s(k, p) = c * skp - sn * skq;
          s(k, q) = sn * skp + c * skq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double spk = s(p, k), sqk = s(q, k);
          s(p, k) = c * spk - sn * sqk;
          s(q, k) = sn * spk + c * sqk;
        }
      }
    }
  }
  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = s(i, i);
  std::sort(eig.begin(), eig.end());
  return eig;
}

}  // namespace abelfem

#endif
