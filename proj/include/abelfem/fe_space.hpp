#ifndef ABELFEM_FE_SPACE_HPP
#define ABELFEM_FE_SPACE_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "abelfem/mesh.hpp"

namespace abelfem {

/// Piecewise polynomial space S_T^m with its Lagrange basis:
/// discontinuous indicators for m = 0, continuous nodal elements for m >= 1.
/// Local shape functions are stored as monomial coefficients in the scaled
/// reference coordinate t = (x - x_left) / h of each element.
class FeSpace {
 public:
  FeSpace(Mesh mesh, int degree) : mesh_(std::move(mesh)), degree_(degree) {
    if (degree < 0) throw std::invalid_argument("degree must be nonnegative");
    const int n = mesh_.num_elements();
    dim_ = (degree == 0) ? n : n * degree + 1;
    build_nodes();
    build_shapes();
  }

  const Mesh& mesh() const { return mesh_; }
  int degree() const { return degree_; }
  int dim() const { return dim_; }
  const std::vector<double>& nodes() const { return nodes_; }

  /// Global indices of the basis functions supported on element e
  /// (in ascending order; degree+1 of them).
  std::vector<int> element_dofs(int e) const {
    std::vector<int> dofs(local_count());
    for (int j = 0; j < local_count(); ++j) dofs[j] = global_dof(e, j);
    return dofs;
  }

  int local_count() const { return degree_ == 0 ? 1 : degree_ + 1; }

  int global_dof(int e, int local) const {
    return degree_ == 0 ? e : e * degree_ + local;
  }

  /// First and last element of the support of basis i.
  std::pair<int, int> support(int i) const {
    check_index(i);
    if (degree_ == 0) return {i, i};
    const int e = i / degree_;
    const int j = i % degree_;
    if (j != 0) return {e, e};
    const int first = (e > 0) ? e - 1 : 0;
    const int last = (e < mesh_.num_elements()) ? e : e - 1;
    return {first, std::min(last, mesh_.num_elements() - 1)};
  }

  /// Local shape function `local` on the reference coordinate t in [0,1]:
  /// monomial coefficients, constant term first.
  const std::vector<double>& shape_coeffs(int local) const { return shapes_[local]; }

  double eval_shape(int local, double t) const {
    const auto& c = shapes_[local];
    double v = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * t + c[k];
    return v;
  }

  double eval_basis(int i, double x) const {
    check_index(i);
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("coordinate outside [0,1]");
    const auto [first, last] = support(i);
    const int e = mesh_.element_of(x);
    if (e < first || e > last) return 0.0;
    const double t = (x - mesh_.element_left(e)) / mesh_.element_size(e);
    for (int j = 0; j < local_count(); ++j)
      if (global_dof(e, j) == i) return eval_shape(j, t);
    return 0.0;
  }

 private:
  void check_index(int i) const {
    if (i < 0 || i >= dim_) throw std::out_of_range("basis index out of range");
  }

  void build_nodes() {
    const int n = mesh_.num_elements();
    nodes_.clear();
    if (degree_ == 0) {
      for (int e = 0; e < n; ++e)
        nodes_.push_back(0.5 * (mesh_.element_left(e) + mesh_.element_right(e)));
      return;
    }
    for (int e = 0; e < n; ++e)
      for (int j = 0; j < degree_; ++j)
        nodes_.push_back(mesh_.element_left(e) +
                         mesh_.element_size(e) * j / degree_);
    nodes_.push_back(1.0);
  }

  void build_shapes() {
    shapes_.assign(local_count(), {});
    if (degree_ == 0) {
      shapes_[0] = {1.0};
      return;
    }
    // Lagrange polynomials at t_j = j/m, expanded to monomial coefficients.
    for (int j = 0; j <= degree_; ++j) {
      std::vector<double> c = {1.0};
      for (int k = 0; k <= degree_; ++k) {
        if (k == j) continue;
        const double tk = static_cast<double>(k) / degree_;
        const double tj = static_cast<double>(j) / degree_;
        // multiply by (t - tk) / (tj - tk)
        std::vector<double> next(c.size() + 1, 0.0);
        const double inv = 1.0 / (tj - tk);
        for (std::size_t q = 0; q < c.size(); ++q) {
          next[q] += c[q] * (-tk) * inv;
          next[q + 1] += c[q] * inv;
        }
        c = std::move(next);
      }
      shapes_[j] = std::move(c);
    }
  }

  Mesh mesh_;
  int degree_;
  int dim_;
  std::vector<double> nodes_;
  std::vector<std::vector<double>> shapes_;
};

inline FeSpace build_space(Mesh mesh, int degree) { return FeSpace(std::move(mesh), degree); }

inline double eval_basis(const FeSpace& space, int i, double x) {
  return space.eval_basis(i, x);
}

/// Coefficient vector in the Lagrange basis of an FeSpace.
struct FeSolution {
  const FeSpace* space = nullptr;
  std::vector<double> coefficients;

  FeSolution() = default;
  FeSolution(const FeSpace& s, std::vector<double> c) : space(&s), coefficients(std::move(c)) {
    if (static_cast<int>(coefficients.size()) != s.dim())
      throw std::invalid_argument("coefficient count does not match space dimension");
  }

  double operator()(double x) const {
    const FeSpace& s = *space;
    const int e = s.mesh().element_of(x);
    const double t = (x - s.mesh().element_left(e)) / s.mesh().element_size(e);
    double v = 0.0;
    for (int j = 0; j < s.local_count(); ++j)
      v += coefficients[s.global_dof(e, j)] * s.eval_shape(j, t);
    return v;
  }
};

inline double eval_fe(const FeSolution& sol, double x) { return sol(x); }

}  // namespace abelfem

#endif
