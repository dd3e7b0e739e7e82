#ifndef ABELFEM_MESH_HPP
#define ABELFEM_MESH_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace abelfem {

/// Partition 0 = x_0 < x_1 < ... < x_N = 1 of the unit interval.
class Mesh {
 public:
  explicit Mesh(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw std::invalid_argument("mesh needs at least one element");
    if (points_.front() != 0.0 || points_.back() != 1.0)
      throw std::invalid_argument("mesh must span [0,1]");
    element_sizes_.resize(points_.size() - 1);
    double h_min = 1.0;
    h_max_ = 0.0;
    for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
      const double h = points_[i + 1] - points_[i];
      if (!(h > 0.0)) throw std::invalid_argument("mesh points must be strictly increasing");
      element_sizes_[i] = h;
      h_max_ = std::max(h_max_, h);
      h_min = std::min(h_min, h);
    }
    neighbor_ratio_ = 1.0;
    for (std::size_t i = 0; i + 1 < element_sizes_.size(); ++i) {
      const double r = element_sizes_[i] / element_sizes_[i + 1];
      neighbor_ratio_ = std::max({neighbor_ratio_, r, 1.0 / r});
    }
    quasi_uniformity_ = h_max_ / h_min;
  }

  static Mesh uniform(int n) {
    if (n < 1) throw std::invalid_argument("uniform mesh needs at least one element");
    std::vector<double> pts(n + 1);
    for (int i = 0; i <= n; ++i) pts[i] = static_cast<double>(i) / n;
    pts.front() = 0.0;
    pts.back() = 1.0;
    return Mesh(std::move(pts));
  }

  int num_elements() const { return static_cast<int>(element_sizes_.size()); }
  const std::vector<double>& points() const { return points_; }
  const std::vector<double>& element_sizes() const { return element_sizes_; }
  double element_left(int e) const { return points_[e]; }
  double element_right(int e) const { return points_[e + 1]; }
  double element_size(int e) const { return element_sizes_[e]; }
  double h_max() const { return h_max_; }
  /// Max ratio of adjacent element sizes (C_T); 1 on uniform meshes.
  double neighbor_ratio() const { return neighbor_ratio_; }
  /// h_max / h_min (C_qu); 1 on uniform meshes.
  double quasi_uniformity() const { return quasi_uniformity_; }

  /// Element containing x, right-continuous at interior breakpoints.
  int element_of(double x) const {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("coordinate outside [0,1]");
    const auto it = std::upper_bound(points_.begin(), points_.end(), x);
    const int e = static_cast<int>(it - points_.begin()) - 1;
    return std::min(e, num_elements() - 1);
  }

 private:
  std::vector<double> points_;
  std::vector<double> element_sizes_;
  double h_max_ = 0.0, neighbor_ratio_ = 1.0, quasi_uniformity_ = 1.0;
};

inline Mesh build_uniform_mesh(int n) { return Mesh::uniform(n); }

}  // namespace abelfem

#endif
