#ifndef ABELFEM_ASSEMBLY_HPP
#define ABELFEM_ASSEMBLY_HPP

#include <atomic>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "abelfem/fe_space.hpp"
#include "abelfem/parallel.hpp"
#include "abelfem/linalg.hpp"
#include "abelfem/problem.hpp"
#include "abelfem/quad_policy.hpp"
#include "abelfem/quadrature.hpp"

namespace abelfem {

struct AssemblyStats {
  std::int64_t identical_pairs = 0;
  std::int64_t adjacent_pairs = 0;
  std::int64_t separated_pairs = 0;
  std::int64_t zero_pairs = 0;       // element pairs skipped as structural zeros
  std::int64_t quad_points = 0;      // total tensor quadrature points used
  int max_order = 0;
};

struct GalerkinSystem {
  DenseMatrix A;
  std::vector<double> r;
  /// zero_begin[i] is the first column of row i that is structurally zero;
  /// every j >= zero_begin[i] was skipped, not computed.  The zeros form a
  /// contiguous row tail because basis supports are intervals.
  std::vector<int> zero_begin;
  AssemblyStats stats;

  std::vector<std::pair<int, int>> zero_pattern() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t i = 0; i < zero_begin.size(); ++i)
      for (int j = zero_begin[i]; j < static_cast<int>(zero_begin.size()); ++j)
        out.emplace_back(static_cast<int>(i), j);
    return out;
  }
};

/// True when the entry A(i,j) vanishes identically because the trial
/// function j lives strictly to the right of the test function i (the
/// operator only integrates over y < x).
inline bool structural_zero(const FeSpace& space, int i, int j) {
  return space.support(j).first > space.support(i).second;
}

namespace detail {

// Local (test,trial) block for a coincident element pair tau = sigma.
// Simplex coordinates x = a + h*xi, y = a + h*xi*eta map the triangle
// y < x onto the unit square; the factors xi^alpha and (1-eta)^(alpha-1)
// are absorbed into the two Jacobi rules.
inline void identical_block(const FeSpace& space, const AbelProblem& problem,
                            int e, const QuadRule& rule_xi,
                            const QuadRule& rule_eta, DenseMatrix& block) {
  const double a = space.mesh().element_left(e);
  const double h = space.mesh().element_size(e);
  const int loc = space.local_count();
  const double scale = std::pow(h, problem.alpha + 1.0) / std::tgamma(problem.alpha);
  for (int li = 0; li < loc; ++li)
    for (int lj = 0; lj < loc; ++lj) block(li, lj) = 0.0;
  for (std::size_t k = 0; k < rule_xi.nodes.size(); ++k) {
    const double xi = rule_xi.nodes[k];
    const double x = a + h * xi;
    for (std::size_t l = 0; l < rule_eta.nodes.size(); ++l) {
      const double eta = rule_eta.nodes[l];
      const double y = a + h * xi * eta;
      const double w = rule_xi.weights[k] * rule_eta.weights[l] *
                       problem.kernel.evaluate(x, y);
      for (int li = 0; li < loc; ++li) {
        const double ti = space.eval_shape(li, xi);
        if (ti == 0.0) continue;
        for (int lj = 0; lj < loc; ++lj)
          block(li, lj) += w * ti * space.eval_shape(lj, xi * eta);
      }
    }
  }
  for (int li = 0; li < loc; ++li)
    for (int lj = 0; lj < loc; ++lj) block(li, lj) *= scale;
}

// Local block for a touching pair: trial element sigma = [c-hs, c]
// immediately left of the test element tau = [c, c+ht].  With
// x = c + ht*u and y = c - hs*v the kernel distance is ht*u + hs*v;
// splitting the (u,v) square along its diagonal and rescaling the short
// direction leaves a u^alpha Jacobi weight times an analytic factor.
inline void adjacent_block(const FeSpace& space, const AbelProblem& problem,
                           int e_test, const QuadRule& rule_u,
                           const QuadRule& rule_s, DenseMatrix& block) {
  const int e_trial = e_test - 1;
  const double c = space.mesh().element_left(e_test);
  const double ht = space.mesh().element_size(e_test);
  const double hs = space.mesh().element_size(e_trial);
  const int loc = space.local_count();
  const double scale = ht * hs / std::tgamma(problem.alpha);
  const double am1 = problem.alpha - 1.0;
  for (int li = 0; li < loc; ++li)
    for (int lj = 0; lj < loc; ++lj) block(li, lj) = 0.0;
  for (std::size_t k = 0; k < rule_u.nodes.size(); ++k) {
    const double u = rule_u.nodes[k];
    for (std::size_t l = 0; l < rule_s.nodes.size(); ++l) {
      const double s = rule_s.nodes[l];
      const double ws = rule_u.weights[k] * rule_s.weights[l];
      // triangle v <= u, substituted v = u*s
      {
        const double x = c + ht * u, y = c - hs * u * s;
        const double w = ws * std::pow(ht + hs * s, am1) *
                         problem.kernel.evaluate(x, y);
        for (int li = 0; li < loc; ++li) {
          const double ti = space.eval_shape(li, u);
          if (ti == 0.0) continue;
          for (int lj = 0; lj < loc; ++lj)
            block(li, lj) += w * ti * space.eval_shape(lj, 1.0 - u * s);
        }
      }
      // triangle u <= v, substituted u = v*s (v plays the Jacobi role)
      {
        const double x = c + ht * u * s, y = c - hs * u;
        const double w = ws * std::pow(ht * s + hs, am1) *
                         problem.kernel.evaluate(x, y);
        for (int li = 0; li < loc; ++li) {
          const double ti = space.eval_shape(li, u * s);
          if (ti == 0.0) continue;
          for (int lj = 0; lj < loc; ++lj)
            block(li, lj) += w * ti * space.eval_shape(lj, 1.0 - u);
        }
      }
    }
  }
  for (int li = 0; li < loc; ++li)
    for (int lj = 0; lj < loc; ++lj) block(li, lj) *= scale;
}

// Local block for a separated pair (plain tensor Gauss-Legendre).
inline void separated_block(const FeSpace& space, const AbelProblem& problem,
                            int e_test, int e_trial, const QuadRule& rule,
                            DenseMatrix& block) {
  const double at = space.mesh().element_left(e_test);
  const double ht = space.mesh().element_size(e_test);
  const double as = space.mesh().element_left(e_trial);
  const double hs = space.mesh().element_size(e_trial);
  const int loc = space.local_count();
  const double scale = ht * hs / std::tgamma(problem.alpha);
  const double am1 = problem.alpha - 1.0;
  for (int li = 0; li < loc; ++li)
    for (int lj = 0; lj < loc; ++lj) block(li, lj) = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double x = at + ht * rule.nodes[k];
    for (std::size_t l = 0; l < rule.nodes.size(); ++l) {
      const double y = as + hs * rule.nodes[l];
      const double w = rule.weights[k] * rule.weights[l] *
                       std::pow(x - y, am1) * problem.kernel.evaluate(x, y);
      for (int li = 0; li < loc; ++li) {
        const double ti = space.eval_shape(li, rule.nodes[k]);
        if (ti == 0.0) continue;
        for (int lj = 0; lj < loc; ++lj)
          block(li, lj) += w * ti * space.eval_shape(lj, rule.nodes[l]);
      }
    }
  }
  for (int li = 0; li < loc; ++li)
    for (int lj = 0; lj < loc; ++lj) block(li, lj) *= scale;
}

}  // namespace detail

/// Entry-level wrappers mirroring the per-pair integrals; i and j are
/// global basis indices that must be supported on the given elements.
inline double integrate_identical(const FeSpace& space, const AbelProblem& problem,
                                  int e, int i, int j, int n_xi, int n_eta) {
  DenseMatrix block(space.local_count(), space.local_count());
  detail::identical_block(space, problem, e,
                          gauss_jacobi(n_xi, 0.0, problem.alpha),
                          gauss_jacobi(n_eta, problem.alpha - 1.0, 0.0), block);
  for (int li = 0; li < space.local_count(); ++li)
    for (int lj = 0; lj < space.local_count(); ++lj)
      if (space.global_dof(e, li) == i && space.global_dof(e, lj) == j)
        return block(li, lj);
  throw std::invalid_argument("integrate_identical: dof not supported on element");
}

inline double integrate_adjacent(const FeSpace& space, const AbelProblem& problem,
                                 int e_test, int i, int j, int n) {
  if (e_test < 1) throw std::invalid_argument("integrate_adjacent: no left neighbor");
  DenseMatrix block(space.local_count(), space.local_count());
  detail::adjacent_block(space, problem, e_test,
                         gauss_jacobi(n, 0.0, problem.alpha), gauss_legendre(n),
                         block);
  for (int li = 0; li < space.local_count(); ++li)
    for (int lj = 0; lj < space.local_count(); ++lj)
      if (space.global_dof(e_test, li) == i &&
          space.global_dof(e_test - 1, lj) == j)
        return block(li, lj);
  throw std::invalid_argument("integrate_adjacent: dof not supported on element pair");
}

inline double integrate_separated(const FeSpace& space, const AbelProblem& problem,
                                  int e_test, int e_trial, int i, int j, int n1) {
  if (e_trial >= e_test - 1)
    throw std::invalid_argument("integrate_separated: elements must be separated");
  DenseMatrix block(space.local_count(), space.local_count());
  detail::separated_block(space, problem, e_test, e_trial, gauss_legendre(n1), block);
  for (int li = 0; li < space.local_count(); ++li)
    for (int lj = 0; lj < space.local_count(); ++lj)
      if (space.global_dof(e_test, li) == i &&
          space.global_dof(e_trial, lj) == j)
        return block(li, lj);
  throw std::invalid_argument("integrate_separated: dof not supported on element pair");
}

/// Galerkin matrix and load vector with the three-case quadrature
/// dispatch.  Row blocks (all contributions of one test element) are
/// computed independently, possibly in parallel, and reduced into the
/// matrix serially in element order, so the result is bit-identical for
/// any thread count.
inline GalerkinSystem assemble(const FeSpace& space, const AbelProblem& problem,
                               const QuadPolicy& policy, int threads = 1) {
  problem.validate();
  if (policy.m != space.degree())
    throw std::invalid_argument("assemble: policy degree does not match space");
  const Mesh& mesh = space.mesh();
  const int n_elem = mesh.num_elements();
  const int dim = space.dim();
  const int loc = space.local_count();
  threads = detail::resolve_threads(threads);

  GalerkinSystem sys;
  sys.A = DenseMatrix(dim, dim);
  sys.r.assign(dim, 0.0);

  // All rules the dispatch can request, built once up front.
  const int n_sing = policy.order_singular();
  const int n_adj = policy.order_adjacent();
  const QuadRule rule_xi = gauss_jacobi(n_sing, 0.0, problem.alpha);
  const QuadRule rule_eta = gauss_jacobi(n_sing, problem.alpha - 1.0, 0.0);
  const QuadRule rule_u = gauss_jacobi(n_adj, 0.0, problem.alpha);
  const QuadRule rule_s = gauss_legendre(n_adj);
  const int scaled_max = policy.scaled(policy.n_max);
  const int top = policy.fixed_order ? std::max(*policy.fixed_order, scaled_max)
                                     : scaled_max;
  std::vector<QuadRule> legendre(top + 1);
  for (int n = 1; n <= top; ++n) legendre[n] = gauss_legendre(n);

  std::vector<std::atomic<std::int64_t>> counts(4);
  for (auto& c : counts) c.store(0);
  std::atomic<std::int64_t> quad_points{0};
  std::atomic<int> max_order{std::max(n_sing, n_adj)};

  // Row-block buffers for one chunk of test elements.
  const int chunk = std::max(1, std::min(n_elem, 4 * std::max(threads, 1)));
  std::vector<std::vector<double>> buffers(chunk);

  for (int base = 0; base < n_elem; base += chunk) {
    const int cnt = std::min(chunk, n_elem - base);
    detail::run_parallel(cnt, threads, [&](int k) {
      const int e = base + k;
      const int ncols = space.global_dof(e, loc - 1) + 1;
      auto& buf = buffers[k];
      buf.assign(static_cast<std::size_t>(loc) * ncols, 0.0);
      DenseMatrix block(loc, loc);
      const double ht = mesh.element_size(e);
      for (int f = 0; f <= e; ++f) {
        if (f == e) {
          detail::identical_block(space, problem, e, rule_xi, rule_eta, block);
          counts[0].fetch_add(1);
          quad_points.fetch_add(static_cast<std::int64_t>(n_sing) * n_sing);
        } else if (f == e - 1) {
          detail::adjacent_block(space, problem, e, rule_u, rule_s, block);
          counts[1].fetch_add(1);
          quad_points.fetch_add(2LL * n_adj * n_adj);
        } else {
          const double dist = mesh.element_left(e) - mesh.element_right(f);
          const double h_pair = std::max(ht, mesh.element_size(f));
          const int n1 = policy.order_regular(dist, h_pair);
          int seen = max_order.load();
          while (n1 > seen && !max_order.compare_exchange_weak(seen, n1)) {}
          detail::separated_block(space, problem, e, f, legendre[n1], block);
          counts[2].fetch_add(1);
          quad_points.fetch_add(static_cast<std::int64_t>(n1) * n1);
        }
        for (int li = 0; li < loc; ++li)
          for (int lj = 0; lj < loc; ++lj)
            buf[static_cast<std::size_t>(li) * ncols + space.global_dof(f, lj)] +=
                block(li, lj);
      }
    });
    for (int k = 0; k < cnt; ++k) {
      const int e = base + k;
      const int ncols = space.global_dof(e, loc - 1) + 1;
      for (int li = 0; li < loc; ++li) {
        double* row = sys.A.row(space.global_dof(e, li));
        const double* src = buffers[k].data() + static_cast<std::size_t>(li) * ncols;
        for (int j = 0; j < ncols; ++j) row[j] += src[j];
      }
    }
  }

  // Load vector: n2-point Gauss per element, reduced in element order.
  const QuadRule rhs_rule = gauss_legendre(policy.order_rhs());
  for (int e = 0; e < n_elem; ++e) {
    const double a = mesh.element_left(e);
    const double h = mesh.element_size(e);
    for (std::size_t k = 0; k < rhs_rule.nodes.size(); ++k) {
      const double t = rhs_rule.nodes[k];
      const double w = h * rhs_rule.weights[k] * problem.rhs(a + h * t);
      for (int lj = 0; lj < loc; ++lj)
        sys.r[space.global_dof(e, lj)] += w * space.eval_shape(lj, t);
    }
  }

  sys.zero_begin.resize(dim);
  for (int i = 0; i < dim; ++i) {
    int j = dim;
    while (j > 0 && structural_zero(space, i, j - 1)) --j;
    sys.zero_begin[i] = j;
  }

  sys.stats.identical_pairs = counts[0].load();
  sys.stats.adjacent_pairs = counts[1].load();
  sys.stats.separated_pairs = counts[2].load();
  sys.stats.zero_pairs =
      static_cast<std::int64_t>(n_elem) * n_elem - counts[0] - counts[1] - counts[2];
  sys.stats.quad_points = quad_points.load();
  sys.stats.max_order = max_order.load();
  if (!sys.A.all_finite())
    throw std::runtime_error("assemble: non-finite matrix entry");
  return sys;
}

/// Debug dump: two unsigned 64-bit dims, then A row-major as 64-bit
/// floats, then r.  Written in host byte order (little-endian on the
/// supported targets).
inline void dump_system(const std::string& path, const GalerkinSystem& sys) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write dump file: " + path);
  const std::uint64_t dims[2] = {sys.A.rows(), sys.A.cols()};
  out.write(reinterpret_cast<const char*>(dims), sizeof dims);
  out.write(reinterpret_cast<const char*>(sys.A.data().data()),
            static_cast<std::streamsize>(sys.A.data().size() * sizeof(double)));
  out.write(reinterpret_cast<const char*>(sys.r.data()),
            static_cast<std::streamsize>(sys.r.size() * sizeof(double)));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace abelfem

#endif
