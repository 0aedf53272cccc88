#pragma once

// Test-only reference routes, independent of the library implementations
// they check.

#include <Eigen/Dense>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "dmac/bounds.hpp"
#include "dmac/graph.hpp"

namespace oracle {

// ----- union-find over node ids -----
class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  // returns false if a and b were already connected (cycle)
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }
  int components() {
    int c = 0;
    for (int i = 0; i < static_cast<int>(parent_.size()); ++i)
      if (find(i) == i) ++c;
    return c;
  }

 private:
  std::vector<int> parent_;
};

inline bool is_tree(const dmac::NetworkGraph& g) {
  if (g.edge_count() != g.node_count() - 1) return false;
  UnionFind uf(g.node_count());
  for (const dmac::Edge& e : g.edges())
    if (!uf.unite(e.i, e.j)) return false;
  return uf.components() == 1;
}

// ----- dense incidence assembled column by column -----
inline Eigen::MatrixXd dense_incidence(const dmac::NetworkGraph& g) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(g.node_count(), g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) m.col(e) = g.incidence_column(e);
  return m;
}

// ----- quadratic form by explicit loops -----
inline double quadform_loops(const Eigen::MatrixXd& z, double a, double b) {
  const int n = static_cast<int>(z.rows());
  std::vector<double> v(static_cast<std::size_t>(n), b);
  v[0] = 1.0;
  v[1] = a;
  double acc = 0.0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) acc += v[static_cast<std::size_t>(r)] * z(r, c) * v[static_cast<std::size_t>(c)];
  return acc;
}

// ----- peak frequency response of x+ = a x + w -----
inline double scalar_hinf_gain_sweep(double a, int samples = 200000) {
  double best = 0.0;
  for (int k = 0; k <= samples; ++k) {
    const double w = M_PI * static_cast<double>(k) / samples;
    const double re = std::cos(w) - a;
    const double im = std::sin(w);
    best = std::max(best, 1.0 / std::sqrt(re * re + im * im));
  }
  return best;
}

// ----- smallest positive root by sign-change scan + bisection -----
inline double smallest_positive_root_bisect(const dmac::Cubic& c, int scan_steps = 200000,
                                            int bisect_iters = 200) {
  const auto p = [&](double x) { return c.eval(x); };
  double hi_bound;
  if (c.f1 != 0.0) {
    hi_bound = 1.0 + std::max({std::abs(c.f2), std::abs(c.f3), std::abs(c.f4)}) / std::abs(c.f1);
  } else if (c.f2 != 0.0) {
    hi_bound = 1.0 + std::max(std::abs(c.f3), std::abs(c.f4)) / std::abs(c.f2);
  } else {
    throw std::invalid_argument("bisect oracle: degenerate polynomial");
  }
  double prev_x = 0.0;
  double prev_v = p(0.0);
  if (prev_v == 0.0) return 0.0;
  double lo = -1.0, hi = -1.0;
  for (int k = 1; k <= scan_steps; ++k) {
    const double x = hi_bound * static_cast<double>(k) / scan_steps;
    const double v = p(x);
    if (v == 0.0) return x;
    if ((prev_v < 0.0) != (v < 0.0)) {
      lo = prev_x;
      hi = x;
      break;
    }
    prev_x = x;
    prev_v = v;
  }
  if (lo < 0.0) throw std::runtime_error("bisect oracle: no sign change found");
  for (int k = 0; k < bisect_iters; ++k) {
    const double mid = 0.5 * (lo + hi);
    const double v = p(mid);
    if ((v < 0.0) == (p(lo) < 0.0))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
