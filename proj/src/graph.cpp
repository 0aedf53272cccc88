#include "dmac/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

#include "dmac/rng.hpp"

namespace dmac {

NetworkGraph::NetworkGraph(int node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  if (node_count_ <= 0) throw std::invalid_argument("graph: node_count must be positive");

  std::set<std::pair<int, int>> seen;
  degrees_.assign(static_cast<std::size_t>(node_count_), 0);
  for (const Edge& e : edges_) {
    if (e.i < 0 || e.i >= node_count_ || e.j < 0 || e.j >= node_count_)
      throw std::invalid_argument("graph: edge endpoint out of range");
    if (e.i == e.j)
      throw std::invalid_argument("graph: self-loop at node " + std::to_string(e.i));
    auto key = std::minmax(e.i, e.j);
    if (!seen.insert({key.first, key.second}).second)
      throw std::invalid_argument("graph: duplicate edge (" + std::to_string(e.i) + "," +
                                  std::to_string(e.j) + ")");
    ++degrees_[static_cast<std::size_t>(e.i)];
    ++degrees_[static_cast<std::size_t>(e.j)];
  }
  for (int i = 0; i < node_count_; ++i) {
    if (degrees_[static_cast<std::size_t>(i)] < 1)
      throw std::invalid_argument("graph: node " + std::to_string(i) + " has degree 0");
  }
  max_degree_ = *std::max_element(degrees_.begin(), degrees_.end());

  neighbor_start_.assign(static_cast<std::size_t>(node_count_) + 1, 0);
  for (int i = 0; i < node_count_; ++i)
    neighbor_start_[static_cast<std::size_t>(i) + 1] =
        neighbor_start_[static_cast<std::size_t>(i)] + degrees_[static_cast<std::size_t>(i)];
  neighbor_flat_.resize(static_cast<std::size_t>(neighbor_start_.back()));
  std::vector<int> fill(neighbor_start_.begin(), neighbor_start_.end() - 1);
  for (const Edge& e : edges_) {
    neighbor_flat_[static_cast<std::size_t>(fill[static_cast<std::size_t>(e.i)]++)] = e.j;
    neighbor_flat_[static_cast<std::size_t>(fill[static_cast<std::size_t>(e.j)]++)] = e.i;
  }
  for (int i = 0; i < node_count_; ++i) {
    auto first = neighbor_flat_.begin() + neighbor_start_[static_cast<std::size_t>(i)];
    auto last = neighbor_flat_.begin() + neighbor_start_[static_cast<std::size_t>(i) + 1];
    std::sort(first, last);
  }
}

std::span<const int> NetworkGraph::neighbors(int i) const {
  const auto s = static_cast<std::size_t>(neighbor_start_[static_cast<std::size_t>(i)]);
  const auto e = static_cast<std::size_t>(neighbor_start_[static_cast<std::size_t>(i) + 1]);
  return {neighbor_flat_.data() + s, e - s};
}

Eigen::SparseVector<double> NetworkGraph::incidence_column(int e) const {
  if (e < 0 || e >= edge_count())
    throw std::out_of_range("graph: edge index " + std::to_string(e) + " out of range");
  Eigen::SparseVector<double> col(node_count_);
  col.insert(edges_[static_cast<std::size_t>(e)].i) = 1.0;
  col.insert(edges_[static_cast<std::size_t>(e)].j) = -1.0;
  return col;
}

Eigen::VectorXd NetworkGraph::laplacian_apply(const Eigen::VectorXd& x) const {
  if (x.size() != node_count_)
    throw std::invalid_argument("laplacian_apply: expected vector of length " +
                                std::to_string(node_count_));
  Eigen::VectorXd y = Eigen::VectorXd::Zero(node_count_);
  for (const Edge& e : edges_) {
    const double d = x[e.i] - x[e.j];
    y[e.i] += d;
    y[e.j] -= d;
  }
  return y;
}

Eigen::SparseMatrix<double> NetworkGraph::incidence_matrix() const {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(edges_.size() * 2);
  for (int e = 0; e < edge_count(); ++e) {
    trips.emplace_back(edges_[static_cast<std::size_t>(e)].i, e, 1.0);
    trips.emplace_back(edges_[static_cast<std::size_t>(e)].j, e, -1.0);
  }
  Eigen::SparseMatrix<double> m(node_count_, edge_count());
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

Eigen::SparseMatrix<double> NetworkGraph::laplacian_matrix() const {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(edges_.size() * 4 + static_cast<std::size_t>(node_count_));
  for (const Edge& e : edges_) {
    trips.emplace_back(e.i, e.i, 1.0);
    trips.emplace_back(e.j, e.j, 1.0);
    trips.emplace_back(e.i, e.j, -1.0);
    trips.emplace_back(e.j, e.i, -1.0);
  }
  Eigen::SparseMatrix<double> m(node_count_, node_count_);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

NetworkGraph make_line(int n) {
  if (n < 2) throw std::invalid_argument("make_line: need n >= 2");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) - 1);
  for (int k = 0; k + 1 < n; ++k) edges.push_back({k, k + 1});
  return NetworkGraph(n, std::move(edges));
}

NetworkGraph make_star(int n) {
  if (n < 2) throw std::invalid_argument("make_star: need n >= 2");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) - 1);
  for (int k = 1; k < n; ++k) edges.push_back({0, k});
  return NetworkGraph(n, std::move(edges));
}

NetworkGraph make_random_tree(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("make_random_tree: need n >= 2");
  if (n == 2) return NetworkGraph(2, {{0, 1}});

  Rng rng(seed);
  const int m = n - 2;
  std::vector<int> prufer(static_cast<std::size_t>(m));
  std::vector<int> count(static_cast<std::size_t>(n), 0);
  for (int k = 0; k < m; ++k) {
    prufer[static_cast<std::size_t>(k)] =
        static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
    ++count[static_cast<std::size_t>(prufer[static_cast<std::size_t>(k)])];
  }

  // Standard decode: repeatedly join the smallest current leaf to the next
  // sequence entry.
  std::priority_queue<int, std::vector<int>, std::greater<int>> leaves;
  for (int v = 0; v < n; ++v)
    if (count[static_cast<std::size_t>(v)] == 0) leaves.push(v);

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) - 1);
  for (int k = 0; k < m; ++k) {
    const int leaf = leaves.top();
    leaves.pop();
    const int v = prufer[static_cast<std::size_t>(k)];
    edges.push_back({leaf, v});
    if (--count[static_cast<std::size_t>(v)] == 0) leaves.push(v);
  }
  const int u = leaves.top();
  leaves.pop();
  const int v = leaves.top();
  edges.push_back({u, v});
  return NetworkGraph(n, std::move(edges));
}

}  // namespace dmac
