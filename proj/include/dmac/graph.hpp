#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace dmac {

struct Edge {
  int i = 0;  // source: incidence entry +1
  int j = 0;  // sink:   incidence entry -1
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Undirected network topology with an oriented edge list.
///
/// The orientation stored at construction is the single source of truth
/// for incidence signs. Immutable after construction; safe to share
/// read-only across threads. Every node must have degree >= 1.
class NetworkGraph {
 public:
  NetworkGraph(int node_count, std::vector<Edge> edges);

  int node_count() const { return node_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }

  /// Adjacent node ids, sorted ascending.
  std::span<const int> neighbors(int i) const;
  int degree(int i) const { return degrees_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& degrees() const { return degrees_; }
  int max_degree() const { return max_degree_; }

  /// Column e of the N x E incidence matrix: +1 at the edge source,
  /// -1 at the sink.
  Eigen::SparseVector<double> incidence_column(int e) const;

  /// y = L x with L the graph Laplacian: y_i = sum_{j in N_i} (x_i - x_j).
  Eigen::VectorXd laplacian_apply(const Eigen::VectorXd& x) const;

  Eigen::SparseMatrix<double> incidence_matrix() const;  // N x E
  Eigen::SparseMatrix<double> laplacian_matrix() const;  // N x N

 private:
  int node_count_;
  std::vector<Edge> edges_;
  std::vector<int> neighbor_flat_;    // concatenated sorted neighbor lists
  std::vector<int> neighbor_start_;   // node_count_+1 offsets into the above
  std::vector<int> degrees_;
  int max_degree_ = 0;
};

/// Path graph 0-1-...-(n-1) with edges (k, k+1). Requires n >= 2.
NetworkGraph make_line(int n);

/// Star with center 0 and edges (0, k). Requires n >= 2.
NetworkGraph make_star(int n);

/// Uniform random labelled tree on n nodes (decoded Prufer sequence),
/// deterministic per seed. Requires n >= 2.
NetworkGraph make_random_tree(int n, std::uint64_t seed);

}  // namespace dmac
