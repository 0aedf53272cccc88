#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dmac/graph.hpp"

namespace dmac {

/// Finite set of admissible local dynamics values for one node,
/// distinct and sorted ascending, each in (0,1).
struct CandidateSet {
  std::vector<double> values;

  int size() const { return static_cast<int>(values.size()); }
  double min() const { return values.front(); }
  double max() const { return values.back(); }
};

/// Networked plant with per-node parameter uncertainty: the topology, the
/// shared edge input gain b, one candidate set per node, and the hidden
/// true model index per node (independent across nodes).
struct UncertainNetwork {
  NetworkGraph graph;
  double b = 0.0;
  std::vector<CandidateSet> candidates;  // one per node
  std::vector<int> true_index;           // one per node, in [0, M_i)

  int node_count() const { return graph.node_count(); }
  double true_a(int i) const {
    return candidates[static_cast<std::size_t>(i)]
        .values[static_cast<std::size_t>(true_index[static_cast<std::size_t>(i)])];
  }
  std::vector<double> true_a_all() const;

  /// Network-level extremes over all candidate values.
  double a_bar() const;
  double a_lower() const;
};

struct NetworkState {
  Eigen::VectorXd x;
  int t = 0;
};

struct Violation {
  int node = -1;        // -1 for the network-level gain condition
  double value = 0.0;   // offending candidate value, or b
  std::string what;
};

/// Open interval of a-values satisfying a^2 + 2 b^2 d < a for degree d:
/// (1/2 - r, 1/2 + r) with r = sqrt(1/4 - 2 b^2 d).
/// Throws if the interval is empty, i.e. b >= sqrt(1/(8d)).
std::pair<double, double> admissible_interval(double b, int degree);

/// Admissibility check of one candidate against one node degree,
/// strict inequality with zero tolerance.
bool candidate_admissible(double a, double b, int degree);

/// Collects every admissibility violation: candidates failing
/// a^2 + 2 b^2 d < a for their node's degree, and b against the
/// max-degree condition b < sqrt(1/(8 d_max)). Empty list means valid.
std::vector<Violation> validate_network(const UncertainNetwork& net);

/// m distinct values uniform over the admissible interval for (b, degree),
/// rejection-resampled until all pairwise gaps are >= separation.
/// Deterministic per seed; throws if the separation cannot be met.
CandidateSet sample_candidates(double b, int degree, int m, std::uint64_t seed,
                               double separation = 0.05);

/// One node update: x+ = a x + b * edge_diff_sum + w, where
/// edge_diff_sum = sum over neighbors j of (u_i - u_j).
inline double step_node(double a, double b, double x, double edge_diff_sum, double w) {
  return a * x + b * edge_diff_sum + w;
}

/// Disturbance consistent with a transition under model a:
/// w = x_next - a x_t - b * edge_diff_sum, the exact inverse of step_node
/// when a is the true parameter. Under a wrong model a' the result shifts
/// by (a_true - a') x_t.
inline double infer_disturbance(double a, double b, double x_t, double edge_diff_sum,
                                double x_next) {
  return x_next - (a * x_t + b * edge_diff_sum);
}

/// Centralized oracle for one step: A x + B u + w with A = diag(true a),
/// B = b * incidence. u_edges holds the per-edge inputs u_i - u_j.
Eigen::VectorXd step_network_compact(const UncertainNetwork& net, const Eigen::VectorXd& x,
                                     const Eigen::VectorXd& u_edges,
                                     const Eigen::VectorXd& w);

}  // namespace dmac
