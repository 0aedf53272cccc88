#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "dmac/dynamics.hpp"
#include "dmac/graph.hpp"

namespace dmac {

/// Per-node controls and the derived per-edge inputs u_i - u_j.
struct ControlDecision {
  Eigen::VectorXd node_controls;  // length N
  Eigen::VectorXd edge_inputs;    // length E, edge (i,j) -> u_i - u_j
};

/// Coefficients of the scalar quadratic q(a) = c0 + c1 a + c2 a^2, the
/// disturbance-energy form of one node's covariance along [1, a, b 1^T].
struct QuadCoeffs {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  double eval(double a) const { return c0 + a * (c1 + a * c2); }
};

/// Per-node accumulated data covariance and the currently selected model.
///
/// z grows by one rank-one outer product of [-x_next, x_t, u_neighbors]
/// per transition; its quadratic form along [1, a, b 1^T] equals the
/// disturbance energy the trajectory would imply under model a. The same
/// quadratic is carried incrementally as three scalar coefficients so a
/// selection sweep costs O(M) after an O(d_i) update.
class MinimaxNodeState {
 public:
  MinimaxNodeState(int node_id, int degree);

  int node_id() const { return node_id_; }
  int degree() const { return degree_; }
  const Eigen::MatrixXd& z() const { return z_; }
  int selected_index() const { return selected_; }

  /// Accumulate the transition (x_t, u_neighbors) -> x_next.
  /// u_neighbors holds u_i - u_{j_k} in the node's sorted neighbor order.
  void update(double b, double x_next, double x_t, const Eigen::VectorXd& u_neighbors);

  /// q(a) via the incrementally maintained coefficients.
  double quadform(double a) const { return coeffs_.eval(a); }
  const QuadCoeffs& coefficients() const { return coeffs_; }

  /// argmin over the candidate values of q(a). Keeps the previously
  /// selected index on a tie (within 1e-12 of the minimum), otherwise
  /// takes the smallest minimizing index. Starts at index 0.
  int select(const CandidateSet& candidates);

 private:
  int node_id_;
  int degree_;
  int selected_ = 0;
  Eigen::MatrixXd z_;   // (2 + d) x (2 + d)
  QuadCoeffs coeffs_;
};

/// q(a) coefficients read off a full covariance matrix; O(d^2) reference
/// route for the incremental accumulation above.
QuadCoeffs extract_quad_coefficients(const Eigen::MatrixXd& z, double b);

/// Full (2+d)-dimensional quadratic form [1, a, b 1^T] Z [1, a, b 1^T]^T.
double full_quadform(const Eigen::MatrixXd& z, double a, double b);

/// All node controls zero (the "do nothing" policy u_i = u_j).
ControlDecision zero_policy(const NetworkGraph& g, const Eigen::VectorXd& x);

/// Distributed H-infinity state feedback for known models:
/// u_i = b x_i / (a_i - 1), the per-node form of K = B^T (A - I)^{-1}.
ControlDecision hinf_policy(const NetworkGraph& g, const Eigen::VectorXd& x, double b,
                            const std::vector<double>& a_true);

/// Minimax adaptive control action: each node applies the H-infinity
/// feedback of its currently selected model. Selections must have been
/// refreshed with data through x(t) before the call.
ControlDecision minimax_policy(const NetworkGraph& g, const Eigen::VectorXd& x, double b,
                               const std::vector<MinimaxNodeState>& states,
                               const std::vector<CandidateSet>& candidates);

}  // namespace dmac
