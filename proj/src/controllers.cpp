#include "dmac/controllers.hpp"

#include <cmath>
#include <stdexcept>

namespace dmac {

namespace {

ControlDecision assemble_edges(const NetworkGraph& g, Eigen::VectorXd node_controls) {
  ControlDecision d;
  d.edge_inputs.resize(g.edge_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    const Edge& ed = g.edge(e);
    d.edge_inputs[e] = node_controls[ed.i] - node_controls[ed.j];
  }
  d.node_controls = std::move(node_controls);
  return d;
}

}  // namespace

MinimaxNodeState::MinimaxNodeState(int node_id, int degree)
    : node_id_(node_id), degree_(degree) {
  if (degree_ < 1) throw std::invalid_argument("MinimaxNodeState: degree must be >= 1");
  z_ = Eigen::MatrixXd::Zero(2 + degree_, 2 + degree_);
}

void MinimaxNodeState::update(double b, double x_next, double x_t,
                              const Eigen::VectorXd& u_neighbors) {
  if (u_neighbors.size() != degree_)
    throw std::invalid_argument("MinimaxNodeState::update: neighbor control size mismatch");
  Eigen::VectorXd r(2 + degree_);
  r[0] = -x_next;
  r[1] = x_t;
  r.tail(degree_) = u_neighbors;
  z_.selfadjointView<Eigen::Lower>().rankUpdate(r);
  z_.triangularView<Eigen::StrictlyUpper>() = z_.transpose();

  // Same rank-one step folded into the scalar quadratic: the increment of
  // q(a) is (-x_next + b*sigma + a*x_t)^2 with sigma the neighbor-control sum.
  const double sigma = u_neighbors.sum();
  const double h = b * sigma - x_next;
  coeffs_.c0 += h * h;
  coeffs_.c1 += 2.0 * h * x_t;
  coeffs_.c2 += x_t * x_t;
}

int MinimaxNodeState::select(const CandidateSet& candidates) {
  if (candidates.values.empty())
    throw std::invalid_argument("MinimaxNodeState::select: empty candidate set");
  int best = 0;
  double qmin = coeffs_.eval(candidates.values[0]);
  for (int k = 1; k < candidates.size(); ++k) {
    const double q = coeffs_.eval(candidates.values[static_cast<std::size_t>(k)]);
    if (q < qmin) {
      qmin = q;
      best = k;
    }
  }
  if (selected_ < candidates.size()) {
    const double q_prev = coeffs_.eval(candidates.values[static_cast<std::size_t>(selected_)]);
    if (q_prev <= qmin + 1e-12) return selected_;  // hold on ties, no chattering
  }
  selected_ = best;
  return selected_;
}

QuadCoeffs extract_quad_coefficients(const Eigen::MatrixXd& z, double b) {
  const Eigen::Index d = z.rows() - 2;
  QuadCoeffs c;
  const double tail_row0 = z.row(0).tail(d).sum();
  const double tail_row1 = z.row(1).tail(d).sum();
  const double tail_block = z.bottomRightCorner(d, d).sum();
  c.c0 = z(0, 0) + 2.0 * b * tail_row0 + b * b * tail_block;
  c.c1 = 2.0 * z(0, 1) + 2.0 * b * tail_row1;
  c.c2 = z(1, 1);
  return c;
}

double full_quadform(const Eigen::MatrixXd& z, double a, double b) {
  Eigen::VectorXd v(z.rows());
  v[0] = 1.0;
  v[1] = a;
  v.tail(z.rows() - 2).setConstant(b);
  return v.dot(z * v);
}

ControlDecision zero_policy(const NetworkGraph& g, const Eigen::VectorXd& x) {
  if (x.size() != g.node_count()) throw std::invalid_argument("zero_policy: state size mismatch");
  return assemble_edges(g, Eigen::VectorXd::Zero(g.node_count()));
}

ControlDecision hinf_policy(const NetworkGraph& g, const Eigen::VectorXd& x, double b,
                            const std::vector<double>& a_true) {
  const int n = g.node_count();
  if (x.size() != n || static_cast<int>(a_true.size()) != n)
    throw std::invalid_argument("hinf_policy: size mismatch");
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) u[i] = b * x[i] / (a_true[static_cast<std::size_t>(i)] - 1.0);
  return assemble_edges(g, std::move(u));
}

ControlDecision minimax_policy(const NetworkGraph& g, const Eigen::VectorXd& x, double b,
                               const std::vector<MinimaxNodeState>& states,
                               const std::vector<CandidateSet>& candidates) {
  const int n = g.node_count();
  if (x.size() != n || static_cast<int>(states.size()) != n ||
      static_cast<int>(candidates.size()) != n)
    throw std::invalid_argument("minimax_policy: size mismatch");
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) {
    const CandidateSet& c = candidates[static_cast<std::size_t>(i)];
    const double a =
        c.values[static_cast<std::size_t>(states[static_cast<std::size_t>(i)].selected_index())];
    u[i] = b * x[i] / (a - 1.0);
  }
  return assemble_edges(g, std::move(u));
}

}  // namespace dmac
