#include "dmac/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dmac {

std::string to_string(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::zero: return "zero";
    case ControllerKind::hinf: return "hinf";
    case ControllerKind::minimax: return "minimax";
  }
  throw std::logic_error("unknown controller kind");
}

ControllerKind controller_kind_from_string(const std::string& name) {
  if (name == "zero") return ControllerKind::zero;
  if (name == "hinf") return ControllerKind::hinf;
  if (name == "minimax") return ControllerKind::minimax;
  throw std::invalid_argument("unknown controller '" + name + "'");
}

namespace {

// sum over sorted neighbors of (u_i - u_j); the same expression feeds both
// the covariance updates and the state stepping
double neighbor_diff_sum(const NetworkGraph& g, const Eigen::VectorXd& u, int i) {
  double s = 0.0;
  for (int j : g.neighbors(i)) s += u[i] - u[j];
  return s;
}

Eigen::VectorXd neighbor_diff_vector(const NetworkGraph& g, const Eigen::VectorXd& u, int i) {
  const auto nb = g.neighbors(i);
  Eigen::VectorXd v(static_cast<Eigen::Index>(nb.size()));
  for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = u[i] - u[nb[static_cast<std::size_t>(k)]];
  return v;
}

void finish_metrics(const UncertainNetwork& net, const SimulationTrace& trace,
                    double gamma_eval, RunMetrics& m) {
  const int n = net.node_count();
  const int horizon = trace.horizon();
  m.gamma_eval = gamma_eval;
  m.per_node_cost = Eigen::VectorXd::Zero(n);
  const double g2 = gamma_eval * gamma_eval;
  for (int t = 0; t < horizon; ++t) {
    for (int i = 0; i < n; ++i) {
      const double x = trace.states(t, i);
      const double u = trace.node_controls(t, i);
      const double w = trace.disturbances(t, i);
      m.per_node_cost[i] += x * x + u * u - g2 * w * w;
    }
  }
  for (int i = 0; i < n; ++i) {
    const double xt = trace.states(horizon, i);
    m.per_node_cost[i] += xt * xt;
  }
  m.total_cost = m.per_node_cost.sum();

  const double signal = trace.states.squaredNorm() + trace.node_controls.squaredNorm();
  const double noise = trace.disturbances.squaredNorm();
  if (noise > 0.0)
    m.empirical_gain = std::sqrt(signal / noise);
  else
    m.empirical_gain = signal > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  m.edge_input_energy = trace.edge_inputs.squaredNorm();

  if (trace.controller == ControllerKind::minimax) {
    m.switch_count.assign(static_cast<std::size_t>(n), 0);
    for (int t = 1; t < horizon; ++t)
      for (int i = 0; i < n; ++i)
        if (trace.selections(t, i) != trace.selections(t - 1, i))
          ++m.switch_count[static_cast<std::size_t>(i)];

    // earliest step from which every node holds its true model through the
    // end; discarded if it only happens inside the last 10% of the horizon
    int t0 = horizon;
    for (int t = horizon - 1; t >= 0; --t) {
      bool all_true = true;
      for (int i = 0; i < n && all_true; ++i)
        all_true = trace.selections(t, i) == net.true_index[static_cast<std::size_t>(i)];
      if (!all_true) break;
      t0 = t;
    }
    const int guard = (9 * horizon) / 10;
    if (t0 < horizon && t0 <= guard) m.convergence_time = t0;
  }
}

}  // namespace

RunResult run(const UncertainNetwork& net, ControllerKind controller,
              const DisturbanceSpec& disturbance, int horizon, double gamma_eval,
              const Eigen::VectorXd& x0) {
  if (horizon < 1) throw std::invalid_argument("run: horizon must be >= 1");
  const int n = net.node_count();
  const int e = net.graph.edge_count();
  if (x0.size() != n) throw std::invalid_argument("run: x0 size mismatch");
  if (const auto violations = validate_network(net); !violations.empty())
    throw std::invalid_argument("run: invalid network: " + violations.front().what);

  SimulationTrace trace;
  trace.controller = controller;
  trace.states.resize(horizon + 1, n);
  trace.node_controls.resize(horizon, n);
  trace.edge_inputs.resize(horizon, e);
  trace.disturbances.resize(horizon, n);
  if (controller == ControllerKind::minimax) trace.selections.resize(horizon, n);
  trace.states.row(0) = x0.transpose();

  std::vector<MinimaxNodeState> nodes;
  if (controller == ControllerKind::minimax) {
    nodes.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) nodes.emplace_back(i, net.graph.degree(i));
  }

  const std::vector<double> a_true = net.true_a_all();
  Eigen::VectorXd x = x0;
  Eigen::VectorXd u_prev;

  for (int t = 0; t < horizon; ++t) {
    if (controller == ControllerKind::minimax) {
      if (t > 0) {
        const Eigen::VectorXd x_prev = trace.states.row(t - 1).transpose();
        for (int i = 0; i < n; ++i)
          nodes[static_cast<std::size_t>(i)].update(net.b, x[i], x_prev[i],
                                                    neighbor_diff_vector(net.graph, u_prev, i));
      }
      for (int i = 0; i < n; ++i) {
        trace.selections(t, i) =
            nodes[static_cast<std::size_t>(i)].select(net.candidates[static_cast<std::size_t>(i)]);
      }
    }

    ControlDecision decision;
    switch (controller) {
      case ControllerKind::zero: decision = zero_policy(net.graph, x); break;
      case ControllerKind::hinf: decision = hinf_policy(net.graph, x, net.b, a_true); break;
      case ControllerKind::minimax:
        decision = minimax_policy(net.graph, x, net.b, nodes, net.candidates);
        break;
    }
    trace.node_controls.row(t) = decision.node_controls.transpose();
    trace.edge_inputs.row(t) = decision.edge_inputs.transpose();

    const Eigen::VectorXd w = disturbance_at(disturbance, t, x, net);
    trace.disturbances.row(t) = w.transpose();

    Eigen::VectorXd next(n);
    for (int i = 0; i < n; ++i) {
      const double s = neighbor_diff_sum(net.graph, decision.node_controls, i);
      next[i] = step_node(a_true[static_cast<std::size_t>(i)], net.b, x[i], s, w[i]);
    }
    trace.states.row(t + 1) = next.transpose();
    u_prev = std::move(decision.node_controls);
    x = std::move(next);
  }

  RunResult out;
  out.trace = std::move(trace);
  out.metrics.nonzero_x0 = x0.cwiseAbs().maxCoeff() > 0.0;
  finish_metrics(net, out.trace, gamma_eval, out.metrics);
  return out;
}

CompareResult compare(const UncertainNetwork& net, const DisturbanceSpec& disturbance,
                      int horizon, double gamma_eval, const Eigen::VectorXd& x0) {
  CompareResult out;
  out.minimax = run(net, ControllerKind::minimax, disturbance, horizon, gamma_eval, x0);
  out.hinf = run(net, ControllerKind::hinf, disturbance, horizon, gamma_eval, x0);
  out.zero = run(net, ControllerKind::zero, disturbance, horizon, gamma_eval, x0);

  out.dx_paired.resize(horizon + 1);
  for (int t = 0; t <= horizon; ++t)
    out.dx_paired[t] =
        (out.minimax.trace.states.row(t) - out.hinf.trace.states.row(t)).cwiseAbs().sum();

  out.du_paired.resize(horizon);
  out.du_hindsight.resize(horizon);
  const std::vector<double> a_true = net.true_a_all();
  for (int t = 0; t < horizon; ++t) {
    out.du_paired[t] =
        (out.minimax.trace.node_controls.row(t) - out.hinf.trace.node_controls.row(t))
            .cwiseAbs()
            .sum();
    // the known-model law re-evaluated on the adaptive run's own state:
    // zero exactly whenever every node has selected its true model
    const Eigen::VectorXd x_mm = out.minimax.trace.states.row(t).transpose();
    const ControlDecision ce = hinf_policy(net.graph, x_mm, net.b, a_true);
    out.du_hindsight[t] =
        (out.minimax.trace.node_controls.row(t) - ce.node_controls.transpose())
            .cwiseAbs()
            .sum();
  }
  return out;
}

SweepSummary empirical_gain_sweep(const UncertainNetwork& net, ControllerKind controller,
                                  const DisturbanceSpec& disturbance_template,
                                  const std::vector<std::uint64_t>& seeds, int horizon) {
  if (seeds.empty()) throw std::invalid_argument("empirical_gain_sweep: no seeds");
  SweepSummary s;
  s.seeds = seeds;
  s.gains.reserve(seeds.size());
  const Eigen::VectorXd x0 = Eigen::VectorXd::Zero(net.node_count());
  for (std::uint64_t seed : seeds) {
    DisturbanceSpec spec = disturbance_template;
    spec.seed = seed;
    const RunResult r = run(net, controller, spec, horizon, 0.0, x0);
    s.gains.push_back(r.metrics.empirical_gain);
  }
  s.max_gain = *std::max_element(s.gains.begin(), s.gains.end());
  s.mean_gain = 0.0;
  for (double g : s.gains) s.mean_gain += g;
  s.mean_gain /= static_cast<double>(s.gains.size());
  return s;
}

}  // namespace dmac
