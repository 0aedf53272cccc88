#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dmac/controllers.hpp"
#include "dmac/disturbances.hpp"
#include "dmac/dynamics.hpp"

namespace dmac {

enum class ControllerKind { zero, hinf, minimax };

std::string to_string(ControllerKind kind);
ControllerKind controller_kind_from_string(const std::string& name);

/// Full closed-loop recording over a horizon T.
struct SimulationTrace {
  Eigen::MatrixXd states;         // (T+1) x N
  Eigen::MatrixXd node_controls;  // T x N
  Eigen::MatrixXd edge_inputs;    // T x E
  Eigen::MatrixXd disturbances;   // T x N
  Eigen::MatrixXi selections;     // T x N (minimax runs; empty otherwise)
  ControllerKind controller = ControllerKind::zero;

  int horizon() const { return static_cast<int>(node_controls.rows()); }
};

struct RunMetrics {
  Eigen::VectorXd per_node_cost;  // game cost at gamma_eval, per node
  double total_cost = 0.0;
  double empirical_gain = 0.0;    // sqrt(sum(|x|^2 + |u|^2) / sum(|w|^2))
  std::optional<int> convergence_time;
  std::vector<int> switch_count;  // per node (minimax runs; empty otherwise)
  double edge_input_energy = 0.0; // edge-variant control energy, for sensitivity checks
  double gamma_eval = 0.0;
  bool nonzero_x0 = false;
};

struct RunResult {
  SimulationTrace trace;
  RunMetrics metrics;
};

/// Closed loop of one controller against one disturbance policy.
///
/// Step order at time t: refresh each node's covariance with the
/// transition that produced x(t) (skipped at t = 0), re-select models,
/// act on x(t), draw w(t), advance. Throws if the network fails
/// validation or T < 1.
RunResult run(const UncertainNetwork& net, ControllerKind controller,
              const DisturbanceSpec& disturbance, int horizon, double gamma_eval,
              const Eigen::VectorXd& x0);

/// Minimax, known-model, and zero controllers against the identical
/// disturbance realization, plus the per-step difference series between
/// the adaptive and the known-model runs. State-feedback disturbances
/// (confusion) pair as the same policy rather than the same realization.
struct CompareResult {
  RunResult minimax;
  RunResult hinf;
  RunResult zero;
  Eigen::VectorXd dx_paired;      // T+1: |x_mm(t) - x_hinf(t)|_1 across nodes
  Eigen::VectorXd du_paired;      // T:   |u_mm(t) - u_hinf(t)|_1 across nodes
  Eigen::VectorXd du_hindsight;   // T:   |u_mm(t) - hinf law on the minimax state|_1
};

CompareResult compare(const UncertainNetwork& net, const DisturbanceSpec& disturbance,
                      int horizon, double gamma_eval, const Eigen::VectorXd& x0);

/// Empirical gain distribution across disturbance seeds.
struct SweepSummary {
  std::vector<std::uint64_t> seeds;
  std::vector<double> gains;
  double max_gain = 0.0;
  double mean_gain = 0.0;
};

SweepSummary empirical_gain_sweep(const UncertainNetwork& net, ControllerKind controller,
                                  const DisturbanceSpec& disturbance_template,
                                  const std::vector<std::uint64_t>& seeds, int horizon);

}  // namespace dmac
