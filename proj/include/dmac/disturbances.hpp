#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "dmac/dynamics.hpp"

namespace dmac {

enum class DisturbanceKind { zero, gaussian, confusion };

/// Declarative disturbance description. Draws are keyed on
/// (seed, t, node) through a counter-based generator, so the same spec
/// replays the identical realization against every controller.
struct DisturbanceSpec {
  DisturbanceKind kind = DisturbanceKind::zero;
  double variance = 0.0;          // gaussian
  std::vector<int> target_index;  // confusion: per-node model to frame
  double noise_scale = 0.0;       // confusion
  std::uint64_t seed = 0;

  static DisturbanceSpec make_zero() { return {}; }
  static DisturbanceSpec make_gaussian(double variance, std::uint64_t seed);
  static DisturbanceSpec make_confusion(std::vector<int> target_index, double noise_scale,
                                        std::uint64_t seed);
};

/// i.i.d. zero-mean normal entries with the given variance,
/// deterministic per (seed, t, node).
Eigen::VectorXd gaussian_disturbance(const DisturbanceSpec& spec, int t, int n);

/// Model-framing adversary: w_i = (a_target - a_true) x_i + noise_scale * eta.
/// With noise_scale = 0 the closed trajectory is exactly consistent with the
/// target model, so the target's inferred-disturbance energy stays at zero.
Eigen::VectorXd confusion_disturbance(const DisturbanceSpec& spec, const Eigen::VectorXd& x_t,
                                      const UncertainNetwork& net, int t);

/// Dispatch on spec.kind. State-feedback kinds read x_t; others ignore it.
Eigen::VectorXd disturbance_at(const DisturbanceSpec& spec, int t, const Eigen::VectorXd& x_t,
                               const UncertainNetwork& net);

}  // namespace dmac
