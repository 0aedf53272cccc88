#include "dmac/disturbances.hpp"

#include <cmath>
#include <stdexcept>

#include "dmac/rng.hpp"

namespace dmac {

DisturbanceSpec DisturbanceSpec::make_gaussian(double variance, std::uint64_t seed) {
  if (variance < 0.0) throw std::invalid_argument("gaussian disturbance: variance < 0");
  DisturbanceSpec s;
  s.kind = DisturbanceKind::gaussian;
  s.variance = variance;
  s.seed = seed;
  return s;
}

DisturbanceSpec DisturbanceSpec::make_confusion(std::vector<int> target_index,
                                                double noise_scale, std::uint64_t seed) {
  if (noise_scale < 0.0) throw std::invalid_argument("confusion disturbance: noise_scale < 0");
  DisturbanceSpec s;
  s.kind = DisturbanceKind::confusion;
  s.target_index = std::move(target_index);
  s.noise_scale = noise_scale;
  s.seed = seed;
  return s;
}

Eigen::VectorXd gaussian_disturbance(const DisturbanceSpec& spec, int t, int n) {
  if (spec.variance < 0.0) throw std::invalid_argument("gaussian disturbance: variance < 0");
  Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
  if (spec.variance == 0.0) return w;
  const double sd = std::sqrt(spec.variance);
  for (int i = 0; i < n; ++i)
    w[i] = sd * counter_normal(spec.seed, static_cast<std::uint64_t>(t),
                               static_cast<std::uint64_t>(i));
  return w;
}

Eigen::VectorXd confusion_disturbance(const DisturbanceSpec& spec, const Eigen::VectorXd& x_t,
                                      const UncertainNetwork& net, int t) {
  const int n = net.node_count();
  if (x_t.size() != n) throw std::invalid_argument("confusion disturbance: state size mismatch");
  if (static_cast<int>(spec.target_index.size()) != n)
    throw std::invalid_argument("confusion disturbance: target_index size mismatch");
  Eigen::VectorXd w(n);
  for (int i = 0; i < n; ++i) {
    const int tgt = spec.target_index[static_cast<std::size_t>(i)];
    const CandidateSet& c = net.candidates[static_cast<std::size_t>(i)];
    if (tgt < 0 || tgt >= c.size())
      throw std::invalid_argument("confusion disturbance: target index out of range at node " +
                                  std::to_string(i));
    const double a_target = c.values[static_cast<std::size_t>(tgt)];
    w[i] = (a_target - net.true_a(i)) * x_t[i];
    if (spec.noise_scale > 0.0)
      w[i] += spec.noise_scale * counter_normal(spec.seed, static_cast<std::uint64_t>(t),
                                                static_cast<std::uint64_t>(i));
  }
  return w;
}

Eigen::VectorXd disturbance_at(const DisturbanceSpec& spec, int t, const Eigen::VectorXd& x_t,
                               const UncertainNetwork& net) {
  switch (spec.kind) {
    case DisturbanceKind::zero:
      return Eigen::VectorXd::Zero(net.node_count());
    case DisturbanceKind::gaussian:
      return gaussian_disturbance(spec, t, net.node_count());
    case DisturbanceKind::confusion:
      return confusion_disturbance(spec, x_t, net, t);
  }
  throw std::logic_error("disturbance_at: unknown kind");
}

}  // namespace dmac
