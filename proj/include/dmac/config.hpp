#pragma once

#include <cstdint>
#include <filesystem>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <vector>

#include "dmac/disturbances.hpp"
#include "dmac/dynamics.hpp"

namespace dmac {

/// One experiment description, loadable from a flat-key JSON file.
/// Every random choice is pinned by an explicit seed, so a config
/// resolves to exactly one network / disturbance realization.
struct RunConfig {
  // topology: generator + parameters, or an explicit edge list,
  // or a previously generated network file (overrides the rest)
  std::string graph_kind = "tree";  // tree | line | star | explicit
  int graph_n = 2;
  std::uint64_t graph_seed = 0;
  std::vector<Edge> graph_edges;
  std::optional<std::string> network_file;

  double b = 0.1;

  // per-node model sets: sampled (count/separation/seed) or explicit
  int model_count = 2;
  double model_separation = 0.05;
  std::uint64_t model_seed = 0;
  std::vector<std::vector<double>> explicit_candidates;

  // which candidate is the hidden true model
  std::string true_rule = "fixed";  // fixed | list | random
  int true_fixed_index = 0;
  std::vector<int> true_list;
  std::uint64_t true_seed = 0;

  int horizon = 20;

  std::string disturbance_kind = "gaussian";  // zero | gaussian | confusion
  double disturbance_variance = 0.1;
  double disturbance_noise_scale = 0.0;
  int disturbance_target_index = 0;
  std::uint64_t disturbance_seed = 0;

  std::optional<double> gamma_eval;  // default: computed upper bound
  std::string out_dir = ".";
  std::vector<std::string> controllers = {"minimax", "hinf", "zero"};
};

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& c);
RunConfig load_config(const std::filesystem::path& path);

/// Build the uncertain network a config describes; throws with node-level
/// diagnostics if the result fails validation.
UncertainNetwork resolve_network(const RunConfig& c);

DisturbanceSpec resolve_disturbance(const RunConfig& c, const UncertainNetwork& net);

/// gamma used in cost records: explicit value if given, else the computed
/// upper certificate, else the lower certificate when the upper one does
/// not exist (degenerate single-model sets).
double resolve_gamma_eval(const RunConfig& c, const UncertainNetwork& net);

}  // namespace dmac
