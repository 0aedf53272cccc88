#include "dmac/config.hpp"

#include <nlohmann/json.hpp>
#include <sstream>
#include <stdexcept>

#include "dmac/bounds.hpp"
#include "dmac/io.hpp"
#include "dmac/rng.hpp"

namespace dmac {

using nlohmann::json;

namespace {

template <typename T>
void read_if(const json& j, const char* key, T& into) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) into = it->get<T>();
}

}  // namespace

RunConfig config_from_json(const json& j) {
  RunConfig c;
  read_if(j, "graph.kind", c.graph_kind);
  read_if(j, "graph.n", c.graph_n);
  read_if(j, "graph.seed", c.graph_seed);
  if (auto it = j.find("graph.edges"); it != j.end() && !it->is_null()) {
    c.graph_edges.clear();
    for (const auto& e : *it) c.graph_edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  }
  if (auto it = j.find("network_file"); it != j.end() && !it->is_null())
    c.network_file = it->get<std::string>();

  read_if(j, "b", c.b);
  read_if(j, "models.count", c.model_count);
  read_if(j, "models.separation", c.model_separation);
  read_if(j, "models.seed", c.model_seed);
  if (auto it = j.find("models.explicit"); it != j.end() && !it->is_null())
    c.explicit_candidates = it->get<std::vector<std::vector<double>>>();

  read_if(j, "true_model.rule", c.true_rule);
  read_if(j, "true_model.index", c.true_fixed_index);
  if (auto it = j.find("true_model.list"); it != j.end() && !it->is_null())
    c.true_list = it->get<std::vector<int>>();
  read_if(j, "true_model.seed", c.true_seed);

  read_if(j, "horizon", c.horizon);

  read_if(j, "disturbance.kind", c.disturbance_kind);
  read_if(j, "disturbance.variance", c.disturbance_variance);
  read_if(j, "disturbance.noise_scale", c.disturbance_noise_scale);
  read_if(j, "disturbance.target_index", c.disturbance_target_index);
  read_if(j, "disturbance.seed", c.disturbance_seed);

  if (auto it = j.find("gamma_eval"); it != j.end() && !it->is_null())
    c.gamma_eval = it->get<double>();
  read_if(j, "out", c.out_dir);
  read_if(j, "controllers", c.controllers);
  return c;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["graph.kind"] = c.graph_kind;
  j["graph.n"] = c.graph_n;
  j["graph.seed"] = c.graph_seed;
  if (!c.graph_edges.empty()) {
    json edges = json::array();
    for (const Edge& e : c.graph_edges) edges.push_back({e.i, e.j});
    j["graph.edges"] = std::move(edges);
  }
  if (c.network_file) j["network_file"] = *c.network_file;
  j["b"] = c.b;
  j["models.count"] = c.model_count;
  j["models.separation"] = c.model_separation;
  j["models.seed"] = c.model_seed;
  if (!c.explicit_candidates.empty()) j["models.explicit"] = c.explicit_candidates;
  j["true_model.rule"] = c.true_rule;
  j["true_model.index"] = c.true_fixed_index;
  if (!c.true_list.empty()) j["true_model.list"] = c.true_list;
  j["true_model.seed"] = c.true_seed;
  j["horizon"] = c.horizon;
  j["disturbance.kind"] = c.disturbance_kind;
  j["disturbance.variance"] = c.disturbance_variance;
  j["disturbance.noise_scale"] = c.disturbance_noise_scale;
  j["disturbance.target_index"] = c.disturbance_target_index;
  j["disturbance.seed"] = c.disturbance_seed;
  if (c.gamma_eval) j["gamma_eval"] = *c.gamma_eval;
  j["out"] = c.out_dir;
  j["controllers"] = c.controllers;
  return j;
}

RunConfig load_config(const std::filesystem::path& path) {
  return config_from_json(load_json(path));
}

UncertainNetwork resolve_network(const RunConfig& c) {
  if (c.network_file) return load_network(*c.network_file);

  NetworkGraph graph = [&]() -> NetworkGraph {
    if (c.graph_kind == "tree") return make_random_tree(c.graph_n, c.graph_seed);
    if (c.graph_kind == "line") return make_line(c.graph_n);
    if (c.graph_kind == "star") return make_star(c.graph_n);
    if (c.graph_kind == "explicit") {
      if (c.graph_edges.empty()) throw std::invalid_argument("config: graph.edges missing");
      return NetworkGraph(c.graph_n, c.graph_edges);
    }
    throw std::invalid_argument("config: unknown graph.kind '" + c.graph_kind + "'");
  }();
  const int n = graph.node_count();

  UncertainNetwork net{std::move(graph), c.b, {}, {}};
  net.candidates.reserve(static_cast<std::size_t>(n));
  if (!c.explicit_candidates.empty()) {
    if (static_cast<int>(c.explicit_candidates.size()) != n)
      throw std::invalid_argument("config: models.explicit must list one set per node");
    for (const auto& vals : c.explicit_candidates) net.candidates.push_back(CandidateSet{vals});
  } else {
    for (int i = 0; i < n; ++i)
      net.candidates.push_back(sample_candidates(c.b, net.graph.degree(i), c.model_count,
                                                 derive_key(c.model_seed, static_cast<std::uint64_t>(i)),
                                                 c.model_separation));
  }

  net.true_index.resize(static_cast<std::size_t>(n));
  if (c.true_rule == "fixed") {
    std::fill(net.true_index.begin(), net.true_index.end(), c.true_fixed_index);
  } else if (c.true_rule == "list") {
    if (static_cast<int>(c.true_list.size()) != n)
      throw std::invalid_argument("config: true_model.list must have one entry per node");
    net.true_index = c.true_list;
  } else if (c.true_rule == "random") {
    for (int i = 0; i < n; ++i) {
      const int m = net.candidates[static_cast<std::size_t>(i)].size();
      net.true_index[static_cast<std::size_t>(i)] = static_cast<int>(
          derive_key(c.true_seed, static_cast<std::uint64_t>(i)) % static_cast<std::uint64_t>(m));
    }
  } else {
    throw std::invalid_argument("config: unknown true_model.rule '" + c.true_rule + "'");
  }

  if (const auto violations = validate_network(net); !violations.empty()) {
    std::ostringstream msg;
    msg << "network validation failed (" << violations.size() << " violations):";
    for (const Violation& v : violations) {
      msg << "\n  node " << v.node << " value " << v.value << ": " << v.what;
    }
    throw std::invalid_argument(msg.str());
  }
  return net;
}

DisturbanceSpec resolve_disturbance(const RunConfig& c, const UncertainNetwork& net) {
  if (c.disturbance_kind == "zero") return DisturbanceSpec::make_zero();
  if (c.disturbance_kind == "gaussian")
    return DisturbanceSpec::make_gaussian(c.disturbance_variance, c.disturbance_seed);
  if (c.disturbance_kind == "confusion") {
    std::vector<int> targets(static_cast<std::size_t>(net.node_count()),
                             c.disturbance_target_index);
    return DisturbanceSpec::make_confusion(std::move(targets), c.disturbance_noise_scale,
                                           c.disturbance_seed);
  }
  throw std::invalid_argument("config: unknown disturbance.kind '" + c.disturbance_kind + "'");
}

double resolve_gamma_eval(const RunConfig& c, const UncertainNetwork& net) {
  if (c.gamma_eval) return *c.gamma_eval;
  const BetaCubicReport rep = solve_beta_cubic(net.a_bar(), net.a_lower());
  if (rep.beta_min) return std::sqrt(*rep.beta_min);
  return gamma_lower(net);
}

}  // namespace dmac
