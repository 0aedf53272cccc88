#include "dmac/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <stdexcept>

namespace dmac {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json network_to_json(const UncertainNetwork& net) {
  json j;
  j["n"] = net.graph.node_count();
  j["b"] = net.b;
  json edges = json::array();
  for (const Edge& e : net.graph.edges()) edges.push_back({e.i, e.j});
  j["edges"] = std::move(edges);
  json cands = json::array();
  for (const CandidateSet& c : net.candidates) cands.push_back(c.values);
  j["candidates"] = std::move(cands);
  j["true_index"] = net.true_index;
  return j;
}

UncertainNetwork network_from_json(const json& j) {
  const int n = j.at("n").get<int>();
  std::vector<Edge> edges;
  for (const auto& e : j.at("edges")) edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  NetworkGraph graph(n, std::move(edges));
  UncertainNetwork net{std::move(graph), j.at("b").get<double>(), {}, {}};
  for (const auto& c : j.at("candidates"))
    net.candidates.push_back(CandidateSet{c.get<std::vector<double>>()});
  net.true_index = j.at("true_index").get<std::vector<int>>();
  if (static_cast<int>(net.candidates.size()) != n ||
      static_cast<int>(net.true_index.size()) != n)
    throw std::invalid_argument("network file: per-node array size mismatch");
  return net;
}

void save_json(const std::filesystem::path& path, const json& j) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << j.dump(2) << '\n';
  if (!os.good()) throw std::runtime_error("write failed: " + path.string());
}

json load_json(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  return json::parse(is);
}

void save_network(const std::filesystem::path& path, const UncertainNetwork& net) {
  save_json(path, network_to_json(net));
}

UncertainNetwork load_network(const std::filesystem::path& path) {
  return network_from_json(load_json(path));
}

json bounds_to_json(const GainBounds& b) {
  json j;
  j["gamma_lower"] = b.gamma_lower;
  j["gamma_uniform"] = b.gamma_uniform;
  if (b.gamma_upper)
    j["gamma_upper"] = *b.gamma_upper;
  else
    j["gamma_upper"] = nullptr;
  j["f1"] = b.cubic.f1;
  j["f2"] = b.cubic.f2;
  j["f3"] = b.cubic.f3;
  j["f4"] = b.cubic.f4;
  j["cubic_roots"] = b.cubic_roots;
  double zmin = 0.0, zmax = 0.0;
  if (!b.zero_control_gains.empty()) {
    zmin = *std::min_element(b.zero_control_gains.begin(), b.zero_control_gains.end());
    zmax = *std::max_element(b.zero_control_gains.begin(), b.zero_control_gains.end());
  }
  j["zero_gain_min"] = zmin;
  j["zero_gain_max"] = zmax;
  j["zero_control_gains"] = b.zero_control_gains;
  return j;
}

GainBounds bounds_from_json(const json& j) {
  GainBounds b;
  b.gamma_lower = j.at("gamma_lower").get<double>();
  b.gamma_uniform = j.at("gamma_uniform").get<double>();
  if (!j.at("gamma_upper").is_null()) b.gamma_upper = j.at("gamma_upper").get<double>();
  b.cubic = {j.at("f1").get<double>(), j.at("f2").get<double>(), j.at("f3").get<double>(),
             j.at("f4").get<double>()};
  b.cubic_roots = j.at("cubic_roots").get<std::vector<double>>();
  b.zero_control_gains = j.at("zero_control_gains").get<std::vector<double>>();
  return b;
}

namespace {

void write_block(std::ostream& os, const Eigen::MatrixXd& m, const char* kind) {
  for (int t = 0; t < m.rows(); ++t)
    for (int i = 0; i < m.cols(); ++i)
      os << t << ',' << i << ',' << kind << ',' << format_double(m(t, i)) << '\n';
}

}  // namespace

void write_trace_csv(std::ostream& os, const SimulationTrace& trace) {
  os << "t,id,kind,value\n";
  write_block(os, trace.states, "state");
  write_block(os, trace.node_controls, "control");
  write_block(os, trace.disturbances, "disturbance");
  if (trace.selections.size() > 0) {
    for (int t = 0; t < trace.selections.rows(); ++t)
      for (int i = 0; i < trace.selections.cols(); ++i)
        os << t << ',' << i << ",selection," << trace.selections(t, i) << '\n';
  }
  write_block(os, trace.edge_inputs, "edge_input");
}

void save_trace_csv(const std::filesystem::path& path, const SimulationTrace& trace) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_trace_csv(os, trace);
  if (!os.good()) throw std::runtime_error("write failed: " + path.string());
}

json metrics_to_json(const RunMetrics& m, ControllerKind controller) {
  json j;
  j["controller"] = to_string(controller);
  j["gamma_eval"] = m.gamma_eval;
  j["total_cost"] = m.total_cost;
  j["empirical_gain"] = m.empirical_gain;
  j["edge_input_energy"] = m.edge_input_energy;
  j["nonzero_x0"] = m.nonzero_x0;
  if (m.convergence_time)
    j["convergence_time"] = *m.convergence_time;
  else
    j["convergence_time"] = nullptr;
  std::vector<double> costs(m.per_node_cost.data(), m.per_node_cost.data() + m.per_node_cost.size());
  j["per_node_cost"] = std::move(costs);
  j["switch_count"] = m.switch_count;
  return j;
}

}  // namespace dmac
