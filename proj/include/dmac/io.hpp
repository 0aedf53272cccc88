#pragma once

#include <filesystem>
#include <iosfwd>
#include <nlohmann/json_fwd.hpp>
#include <string>

#include "dmac/bounds.hpp"
#include "dmac/dynamics.hpp"
#include "dmac/simulate.hpp"

namespace dmac {

// Flat-file schemas used by the command-line tool. All floating-point
// values are written with shortest round-trip formatting so identical
// runs produce byte-identical files.

nlohmann::json network_to_json(const UncertainNetwork& net);
UncertainNetwork network_from_json(const nlohmann::json& j);
void save_network(const std::filesystem::path& path, const UncertainNetwork& net);
UncertainNetwork load_network(const std::filesystem::path& path);

nlohmann::json bounds_to_json(const GainBounds& b);
GainBounds bounds_from_json(const nlohmann::json& j);

/// Long-format table, header `t,id,kind,value`. Node rows carry kinds
/// state/control/disturbance/selection, edge rows carry edge_input.
void write_trace_csv(std::ostream& os, const SimulationTrace& trace);
void save_trace_csv(const std::filesystem::path& path, const SimulationTrace& trace);

nlohmann::json metrics_to_json(const RunMetrics& m, ControllerKind controller);

void save_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json load_json(const std::filesystem::path& path);

/// Shortest-round-trip decimal text for a double.
std::string format_double(double v);

}  // namespace dmac
