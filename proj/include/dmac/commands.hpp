#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "dmac/config.hpp"

namespace dmac {

// Command bodies behind the CLI subcommands. Each writes its outputs
// under config.out_dir and reports progress on `log`; exceptions carry
// validation diagnostics to the caller.

/// Resolve the configured network and write <out>/network.json.
void cmd_generate(const RunConfig& config, std::ostream& log);

/// Compute the gain certificates of a stored network; writes
/// <out>/bounds.json when out_dir is set and prints the record to log.
void cmd_bounds(const std::filesystem::path& network_file,
                const std::optional<std::filesystem::path>& out_dir, std::ostream& log);

/// Closed-loop run of each configured controller; writes per-controller
/// trace_<kind>.csv and metrics_<kind>.json.
void cmd_simulate(const RunConfig& config, std::ostream& log);

/// Paired three-controller comparison on one disturbance realization;
/// writes traces, metrics, the difference series table and an SVG plot
/// of the adaptive-vs-known-model difference curves.
void cmd_compare(const RunConfig& config, std::ostream& log);

/// Empirical gain across disturbance seeds; writes sweep_<kind>.json.
void cmd_sweep(const RunConfig& config, const std::vector<std::uint64_t>& seeds,
               std::ostream& log);

/// Minimal SVG polyline chart of named series sharing an x-range ..T.
void write_svg_chart(const std::filesystem::path& path,
                     const std::vector<std::pair<std::string, std::vector<double>>>& series,
                     const std::string& x_label, const std::string& y_label);

}  // namespace dmac
