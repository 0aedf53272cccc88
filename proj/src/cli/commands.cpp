#include "dmac/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>

#include "dmac/bounds.hpp"
#include "dmac/io.hpp"
#include "dmac/simulate.hpp"

namespace dmac {

using nlohmann::json;

namespace {

std::filesystem::path ensure_out_dir(const RunConfig& c) {
  std::filesystem::path dir(c.out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::vector<double> to_vec(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

}  // namespace

void cmd_generate(const RunConfig& config, std::ostream& log) {
  const UncertainNetwork net = resolve_network(config);
  const auto dir = ensure_out_dir(config);
  const auto path = dir / "network.json";
  save_network(path, net);
  log << "wrote " << path.string() << " (N=" << net.node_count()
      << ", E=" << net.graph.edge_count() << ", M=" << net.candidates.front().size() << ")\n";
}

void cmd_bounds(const std::filesystem::path& network_file,
                const std::optional<std::filesystem::path>& out_dir, std::ostream& log) {
  const UncertainNetwork net = load_network(network_file);
  if (const auto violations = validate_network(net); !violations.empty())
    throw std::invalid_argument("bounds: network invalid: " + violations.front().what);
  const GainBounds b = compute_bounds(net);
  const json j = bounds_to_json(b);
  log << j.dump(2) << '\n';
  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    save_json(*out_dir / "bounds.json", j);
    log << "wrote " << (*out_dir / "bounds.json").string() << '\n';
  }
}

void cmd_simulate(const RunConfig& config, std::ostream& log) {
  const UncertainNetwork net = resolve_network(config);
  const DisturbanceSpec spec = resolve_disturbance(config, net);
  const double gamma = resolve_gamma_eval(config, net);
  const Eigen::VectorXd x0 = Eigen::VectorXd::Zero(net.node_count());
  const auto dir = ensure_out_dir(config);

  for (const std::string& name : config.controllers) {
    const ControllerKind kind = controller_kind_from_string(name);
    const RunResult r = run(net, kind, spec, config.horizon, gamma, x0);
    save_trace_csv(dir / ("trace_" + name + ".csv"), r.trace);
    save_json(dir / ("metrics_" + name + ".json"), metrics_to_json(r.metrics, kind));
    log << name << ": empirical_gain=" << format_double(r.metrics.empirical_gain)
        << " total_cost=" << format_double(r.metrics.total_cost) << '\n';
  }
  log << "wrote traces and metrics to " << dir.string() << '\n';
}

void cmd_compare(const RunConfig& config, std::ostream& log) {
  const UncertainNetwork net = resolve_network(config);
  const DisturbanceSpec spec = resolve_disturbance(config, net);
  const double gamma = resolve_gamma_eval(config, net);
  const Eigen::VectorXd x0 = Eigen::VectorXd::Zero(net.node_count());
  const auto dir = ensure_out_dir(config);

  const CompareResult cr = compare(net, spec, config.horizon, gamma, x0);
  save_trace_csv(dir / "trace_minimax.csv", cr.minimax.trace);
  save_trace_csv(dir / "trace_hinf.csv", cr.hinf.trace);
  save_trace_csv(dir / "trace_zero.csv", cr.zero.trace);
  save_json(dir / "metrics_minimax.json",
            metrics_to_json(cr.minimax.metrics, ControllerKind::minimax));
  save_json(dir / "metrics_hinf.json", metrics_to_json(cr.hinf.metrics, ControllerKind::hinf));
  save_json(dir / "metrics_zero.json", metrics_to_json(cr.zero.metrics, ControllerKind::zero));

  {
    std::ofstream os(dir / "difference_series.csv", std::ios::binary);
    os << "t,series,value\n";
    for (int t = 0; t < cr.dx_paired.size(); ++t)
      os << t << ",dx_paired," << format_double(cr.dx_paired[t]) << '\n';
    for (int t = 0; t < cr.du_paired.size(); ++t)
      os << t << ",du_paired," << format_double(cr.du_paired[t]) << '\n';
    for (int t = 0; t < cr.du_hindsight.size(); ++t)
      os << t << ",du_hindsight," << format_double(cr.du_hindsight[t]) << '\n';
    if (!os.good()) throw std::runtime_error("write failed: difference_series.csv");
  }

  write_svg_chart(dir / "difference_series.svg",
                  {{"|x_mm - x_hinf|_1", to_vec(cr.dx_paired)},
                   {"|u_mm - u_hinf|_1", to_vec(cr.du_paired)}},
                  "time step", "l1 difference");

  json summary;
  summary["gamma_eval"] = gamma;
  if (cr.minimax.metrics.convergence_time)
    summary["convergence_time"] = *cr.minimax.metrics.convergence_time;
  else
    summary["convergence_time"] = nullptr;
  summary["minimax_empirical_gain"] = cr.minimax.metrics.empirical_gain;
  summary["hinf_empirical_gain"] = cr.hinf.metrics.empirical_gain;
  summary["zero_empirical_gain"] = cr.zero.metrics.empirical_gain;
  save_json(dir / "compare_summary.json", summary);

  log << "convergence_time=";
  if (cr.minimax.metrics.convergence_time)
    log << *cr.minimax.metrics.convergence_time;
  else
    log << "none";
  log << ", wrote comparison outputs to " << dir.string() << '\n';
}

void cmd_sweep(const RunConfig& config, const std::vector<std::uint64_t>& seeds,
               std::ostream& log) {
  const UncertainNetwork net = resolve_network(config);
  const DisturbanceSpec spec = resolve_disturbance(config, net);
  const auto dir = ensure_out_dir(config);

  for (const std::string& name : config.controllers) {
    const ControllerKind kind = controller_kind_from_string(name);
    const SweepSummary s = empirical_gain_sweep(net, kind, spec, seeds, config.horizon);
    json j;
    j["controller"] = name;
    j["seeds"] = s.seeds;
    j["gains"] = s.gains;
    j["max_gain"] = s.max_gain;
    j["mean_gain"] = s.mean_gain;
    save_json(dir / ("sweep_" + name + ".json"), j);
    log << name << ": max_gain=" << format_double(s.max_gain)
        << " mean_gain=" << format_double(s.mean_gain) << '\n';
  }
}

void write_svg_chart(const std::filesystem::path& path,
                     const std::vector<std::pair<std::string, std::vector<double>>>& series,
                     const std::string& x_label, const std::string& y_label) {
  constexpr double width = 720, height = 420;
  constexpr double ml = 70, mr = 20, mt = 20, mb = 50;
  const double pw = width - ml - mr, ph = height - mt - mb;

  std::size_t max_len = 1;
  double ymax = 0.0;
  for (const auto& [name, vals] : series) {
    max_len = std::max(max_len, vals.size());
    for (double v : vals)
      if (std::isfinite(v)) ymax = std::max(ymax, v);
  }
  if (ymax <= 0.0) ymax = 1.0;
  const double xmax = static_cast<double>(max_len - 1);
  const auto sx = [&](double t) { return ml + (xmax > 0 ? t / xmax : 0.0) * pw; };
  const auto sy = [&](double v) { return mt + ph - (v / ymax) * ph; };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
     << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // axes
  os << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
     << mt + ph << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
     << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double v = ymax * k / 4.0;
    os << "<text x=\"" << ml - 8 << "\" y=\"" << sy(v) + 4
       << "\" text-anchor=\"end\" font-size=\"11\">" << format_double(v) << "</text>\n";
    const double t = xmax * k / 4.0;
    os << "<text x=\"" << sx(t) << "\" y=\"" << mt + ph + 18
       << "\" text-anchor=\"middle\" font-size=\"11\">" << format_double(t) << "</text>\n";
  }
  os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
     << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n";
  os << "<text x=\"16\" y=\"" << mt + ph / 2
     << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 " << mt + ph / 2
     << ")\">" << y_label << "</text>\n";

  int idx = 0;
  for (const auto& [name, vals] : series) {
    const char* color = colors[idx % 4];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < vals.size(); ++k) {
      const double v = std::isfinite(vals[k]) ? vals[k] : 0.0;
      os << sx(static_cast<double>(k)) << ',' << sy(v) << ' ';
    }
    os << "\"/>\n";
    os << "<text x=\"" << ml + pw - 6 << "\" y=\"" << mt + 16 + 16 * idx
       << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color << "\">" << name
       << "</text>\n";
    ++idx;
  }
  os << "</svg>\n";
  if (!os.good()) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace dmac
