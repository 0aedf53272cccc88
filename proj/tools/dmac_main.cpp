#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "dmac/commands.hpp"
#include "dmac/config.hpp"

namespace {

// flags mirror RunConfig fields; a config file provides the base and any
// explicitly passed flag overrides it
struct FlagState {
  std::string config_file;
  std::string tree_n, line_n, star_n;
  dmac::RunConfig cfg;
};

void attach_common_flags(CLI::App* app, FlagState& fs) {
  app->add_option("--config", fs.config_file, "JSON config file with flat key paths");
  app->add_option("--tree", fs.tree_n, "random tree with N nodes");
  app->add_option("--line", fs.line_n, "path graph with N nodes");
  app->add_option("--star", fs.star_n, "star graph with N nodes");
  app->add_option("--graph-seed", fs.cfg.graph_seed, "tree generator seed");
  app->add_option("--network", fs.cfg.network_file, "use an existing network file");
  app->add_option("--b", fs.cfg.b, "edge input gain");
  app->add_option("--models", fs.cfg.model_count, "candidate models per node");
  app->add_option("--separation", fs.cfg.model_separation, "min candidate gap");
  app->add_option("--model-seed", fs.cfg.model_seed, "candidate sampling seed");
  app->add_option("--true-rule", fs.cfg.true_rule, "fixed | list | random");
  app->add_option("--true-index", fs.cfg.true_fixed_index, "true model index (fixed rule)");
  app->add_option("--true-seed", fs.cfg.true_seed, "true model seed (random rule)");
  app->add_option("--horizon,-T", fs.cfg.horizon, "time horizon");
  app->add_option("--disturbance", fs.cfg.disturbance_kind, "zero | gaussian | confusion");
  app->add_option("--variance", fs.cfg.disturbance_variance, "gaussian variance");
  app->add_option("--noise-scale", fs.cfg.disturbance_noise_scale, "confusion noise scale");
  app->add_option("--target-index", fs.cfg.disturbance_target_index, "confusion target model");
  app->add_option("--disturbance-seed", fs.cfg.disturbance_seed, "disturbance seed");
  app->add_option("--gamma", fs.cfg.gamma_eval, "gamma for cost records");
  app->add_option("--out", fs.cfg.out_dir, "output directory");
  app->add_option("--controllers", fs.cfg.controllers, "subset of minimax hinf zero");
}

dmac::RunConfig finalize(const CLI::App* app, const FlagState& fs) {
  dmac::RunConfig base;
  if (!fs.config_file.empty()) base = dmac::load_config(fs.config_file);

  const auto passed = [&](const std::string& name) { return app->count(name) > 0; };
  dmac::RunConfig out = base;
  if (passed("--tree")) { out.graph_kind = "tree"; out.graph_n = std::stoi(fs.tree_n); }
  if (passed("--line")) { out.graph_kind = "line"; out.graph_n = std::stoi(fs.line_n); }
  if (passed("--star")) { out.graph_kind = "star"; out.graph_n = std::stoi(fs.star_n); }
  if (passed("--graph-seed")) out.graph_seed = fs.cfg.graph_seed;
  if (passed("--network")) out.network_file = fs.cfg.network_file;
  if (passed("--b")) out.b = fs.cfg.b;
  if (passed("--models")) out.model_count = fs.cfg.model_count;
  if (passed("--separation")) out.model_separation = fs.cfg.model_separation;
  if (passed("--model-seed")) out.model_seed = fs.cfg.model_seed;
  if (passed("--true-rule")) out.true_rule = fs.cfg.true_rule;
  if (passed("--true-index")) out.true_fixed_index = fs.cfg.true_fixed_index;
  if (passed("--true-seed")) out.true_seed = fs.cfg.true_seed;
  if (passed("--horizon")) out.horizon = fs.cfg.horizon;
  if (passed("--disturbance")) out.disturbance_kind = fs.cfg.disturbance_kind;
  if (passed("--variance")) out.disturbance_variance = fs.cfg.disturbance_variance;
  if (passed("--noise-scale")) out.disturbance_noise_scale = fs.cfg.disturbance_noise_scale;
  if (passed("--target-index")) out.disturbance_target_index = fs.cfg.disturbance_target_index;
  if (passed("--disturbance-seed")) out.disturbance_seed = fs.cfg.disturbance_seed;
  if (passed("--gamma")) out.gamma_eval = fs.cfg.gamma_eval;
  if (passed("--out")) out.out_dir = fs.cfg.out_dir;
  if (passed("--controllers")) out.controllers = fs.cfg.controllers;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distributed minimax adaptive control of uncertain networks"};
  app.require_subcommand(1);

  FlagState gen_fs, sim_fs, cmp_fs, swp_fs;
  auto* gen = app.add_subcommand("generate", "resolve a network and write network.json");
  attach_common_flags(gen, gen_fs);

  std::string bounds_network;
  std::string bounds_out;
  auto* bnd = app.add_subcommand("bounds", "gain certificates for a stored network");
  bnd->add_option("network", bounds_network, "network.json path")->required();
  bnd->add_option("--out", bounds_out, "also write bounds.json to this directory");

  auto* sim = app.add_subcommand("simulate", "closed-loop run of the configured controllers");
  attach_common_flags(sim, sim_fs);

  auto* cmp = app.add_subcommand("compare", "paired minimax / known-model / zero comparison");
  attach_common_flags(cmp, cmp_fs);

  auto* swp = app.add_subcommand("sweep", "empirical gain across disturbance seeds");
  attach_common_flags(swp, swp_fs);
  std::uint64_t sweep_count = 10;
  std::uint64_t sweep_base = 0;
  swp->add_option("--runs", sweep_count, "number of seeds");
  swp->add_option("--base-seed", sweep_base, "first seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      dmac::cmd_generate(finalize(gen, gen_fs), std::cout);
    } else if (bnd->parsed()) {
      std::optional<std::filesystem::path> out;
      if (!bounds_out.empty()) out = bounds_out;
      dmac::cmd_bounds(bounds_network, out, std::cout);
    } else if (sim->parsed()) {
      dmac::cmd_simulate(finalize(sim, sim_fs), std::cout);
    } else if (cmp->parsed()) {
      dmac::cmd_compare(finalize(cmp, cmp_fs), std::cout);
    } else if (swp->parsed()) {
      std::vector<std::uint64_t> seeds;
      for (std::uint64_t s = 0; s < sweep_count; ++s) seeds.push_back(sweep_base + s);
      dmac::cmd_sweep(finalize(swp, swp_fs), seeds, std::cout);
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}
