#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "bssk/errors.hpp"
#include "bssk/experiments.hpp"

using namespace bssk;

int main(int argc, char** argv) {
  CLI::App app{"Bipartite spherical SK experiments"};
  app.require_subcommand(1);
  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  int workers = 0;
  for (const auto& name : experiment_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--seed", seed, "master seed");
    sub->add_option("--workers", workers, "worker threads (default: BSSK_WORKERS or all cores)");
    sub->add_option("--out", out_dir, "output directory");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string name = app.get_subcommands().front()->get_name();
  auto* sub = app.get_subcommand(name);

  try {
    ExperimentConfig cfg = default_config(name);
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot read " + config_path);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
      }
      cfg = config_from_json(j, cfg);
      if (cfg.experiment != name) throw ConfigError("config is for '" + cfg.experiment + "', not '" + name + "'");
    }
    if (sub->count("--seed")) cfg.seed = seed;
    if (sub->count("--workers")) cfg.workers = workers;
    if (sub->count("--out")) cfg.out = out_dir;
    if (cfg.out.empty()) cfg.out = "results/" + name;

    const auto r = run_experiment(cfg);
    write_outputs(r, cfg.out);
    fmt::print("{}: {} [{}]\n", name, r.headline, r.pass ? "PASS" : "FAIL");
    fmt::print("outputs in {}\n", cfg.out);
    return 0;
  } catch (const Error& e) {
    const json err{{"error", e.kind()}, {"message", e.what()}, {"experiment", name}};
    std::cerr << err.dump() << "\n";
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      std::ofstream(std::filesystem::path(out_dir) / "error.json") << err.dump(2) << "\n";
    }
    return 2;
  }
}
