#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "bssk/model.hpp"
#include "bssk/spectral_events.hpp"

namespace bssk {

using json = nlohmann::ordered_json;

struct ExperimentConfig {
  std::string experiment;
  int n = 2000, m = 4000;
  double beta = 1.0;
  double b = 0.0;
  bool window = false;  // beta from b
  int samples = 50;
  std::uint64_t seed = 20240601;
  int workers = 0;  // 0: BSSK_WORKERS or hardware
  std::string out;
  EventParams events;
  std::string coeff = "both";  // theorem | lemma | both
  AVariant a_variant = AVariant::two_b;
  std::vector<double> sigma;   // clt-run
  int p = 0;                   // independence split (0: n/4)
  int p_minor = 0;             // minor size (0: n/2)
  int minor_samples = 200;
  double s = 20.0;             // counting window
  std::vector<double> betas;   // oracle-check
  std::vector<int> ns;         // kn-scan
  double rel_tol = 1e-10;
  std::string eigen_method = "dqds";
  int bootstrap = 1000;
  int bins = 100;
};

const std::vector<std::string>& experiment_names();

// Defaults for each subcommand reproduce its acceptance run.
ExperimentConfig default_config(const std::string& experiment);
// Overlays JSON on the defaults of cfg.experiment (or of the "experiment" key); unknown keys throw ConfigError.
ExperimentConfig config_from_json(const json& j, ExperimentConfig base);
json config_to_json(const ExperimentConfig& c);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

struct ExperimentResult {
  json summary;
  std::map<std::string, Table> tables;  // file stem -> per-sample data
  json records;                         // optional per-sample JSON (events)
  bool pass = false;
  std::string headline;
};

ExperimentResult run_experiment(const ExperimentConfig& c);
// summary.json, <stem>.csv for every table, records.json when present.
void write_outputs(const ExperimentResult& r, const std::string& dir);

}  // namespace bssk
