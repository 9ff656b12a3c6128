/*
 * Copyright 2026 The Gridfusion Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line front end. Links only against the C API.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gridfusion/gridfusion_c.h"

namespace {

int Report(gf_status status, const std::string& context) {
  std::cerr << "gridfusion: " << context << ": " << gf_status_name(status) << ": "
            << gf_last_error() << "\n";
  return static_cast<int>(status);
}

// Writes text to path, or to stdout when path is empty or "-".
int Emit(const char* text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "gridfusion: cannot write '" << path << "'\n";
    return static_cast<int>(GF_ERR_IO);
  }
  return 0;
}

// Owns a gf_config built from KEY=VALUE overrides.
class Config {
 public:
  Config() { gf_config_create(&config_); }
  ~Config() { gf_config_free(config_); }
  Config(const Config&) = delete;
  Config& operator=(const Config&) = delete;

  gf_status Apply(const std::vector<std::string>& overrides) {
    for (const std::string& o : overrides) {
      const gf_status s = gf_config_set(config_, o.c_str());
      if (s != GF_OK) return s;
    }
    return GF_OK;
  }
  const gf_config* get() const { return config_; }

 private:
  gf_config* config_ = nullptr;
};

struct RunArgs {
  std::string scenario;
  std::uint64_t seed = 1;
  std::string out = "out";
  bool no_fusion = false;
  std::string tracker_sensors = "radar";
  int dump_grid_every = 0;
  std::vector<std::string> overrides;
};

int DoRun(const RunArgs& args) {
  Config config;
  if (gf_status s = config.Apply(args.overrides); s != GF_OK) return Report(s, "--config");
  gf_scenario* scenario = nullptr;
  if (gf_status s = gf_scenario_resolve(args.scenario.c_str(), &scenario); s != GF_OK) {
    return Report(s, "scenario");
  }
  gf_run_options options;
  gf_run_options_init(&options);
  options.sensors =
      args.tracker_sensors == "radar+lidar" ? GF_SENSORS_RADAR_LIDAR : GF_SENSORS_RADAR;
  options.fusion_enabled = args.no_fusion ? 0 : 1;
  options.seed = args.seed;
  options.dump_grid_every = args.dump_grid_every;
  const gf_status s = gf_run(scenario, config.get(), &options, args.out.c_str());
  gf_scenario_free(scenario);
  if (s != GF_OK) return Report(s, "run");
  std::cerr << "wrote " << args.out << "/metrics.csv\n";
  return 0;
}

int DoCompare(const std::string& a, const std::string& b,
              const std::vector<std::string>& overrides, const std::string& out) {
  Config config;
  if (gf_status s = config.Apply(overrides); s != GF_OK) return Report(s, "--config");
  char* csv = nullptr;
  if (gf_status s = gf_compare_logs(a.c_str(), b.c_str(), config.get(), &csv); s != GF_OK) {
    return Report(s, "compare");
  }
  const int rc = Emit(csv, out);
  gf_string_free(csv);
  return rc;
}

int DoSuite(const std::vector<std::uint64_t>& seeds,
                 const std::vector<std::string>& overrides, const std::string& out) {
  Config config;
  if (gf_status s = config.Apply(overrides); s != GF_OK) return Report(s, "--config");
  char* csv = nullptr;
  const gf_status s =
      gf_run_suite(config.get(), seeds.data(), static_cast<int>(seeds.size()), &csv);
  if (s != GF_OK) return Report(s, "suite");
  const int rc = Emit(csv, out);
  gf_string_free(csv);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid-based fusion of tracked box hypotheses"};
  app.require_subcommand(1);
  app.set_version_flag("--version", gf_version());

  RunArgs run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run one scenario and write logs and metrics");
  run_cmd->add_option("--scenario", run.scenario, "Built-in scenario name or YAML file")
      ->required();
  run_cmd->add_option("--seed", run.seed, "Random seed");
  run_cmd->add_option("--out", run.out, "Output directory");
  run_cmd->add_flag("--no-fusion", run.no_fusion, "Tracker output only");
  run_cmd->add_option("--tracker-sensors", run.tracker_sensors, "Tracker inputs")
      ->check(CLI::IsMember({"radar", "radar+lidar"}));
  run_cmd->add_option("--dump-grid-every", run.dump_grid_every,
                      "Write a grid snapshot every N frames (0 = never)")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--config", run.overrides, "KEY=VALUE parameter override (repeatable)");

  std::string log_a, log_b, compare_out;
  std::vector<std::string> compare_overrides;
  CLI::App* compare_cmd =
      app.add_subcommand("compare", "Percent change between two frame logs of one scenario");
  compare_cmd->add_option("log_a", log_a, "Baseline frame log")->required();
  compare_cmd->add_option("log_b", log_b, "Second frame log")->required();
  compare_cmd->add_option("--out", compare_out, "Output CSV (default stdout)");
  compare_cmd->add_option("--config", compare_overrides, "KEY=VALUE parameter override");

  std::vector<std::uint64_t> suite_seeds = {1, 2, 3};
  std::vector<std::string> suite_overrides;
  std::string suite_out;
  CLI::App* suite_cmd = app.add_subcommand(
      "suite", "Metrics table over all built-in scenarios and both tracker variants");
  suite_cmd->add_option("--seeds", suite_seeds, "Seeds to run")->expected(1, -1);
  suite_cmd->add_option("--out", suite_out, "Output CSV (default stdout)");
  suite_cmd->add_option("--config", suite_overrides, "KEY=VALUE parameter override");

  CLI::App* list_cmd = app.add_subcommand("list-scenarios", "Print the built-in scenario names");
  CLI::App* keys_cmd = app.add_subcommand("list-config", "Print the keys accepted by --config");

  CLI11_PARSE(app, argc, argv);

  if (*run_cmd) return DoRun(run);
  if (*compare_cmd) return DoCompare(log_a, log_b, compare_overrides, compare_out);
  if (*suite_cmd) return DoSuite(suite_seeds, suite_overrides, suite_out);
  if (*list_cmd) {
    for (int i = 0; i < gf_builtin_scenario_count(); ++i) {
      std::cout << gf_builtin_scenario_name(i) << "\n";
    }
  }
  if (*keys_cmd) {
    for (int i = 0; i < gf_config_key_count(); ++i) std::cout << gf_config_key_name(i) << "\n";
  }
  return 0;
}
