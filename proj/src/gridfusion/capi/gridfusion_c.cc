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

#include "gridfusion/gridfusion_c.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <fstream>
#include <new>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gridfusion/common/error.h"
#include "gridfusion/eval/frame_log.h"
#include "gridfusion/eval/metrics.h"
#include "gridfusion/grid/grid_io.h"
#include "gridfusion/pipeline/pipeline.h"
#include "gridfusion/sim/scenario_io.h"
#include "gridfusion/sim/scenario_library.h"

struct gf_scenario {
  gridfusion::Scenario value;
};

struct gf_config {
  gridfusion::PipelineConfig value;
};

struct gf_pipeline {
  gridfusion::Pipeline value;
};

namespace {

namespace fs = std::filesystem;
using gridfusion::Error;
using gridfusion::ErrorCode;

thread_local std::string last_error;

gf_status Fail(gf_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Runs fn, translating exceptions into status codes.
template <typename Fn>
gf_status Guard(Fn&& fn) {
  try {
    fn();
    return GF_OK;
  } catch (const Error& e) {
    return Fail(static_cast<gf_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return Fail(GF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(GF_ERR_INTERNAL, e.what());
  }
}

void Require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

gridfusion::RunOptions ToRunOptions(const gf_run_options& o) {
  gridfusion::RunOptions r;
  Require(o.sensors == GF_SENSORS_RADAR || o.sensors == GF_SENSORS_RADAR_LIDAR,
          "unknown tracker sensor variant");
  r.sensors = o.sensors == GF_SENSORS_RADAR ? gridfusion::TrackerSensors::kRadar
                                            : gridfusion::TrackerSensors::kRadarLidar;
  r.fusion_enabled = o.fusion_enabled != 0;
  r.seed = o.seed;
  return r;
}

std::string SafeName(const std::string& id) {
  std::string out = id;
  for (char& c : out) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-';
    if (!ok) c = '_';
  }
  return out;
}

void WriteTextFile(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path.string() + "'");
}

void MakeDirectories(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create '" + dir.string() + "': " + ec.message());
}

std::string MetricsCsv(const gridfusion::Pipeline& p) {
  const gridfusion::RunMetrics m = gridfusion::ComputeRunMetrics(p.log(), p.config().eval);
  std::ostringstream out;
  gridfusion::WriteMetricsCsv(out, std::span<const gridfusion::RunMetrics>(&m, 1));
  return out.str();
}

void WriteOutputs(const gridfusion::Pipeline& p, const fs::path& dir) {
  MakeDirectories(dir);
  gridfusion::WriteFrameLogFile((dir / "frames.log").string(), p.log());
  WriteTextFile(dir / "metrics.csv", MetricsCsv(p));
  const bool mod_pi = p.config().eval.orientation_mod_pi;
  for (const gridfusion::ObjectStreams& s :
       gridfusion::ExtractObjectStreams(p.log(), p.config().eval)) {
    std::ostringstream ot;
    gridfusion::WriteErrorSeriesCsv(ot, s.tracking, mod_pi);
    WriteTextFile(dir / ("errors_" + SafeName(s.object_id) + "_OT.csv"), ot.str());
    if (!p.log().fusion_enabled) continue;
    std::ostringstream of;
    gridfusion::WriteErrorSeriesCsv(of, s.fused, mod_pi);
    WriteTextFile(dir / ("errors_" + SafeName(s.object_id) + "_OF.csv"), of.str());
  }
}

void DumpGrid(const gridfusion::Pipeline& p, const fs::path& dir) {
  char name[32];
  std::snprintf(name, sizeof(name), "grid_%05d", p.frame() - 1);
  const gridfusion::GridMap& grid = p.grid().grid();
  gridfusion::WriteGridSnapshotFile(grid, (dir / (std::string(name) + ".gfg")).string());
  gridfusion::WriteOccupancyPgm(grid, (dir / (std::string(name) + ".pgm")).string());
}

}  // namespace

extern "C" {

const char* gf_version(void) { return "1.0.0"; }

const char* gf_last_error(void) { return last_error.c_str(); }

const char* gf_status_name(gf_status status) {
  switch (status) {
    case GF_OK:
      return "ok";
    case GF_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case GF_ERR_GEOMETRY_MISMATCH:
      return "geometry mismatch";
    case GF_ERR_PARSE:
      return "parse error";
    case GF_ERR_IO:
      return "i/o error";
    case GF_ERR_NUMERIC:
      return "numeric fault";
    case GF_ERR_SCENARIO_MISMATCH:
      return "scenario mismatch";
    case GF_ERR_UNDEFINED:
      return "undefined";
    case GF_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void gf_string_free(char* s) { std::free(s); }

gf_status gf_scenario_load_file(const char* path, gf_scenario** out) {
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "null argument");
    *out = new gf_scenario{gridfusion::LoadScenarioFile(path)};
  });
}

gf_status gf_scenario_parse(const char* yaml_text, const char* source_name, gf_scenario** out) {
  return Guard([&] {
    Require(yaml_text != nullptr && out != nullptr, "null argument");
    *out = new gf_scenario{
        gridfusion::ParseScenario(yaml_text, source_name ? source_name : "<string>")};
  });
}

gf_status gf_scenario_builtin(const char* name, gf_scenario** out) {
  return Guard([&] {
    Require(name != nullptr && out != nullptr, "null argument");
    std::optional<gridfusion::Scenario> s = gridfusion::BuiltinScenario(name);
    if (!s) throw Error(ErrorCode::kInvalidArgument, std::string("unknown scenario '") + name + "'");
    *out = new gf_scenario{std::move(*s)};
  });
}

gf_status gf_scenario_resolve(const char* name_or_path, gf_scenario** out) {
  if (name_or_path != nullptr && gridfusion::BuiltinScenario(name_or_path)) {
    return gf_scenario_builtin(name_or_path, out);
  }
  return gf_scenario_load_file(name_or_path, out);
}

gf_status gf_scenario_save_file(const gf_scenario* scenario, const char* path) {
  return Guard([&] {
    Require(scenario != nullptr && path != nullptr, "null argument");
    gridfusion::SaveScenarioFile(scenario->value, path);
  });
}

gf_status gf_scenario_to_yaml(const gf_scenario* scenario, char** out) {
  return Guard([&] {
    Require(scenario != nullptr && out != nullptr, "null argument");
    *out = CopyString(gridfusion::SerializeScenario(scenario->value));
  });
}

const char* gf_scenario_id(const gf_scenario* scenario) {
  return scenario ? scenario->value.id.c_str() : "";
}

int gf_scenario_frame_count(const gf_scenario* scenario) {
  return scenario ? scenario->value.FrameCount() : 0;
}

double gf_scenario_duration(const gf_scenario* scenario) {
  return scenario ? scenario->value.duration : 0.0;
}

void gf_scenario_free(gf_scenario* scenario) { delete scenario; }

int gf_builtin_scenario_count(void) {
  return static_cast<int>(gridfusion::BuiltinScenarioNames().size());
}

const char* gf_builtin_scenario_name(int index) {
  static const std::vector<std::string> names = gridfusion::BuiltinScenarioNames();
  if (index < 0 || index >= static_cast<int>(names.size())) return nullptr;
  return names[index].c_str();
}

gf_status gf_config_create(gf_config** out) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    *out = new gf_config{};
  });
}

gf_status gf_config_set(gf_config* config, const char* assignment) {
  return Guard([&] {
    Require(config != nullptr && assignment != nullptr, "null argument");
    gridfusion::ApplyConfigOverride(config->value, assignment);
  });
}

int gf_config_key_count(void) { return static_cast<int>(gridfusion::ConfigKeys().size()); }

const char* gf_config_key_name(int index) {
  static const std::vector<std::string> keys = gridfusion::ConfigKeys();
  if (index < 0 || index >= static_cast<int>(keys.size())) return nullptr;
  return keys[index].c_str();
}

void gf_config_free(gf_config* config) { delete config; }

void gf_run_options_init(gf_run_options* options) {
  if (options == nullptr) return;
  options->sensors = GF_SENSORS_RADAR;
  options->fusion_enabled = 1;
  options->seed = 1;
  options->dump_grid_every = 0;
}

gf_status gf_pipeline_create(const gf_scenario* scenario, const gf_config* config,
                             const gf_run_options* options, gf_pipeline** out) {
  return Guard([&] {
    Require(scenario != nullptr && out != nullptr, "null argument");
    gf_run_options defaults;
    gf_run_options_init(&defaults);
    const gridfusion::PipelineConfig cfg = config ? config->value : gridfusion::PipelineConfig{};
    *out = new gf_pipeline{
        gridfusion::Pipeline(scenario->value, cfg, ToRunOptions(options ? *options : defaults))};
  });
}

gf_status gf_pipeline_step(gf_pipeline* pipeline, int* more) {
  return Guard([&] {
    Require(pipeline != nullptr, "null argument");
    const bool stepped = pipeline->value.Step();
    if (more) *more = stepped && pipeline->value.frame() < pipeline->value.frame_count();
  });
}

gf_status gf_pipeline_run(gf_pipeline* pipeline) {
  return Guard([&] {
    Require(pipeline != nullptr, "null argument");
    pipeline->value.Run();
  });
}

int gf_pipeline_frame(const gf_pipeline* pipeline) {
  return pipeline ? pipeline->value.frame() : 0;
}

int gf_pipeline_frame_count(const gf_pipeline* pipeline) {
  return pipeline ? pipeline->value.frame_count() : 0;
}

gf_status gf_pipeline_write_grid(const gf_pipeline* pipeline, const char* snapshot_path,
                                 const char* pgm_path) {
  return Guard([&] {
    Require(pipeline != nullptr, "null argument");
    const gridfusion::GridMap& grid = pipeline->value.grid().grid();
    if (snapshot_path) gridfusion::WriteGridSnapshotFile(grid, snapshot_path);
    if (pgm_path) gridfusion::WriteOccupancyPgm(grid, pgm_path);
  });
}

gf_status gf_pipeline_write_outputs(const gf_pipeline* pipeline, const char* dir) {
  return Guard([&] {
    Require(pipeline != nullptr && dir != nullptr, "null argument");
    WriteOutputs(pipeline->value, dir);
  });
}

gf_status gf_pipeline_metrics_csv(const gf_pipeline* pipeline, char** out) {
  return Guard([&] {
    Require(pipeline != nullptr && out != nullptr, "null argument");
    *out = CopyString(MetricsCsv(pipeline->value));
  });
}

void gf_pipeline_free(gf_pipeline* pipeline) { delete pipeline; }

gf_status gf_run(const gf_scenario* scenario, const gf_config* config,
                 const gf_run_options* options, const char* out_dir) {
  return Guard([&] {
    Require(scenario != nullptr && out_dir != nullptr, "null argument");
    gf_run_options defaults;
    gf_run_options_init(&defaults);
    const gf_run_options& opts = options ? *options : defaults;
    Require(opts.dump_grid_every >= 0, "dump_grid_every must be >= 0");
    const gridfusion::PipelineConfig cfg = config ? config->value : gridfusion::PipelineConfig{};
    gridfusion::Pipeline p(scenario->value, cfg, ToRunOptions(opts));
    const fs::path dir(out_dir);
    MakeDirectories(dir);
    const fs::path grid_dir = dir / "grid";
    if (opts.dump_grid_every > 0) MakeDirectories(grid_dir);
    while (p.Step()) {
      if (opts.dump_grid_every > 0 && (p.frame() - 1) % opts.dump_grid_every == 0) {
        DumpGrid(p, grid_dir);
      }
    }
    gridfusion::SaveScenarioFile(scenario->value, (dir / "scenario.yaml").string());
    WriteOutputs(p, dir);
  });
}

gf_status gf_compare_logs(const char* log_a_path, const char* log_b_path,
                          const gf_config* config, char** out) {
  return Guard([&] {
    Require(log_a_path != nullptr && log_b_path != nullptr && out != nullptr, "null argument");
    const gridfusion::FrameLog a = gridfusion::ReadFrameLogFile(log_a_path);
    const gridfusion::FrameLog b = gridfusion::ReadFrameLogFile(log_b_path);
    if (a.scenario_id != b.scenario_id) {
      throw Error(ErrorCode::kScenarioMismatch, "logs belong to different scenarios: '" +
                                                    a.scenario_id + "' vs '" + b.scenario_id +
                                                    "'");
    }
    const gridfusion::EvalConfig eval = config ? config->value.eval : gridfusion::EvalConfig{};
    std::ostringstream csv;
    gridfusion::WriteComparisonCsv(csv, gridfusion::ComputeRunMetrics(a, eval),
                                   gridfusion::ComputeRunMetrics(b, eval));
    *out = CopyString(csv.str());
  });
}

gf_status gf_run_suite(const gf_config* config, const uint64_t* seeds, int seed_count,
                         char** out) {
  return Guard([&] {
    Require(out != nullptr && seeds != nullptr && seed_count > 0, "at least one seed required");
    const gridfusion::PipelineConfig cfg = config ? config->value : gridfusion::PipelineConfig{};
    std::vector<gridfusion::RunMetrics> runs;
    for (const std::string& name : gridfusion::BuiltinScenarioNames()) {
      for (const gridfusion::TrackerSensors sensors :
           {gridfusion::TrackerSensors::kRadar, gridfusion::TrackerSensors::kRadarLidar}) {
        for (int i = 0; i < seed_count; ++i) {
          gridfusion::Pipeline p(*gridfusion::BuiltinScenario(name), cfg,
                                 {sensors, true, seeds[i]});
          p.Run();
          runs.push_back(gridfusion::ComputeRunMetrics(p.log(), cfg.eval));
        }
      }
    }
    std::ostringstream csv;
    gridfusion::WriteMetricsCsv(csv, runs);
    *out = CopyString(csv.str());
  });
}

gf_status gf_percent_improvement(double metric_t, double metric_f, double* out) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    const std::optional<double> v = gridfusion::PercentImprovement(metric_t, metric_f);
    if (!v) throw Error(ErrorCode::kUndefined, "percent change undefined for a zero baseline");
    *out = *v;
  });
}

gf_status gf_percent_extension(double duration_t, double duration_f, double* out) {
  return Guard([&] {
    Require(out != nullptr, "null argument");
    const std::optional<double> v = gridfusion::PercentExtension(duration_t, duration_f);
    if (!v) throw Error(ErrorCode::kUndefined, "percent change undefined for a zero baseline");
    *out = *v;
  });
}

double gf_track_duration(const double* timestamps, int count, double gap_threshold) {
  if (timestamps == nullptr || count <= 0) return 0.0;
  return gridfusion::TrackDuration(std::span<const double>(timestamps, count), gap_threshold);
}

}  // extern "C"
