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

#ifndef GRIDFUSION_GRIDFUSION_C_H_
#define GRIDFUSION_GRIDFUSION_C_H_

#include <stdint.h>

#if defined(GRIDFUSION_BUILDING_LIBRARY)
#define GF_API __attribute__((visibility("default")))
#else
#define GF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

// Every fallible call returns a gf_status. On failure a human-readable
// message is available from gf_last_error() on the same thread until the
// next failing call.
typedef enum gf_status {
  GF_OK = 0,
  GF_ERR_INVALID_ARGUMENT = 1,
  GF_ERR_GEOMETRY_MISMATCH = 2,
  GF_ERR_PARSE = 3,
  GF_ERR_IO = 4,
  GF_ERR_NUMERIC = 5,
  GF_ERR_SCENARIO_MISMATCH = 6,
  GF_ERR_UNDEFINED = 7,
  GF_ERR_INTERNAL = 99,
} gf_status;

typedef enum gf_tracker_sensors {
  GF_SENSORS_RADAR = 0,
  GF_SENSORS_RADAR_LIDAR = 1,
} gf_tracker_sensors;

typedef struct gf_scenario gf_scenario;
typedef struct gf_config gf_config;
typedef struct gf_pipeline gf_pipeline;

GF_API const char* gf_version(void);
GF_API const char* gf_last_error(void);
GF_API const char* gf_status_name(gf_status status);

// Strings returned through char** out-parameters are owned by the caller and
// released with gf_string_free.
GF_API void gf_string_free(char* s);

// ---- Scenarios ----

GF_API gf_status gf_scenario_load_file(const char* path, gf_scenario** out);
GF_API gf_status gf_scenario_parse(const char* yaml_text, const char* source_name,
                                   gf_scenario** out);
// Unknown names fail with GF_ERR_INVALID_ARGUMENT.
GF_API gf_status gf_scenario_builtin(const char* name, gf_scenario** out);
// Built-in name if one matches, a YAML file path otherwise.
GF_API gf_status gf_scenario_resolve(const char* name_or_path, gf_scenario** out);
GF_API gf_status gf_scenario_save_file(const gf_scenario* scenario, const char* path);
GF_API gf_status gf_scenario_to_yaml(const gf_scenario* scenario, char** out);
GF_API const char* gf_scenario_id(const gf_scenario* scenario);
GF_API int gf_scenario_frame_count(const gf_scenario* scenario);
// Seconds; 0 for NULL.
GF_API double gf_scenario_duration(const gf_scenario* scenario);
GF_API void gf_scenario_free(gf_scenario* scenario);

GF_API int gf_builtin_scenario_count(void);
// NULL when index is out of range.
GF_API const char* gf_builtin_scenario_name(int index);

// ---- Configuration ----

GF_API gf_status gf_config_create(gf_config** out);
// "KEY=VALUE", e.g. "selection.min_support=4".
GF_API gf_status gf_config_set(gf_config* config, const char* assignment);
GF_API int gf_config_key_count(void);
GF_API const char* gf_config_key_name(int index);
GF_API void gf_config_free(gf_config* config);

// ---- Pipeline ----

typedef struct gf_run_options {
  gf_tracker_sensors sensors;
  int fusion_enabled;
  uint64_t seed;
  // Write a grid snapshot and PGM every N frames; 0 disables.
  int dump_grid_every;
} gf_run_options;

GF_API void gf_run_options_init(gf_run_options* options);

// config may be NULL for defaults. The scenario and config are copied.
GF_API gf_status gf_pipeline_create(const gf_scenario* scenario, const gf_config* config,
                                    const gf_run_options* options, gf_pipeline** out);
// Sets *more to 0 once every frame has been processed.
GF_API gf_status gf_pipeline_step(gf_pipeline* pipeline, int* more);
GF_API gf_status gf_pipeline_run(gf_pipeline* pipeline);
GF_API int gf_pipeline_frame(const gf_pipeline* pipeline);
GF_API int gf_pipeline_frame_count(const gf_pipeline* pipeline);
GF_API gf_status gf_pipeline_write_grid(const gf_pipeline* pipeline, const char* snapshot_path,
                                        const char* pgm_path);
// Writes frames.log, metrics.csv and errors_<object>_<OT|OF>.csv into dir.
GF_API gf_status gf_pipeline_write_outputs(const gf_pipeline* pipeline, const char* dir);
GF_API gf_status gf_pipeline_metrics_csv(const gf_pipeline* pipeline, char** out);
GF_API void gf_pipeline_free(gf_pipeline* pipeline);

// Runs the whole scenario, creating out_dir if needed. Grid dumps go to
// out_dir/grid/ at the rate given in options.
GF_API gf_status gf_run(const gf_scenario* scenario, const gf_config* config,
                        const gf_run_options* options, const char* out_dir);

// ---- Evaluation ----

// Comparison CSV between two frame logs of the same scenario; fails with
// GF_ERR_SCENARIO_MISMATCH otherwise. config may be NULL.
GF_API gf_status gf_compare_logs(const char* log_a_path, const char* log_b_path,
                                 const gf_config* config, char** out);

// Metrics CSV over every built-in scenario, both tracker sensor variants and
// the given seeds.
GF_API gf_status gf_run_suite(const gf_config* config, const uint64_t* seeds, int seed_count,
                                char** out);

// 100 (t - f) / t; GF_ERR_UNDEFINED when t == 0.
GF_API gf_status gf_percent_improvement(double metric_t, double metric_f, double* out);
// 100 (f - t) / t; GF_ERR_UNDEFINED when t == 0.
GF_API gf_status gf_percent_extension(double duration_t, double duration_f, double* out);
GF_API double gf_track_duration(const double* timestamps, int count, double gap_threshold);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // GRIDFUSION_GRIDFUSION_C_H_
