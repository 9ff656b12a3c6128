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

#ifndef GRIDFUSION_EVAL_METRICS_H_
#define GRIDFUSION_EVAL_METRICS_H_

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gridfusion/eval/frame_log.h"

namespace gridfusion {

struct EvalConfig {
  double match_tolerance = 0.04;
  // Adjacent records further apart than this break track continuity.
  double gap_threshold = 0.1;
  // Maximum center distance for assigning a hypothesis to a ground-truth
  // object in the same frame.
  double association_gate = 4.0;
  bool orientation_mod_pi = false;
};

// Index pairs (i, j) with |a[i] - b[j]| <= tol; each record is used at most
// once. Both inputs must be sorted.
std::vector<std::pair<std::size_t, std::size_t>> MatchFrames(std::span<const double> a,
                                                             std::span<const double> b,
                                                             double tol);

struct StreamSample {
  double timestamp = 0.0;
  OrientedBox estimate;
  OrientedBox truth;
};

double PositionError(const StreamSample& s);
double OrientationError(const StreamSample& s, bool mod_pi);

// Root mean square of the values; nullopt for an empty input.
std::optional<double> Rms(std::span<const double> values);
std::optional<double> RmsePosition(std::span<const StreamSample> samples);
std::optional<double> RmseOrientation(std::span<const StreamSample> samples, bool mod_pi);

// Sum of the gaps between consecutive timestamps that are shorter than
// gap_threshold.
double TrackDuration(std::span<const double> timestamps, double gap_threshold = 0.1);

// 100 (t - f) / t for errors, nullopt when t == 0.
std::optional<double> PercentImprovement(double metric_t, double metric_f);
// 100 (f - t) / t for durations, nullopt when t == 0.
std::optional<double> PercentExtension(double duration_t, double duration_f);

struct ObjectStreams {
  std::string object_id;
  std::vector<StreamSample> tracking;
  std::vector<StreamSample> fused;
};

// Assigns, frame by frame, hypotheses to evaluated ground-truth objects by
// greedy nearest center within the association gate.
std::vector<ObjectStreams> ExtractObjectStreams(const FrameLog& log, const EvalConfig& config);

struct ObjectMetrics {
  std::string object_id;
  int tracking_records = 0;
  int fused_records = 0;
  int matched_frames = 0;
  std::optional<double> rmse_position_t;
  std::optional<double> rmse_position_f;
  std::optional<double> rmse_orientation_t;
  std::optional<double> rmse_orientation_f;
  double duration_t = 0.0;
  double duration_f = 0.0;
};

struct RunMetrics {
  std::string scenario_id;
  std::string sensors;
  std::uint64_t seed = 0;
  bool fusion_enabled = true;
  std::vector<ObjectMetrics> objects;
};

// RMSE over frames in which both a tracking and a fused record exist for the
// object (all tracking records when fusion is disabled); durations over all
// records.
RunMetrics ComputeRunMetrics(const FrameLog& log, const EvalConfig& config = {});

// Metrics table CSV: one block of O_T, O_F and % rows per run, one column
// per metric and vehicle.
void WriteMetricsCsv(std::ostream& out, std::span<const RunMetrics> runs);

// Rows for two runs of the same scenario plus the change from the first to
// the second for each stream present in both.
void WriteComparisonCsv(std::ostream& out, const RunMetrics& a, const RunMetrics& b);

// Per-frame error series of one stream: timestamp, position and orientation
// error.
void WriteErrorSeriesCsv(std::ostream& out, std::span<const StreamSample> samples, bool mod_pi);

}  // namespace gridfusion

#endif  // GRIDFUSION_EVAL_METRICS_H_
