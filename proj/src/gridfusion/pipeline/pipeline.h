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

#ifndef GRIDFUSION_PIPELINE_PIPELINE_H_
#define GRIDFUSION_PIPELINE_PIPELINE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gridfusion/association/association.h"
#include "gridfusion/eval/frame_log.h"
#include "gridfusion/eval/metrics.h"
#include "gridfusion/fusion/fusion.h"
#include "gridfusion/grid/dynamic_grid.h"
#include "gridfusion/grid/inverse_sensor_model.h"
#include "gridfusion/selection/selection.h"
#include "gridfusion/sim/scenario.h"
#include "gridfusion/tracker/box_fit.h"
#include "gridfusion/tracker/tracker.h"

namespace gridfusion {

enum class TrackerSensors { kRadar, kRadarLidar };

const char* TrackerSensorsName(TrackerSensors sensors);
// Accepts "radar" and "radar+lidar".
std::optional<TrackerSensors> ParseTrackerSensors(const std::string& name);

struct PipelineConfig {
  DynamicGridConfig grid;
  InverseSensorModelConfig sensor_model;
  // Shared by association and selection.
  DynamicCellConfig dynamic;
  TrackerConfig tracker;
  BoxFitConfig box_fit;
  AssociationConfig association;
  FusionConfig fusion;
  SelectionConfig selection;
  EvalConfig eval;
  double cluster_gap = 0.8;
  // A new track inherits a held object whose last selected box lies within
  // this distance.
  double handover_distance = 3.0;
};

// KEY=VALUE overrides, e.g. "selection.min_support=4". Throws
// Error(kInvalidArgument) for unknown keys or malformed values.
void ApplyConfigOverride(PipelineConfig& config, const std::string& assignment);
std::vector<std::string> ConfigKeys();

struct RunOptions {
  TrackerSensors sensors = TrackerSensors::kRadar;
  bool fusion_enabled = true;
  std::uint64_t seed = 1;
};

// Per-object fusion state carried between frames.
struct FusedObject {
  int track_id = -1;
  std::optional<BoxHypothesis> previous_selected;
  SelectionState selection;
  bool has_track = false;
};

struct FrameDiagnostics {
  int frame = 0;
  double timestamp = 0.0;
  bool tracker_suppressed = false;
  int radar_detections = 0;
  int boxfit_detections = 0;
  // Per object fused this frame.
  struct ObjectInfo {
    int track_id = -1;
    bool has_track = false;
    int group_cells = 0;
    bool from_fallback = false;
    double heading_std = 0.0;
    std::optional<Selection> selection;
  };
  std::vector<ObjectInfo> objects;
};

// Frame loop: sensors, inverse sensor model, grid update, tracker, then per
// object association, candidate construction and selection.
class Pipeline {
 public:
  Pipeline(Scenario scenario, PipelineConfig config, RunOptions options);

  // Processes the next frame. Returns false once all frames are done.
  // Numeric faults raise Error(kNumeric) naming the frame.
  bool Step();
  void Run();

  int frame() const { return frame_; }
  int frame_count() const { return scenario_.FrameCount(); }
  const Scenario& scenario() const { return scenario_; }
  const PipelineConfig& config() const { return config_; }
  const DynamicGrid& grid() const { return grid_; }
  const Tracker& tracker() const { return tracker_; }
  const FrameLog& log() const { return log_; }
  const FrameDiagnostics& diagnostics() const { return diagnostics_; }
  const std::map<int, FusedObject>& objects() const { return objects_; }

 private:
  void FuseObjects(const std::vector<BoxHypothesis>& reported, double dt, const Vec2& ego);
  void RecordSelection(int frame, const Selection& selection);

  Scenario scenario_;
  PipelineConfig config_;
  RunOptions options_;
  DynamicGrid grid_;
  Tracker tracker_;
  std::map<int, FusedObject> objects_;
  FrameLog log_;
  FrameDiagnostics diagnostics_;
  int frame_ = 0;
  double last_time_ = 0.0;
};

}  // namespace gridfusion

#endif  // GRIDFUSION_PIPELINE_PIPELINE_H_
