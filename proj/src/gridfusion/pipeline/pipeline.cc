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

#include "gridfusion/pipeline/pipeline.h"

#include <charconv>
#include <cmath>
#include <functional>
#include <set>
#include <variant>

#include "gridfusion/common/error.h"
#include "gridfusion/sim/sensors.h"

namespace gridfusion {

const char* TrackerSensorsName(TrackerSensors sensors) {
  return sensors == TrackerSensors::kRadar ? "radar" : "radar+lidar";
}

std::optional<TrackerSensors> ParseTrackerSensors(const std::string& name) {
  if (name == "radar") return TrackerSensors::kRadar;
  if (name == "radar+lidar") return TrackerSensors::kRadarLidar;
  return std::nullopt;
}

namespace {

using FieldRef = std::variant<double*, int*, bool*>;

struct ConfigEntry {
  const char* key;
  std::function<FieldRef(PipelineConfig&)> field;
};

const std::vector<ConfigEntry>& ConfigTable() {
  static const std::vector<ConfigEntry> table = {
      {"grid.occupancy_prior", [](PipelineConfig& c) { return FieldRef(&c.grid.occupancy_prior); }},
      {"grid.max_occupancy", [](PipelineConfig& c) { return FieldRef(&c.grid.max_occupancy); }},
      {"grid.max_particles_per_cell",
       [](PipelineConfig& c) { return FieldRef(&c.grid.max_particles_per_cell); }},
      {"grid.max_particles_total",
       [](PipelineConfig& c) { return FieldRef(&c.grid.max_particles_total); }},
      {"grid.process_noise_velocity",
       [](PipelineConfig& c) { return FieldRef(&c.grid.process_noise_velocity); }},
      {"grid.process_noise_position",
       [](PipelineConfig& c) { return FieldRef(&c.grid.process_noise_position); }},
      {"grid.survival_probability",
       [](PipelineConfig& c) { return FieldRef(&c.grid.survival_probability); }},
      {"grid.birth_probability",
       [](PipelineConfig& c) { return FieldRef(&c.grid.birth_probability); }},
      {"grid.newborn_max_speed",
       [](PipelineConfig& c) { return FieldRef(&c.grid.newborn_max_speed); }},
      {"grid.velocity_from_persistent_only",
       [](PipelineConfig& c) { return FieldRef(&c.grid.velocity_from_persistent_only); }},
      {"sensor_model.occupied_evidence",
       [](PipelineConfig& c) { return FieldRef(&c.sensor_model.occupied_evidence); }},
      {"sensor_model.free_evidence",
       [](PipelineConfig& c) { return FieldRef(&c.sensor_model.free_evidence); }},
      {"dynamic.occupancy_threshold",
       [](PipelineConfig& c) { return FieldRef(&c.dynamic.occupancy_threshold); }},
      {"dynamic.mahalanobis_threshold",
       [](PipelineConfig& c) { return FieldRef(&c.dynamic.mahalanobis_threshold); }},
      {"dynamic.covariance_epsilon",
       [](PipelineConfig& c) { return FieldRef(&c.dynamic.covariance_epsilon); }},
      {"tracker.gate", [](PipelineConfig& c) { return FieldRef(&c.tracker.gate); }},
      {"tracker.birth_existence",
       [](PipelineConfig& c) { return FieldRef(&c.tracker.birth_existence); }},
      {"tracker.death_threshold",
       [](PipelineConfig& c) { return FieldRef(&c.tracker.death_threshold); }},
      {"tracker.report_threshold",
       [](PipelineConfig& c) { return FieldRef(&c.tracker.report_threshold); }},
      {"tracker.radar_position_sigma",
       [](PipelineConfig& c) { return FieldRef(&c.tracker.radar_position_sigma); }},
      {"tracker.boxfit_position_sigma",
       [](PipelineConfig& c) { return FieldRef(&c.tracker.boxfit_position_sigma); }},
      {"tracker.boxfit_orientation_sigma",
       [](PipelineConfig& c) { return FieldRef(&c.tracker.boxfit_orientation_sigma); }},
      {"tracker.birth_orientation_sigma",
       [](PipelineConfig& c) { return FieldRef(&c.tracker.birth_orientation_sigma); }},
      {"tracker.accel_sigma", [](PipelineConfig& c) { return FieldRef(&c.tracker.motion.accel_sigma); }},
      {"tracker.yaw_accel_sigma",
       [](PipelineConfig& c) { return FieldRef(&c.tracker.motion.yaw_accel_sigma); }},
      {"box_fit.min_points", [](PipelineConfig& c) { return FieldRef(&c.box_fit.min_points); }},
      {"association.vicinity_margin",
       [](PipelineConfig& c) { return FieldRef(&c.association.vicinity_margin); }},
      {"association.fallback_scale",
       [](PipelineConfig& c) { return FieldRef(&c.association.fallback_scale); }},
      {"association.fallback_scales_width",
       [](PipelineConfig& c) { return FieldRef(&c.association.fallback_scales_width); }},
      {"association.occupancy_weighted_velocity",
       [](PipelineConfig& c) { return FieldRef(&c.association.occupancy_weighted_velocity); }},
      {"fusion.min_speed_for_heading",
       [](PipelineConfig& c) { return FieldRef(&c.fusion.min_speed_for_heading); }},
      {"fusion.max_heading_std",
       [](PipelineConfig& c) { return FieldRef(&c.fusion.max_heading_std); }},
      {"selection.min_support", [](PipelineConfig& c) { return FieldRef(&c.selection.min_support); }},
      {"selection.patience", [](PipelineConfig& c) { return FieldRef(&c.selection.patience); }},
      {"eval.match_tolerance", [](PipelineConfig& c) { return FieldRef(&c.eval.match_tolerance); }},
      {"eval.association_gate", [](PipelineConfig& c) { return FieldRef(&c.eval.association_gate); }},
      {"eval.orientation_mod_pi",
       [](PipelineConfig& c) { return FieldRef(&c.eval.orientation_mod_pi); }},
      {"cluster_gap", [](PipelineConfig& c) { return FieldRef(&c.cluster_gap); }},
      {"handover_distance", [](PipelineConfig& c) { return FieldRef(&c.handover_distance); }},
  };
  return table;
}

template <typename T>
bool ParseNumber(const std::string& text, T& out) {
  const auto r = std::from_chars(text.data(), text.data() + text.size(), out);
  return r.ec == std::errc() && r.ptr == text.data() + text.size();
}

void CheckFinite(const BoxHypothesis& h, int frame, const char* what) {
  if (!h.IsFinite()) {
    throw Error(ErrorCode::kNumeric, "numeric fault at frame " + std::to_string(frame) +
                                         ": non-finite " + what + " (track " +
                                         std::to_string(h.track_id) + ")");
  }
}

HypothesisRecord ToRecord(int frame, double t, const BoxHypothesis& h) {
  HypothesisRecord r;
  r.frame = frame;
  r.timestamp = t;
  r.track_id = h.track_id;
  r.box = h.Box();
  r.speed = h.speed;
  r.yaw_rate = h.yaw_rate;
  r.existence = h.existence;
  return r;
}

}  // namespace

namespace {

std::string Trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

}  // namespace

void ApplyConfigOverride(PipelineConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw Error(ErrorCode::kInvalidArgument,
                "config override '" + assignment + "' is not of the form KEY=VALUE");
  }
  const std::string key = Trim(assignment.substr(0, eq));
  const std::string value = Trim(assignment.substr(eq + 1));
  for (const ConfigEntry& entry : ConfigTable()) {
    if (key != entry.key) continue;
    const FieldRef ref = entry.field(config);
    bool ok = false;
    if (auto* d = std::get_if<double*>(&ref)) {
      ok = ParseNumber(value, **d) && std::isfinite(**d);
    } else if (auto* i = std::get_if<int*>(&ref)) {
      ok = ParseNumber(value, **i);
    } else if (auto* b = std::get_if<bool*>(&ref)) {
      ok = value == "true" || value == "false" || value == "1" || value == "0";
      **b = value == "true" || value == "1";
    }
    if (!ok) {
      throw Error(ErrorCode::kInvalidArgument,
                  "config override '" + key + "': bad value '" + value + "'");
    }
    return;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown config key '" + key + "'");
}

std::vector<std::string> ConfigKeys() {
  std::vector<std::string> keys;
  for (const ConfigEntry& e : ConfigTable()) keys.emplace_back(e.key);
  return keys;
}

Pipeline::Pipeline(Scenario scenario, PipelineConfig config, RunOptions options)
    : scenario_(std::move(scenario)),
      config_(std::move(config)),
      options_(options),
      grid_((scenario_.Validate(), scenario_.grid), config_.grid),
      tracker_(config_.tracker) {
  config_.association.dynamic = config_.dynamic;
  config_.selection.dynamic = config_.dynamic;
  log_.scenario_id = scenario_.id;
  log_.sensors = TrackerSensorsName(options_.sensors);
  log_.seed = options_.seed;
  log_.fusion_enabled = options_.fusion_enabled;
}

void Pipeline::Run() {
  while (Step()) {
  }
}

bool Pipeline::Step() {
  if (frame_ >= scenario_.FrameCount()) return false;
  const int frame = frame_;
  const double t = scenario_.FrameTime(frame);
  const double dt = frame == 0 ? 1.0 / scenario_.frame_rate : t - last_time_;
  diagnostics_ = FrameDiagnostics();
  diagnostics_.frame = frame;
  diagnostics_.timestamp = t;

  const SceneState scene = SceneAt(scenario_, t);
  log_.frame_times.push_back(t);
  for (const ObjectState& o : scene.objects) {
    TruthRecord r;
    r.frame = frame;
    r.timestamp = t;
    r.object_id = o.id;
    r.box = o.box;
    r.speed = o.speed;
    r.yaw_rate = o.yaw_rate;
    r.evaluate = o.evaluate;
    log_.truth.push_back(r);
  }

  // Grid.
  const LaserScan scan =
      SimulateLidar(scene, scenario_.lidar, FrameSeed(options_.seed, frame, 1));
  const MeasurementGrid meas = InverseSensorModel(scan, scenario_.grid, config_.sensor_model);
  grid_.Update(meas, dt, FrameSeed(options_.seed, frame, 3));
  for (const GridCell& c : grid_.grid().cells) {
    if (!std::isfinite(c.occupancy) || !c.vel_mean.allFinite() || !c.vel_cov.allFinite()) {
      throw Error(ErrorCode::kNumeric,
                  "numeric fault at frame " + std::to_string(frame) + ": non-finite grid cell");
    }
  }

  // Tracker.
  std::vector<Detection> detections =
      SimulateRadar(scene, scenario_.radar, FrameSeed(options_.seed, frame, 2));
  diagnostics_.radar_detections = static_cast<int>(detections.size());
  if (options_.sensors == TrackerSensors::kRadarLidar) {
    for (const auto& cluster : ClusterScan(scan, config_.cluster_gap)) {
      if (auto d = BoxFit(cluster, config_.box_fit)) {
        d->timestamp = t;
        detections.push_back(*d);
        ++diagnostics_.boxfit_detections;
      }
    }
  }
  tracker_.Step(detections, t, scene.ego.heading);
  std::vector<BoxHypothesis> reported = tracker_.Reported();
  for (const BoxHypothesis& h : reported) CheckFinite(h, frame, "track");
  if (IsTrackerDropoutFrame(scenario_.tracker_dropout_fraction, frame)) {
    reported.clear();
    diagnostics_.tracker_suppressed = true;
  }
  for (const BoxHypothesis& h : reported) log_.tracking.push_back(ToRecord(frame, t, h));

  if (options_.fusion_enabled) {
    FuseObjects(reported, dt, MountedPose(scene.ego, scenario_.lidar.mount).position);
  }

  last_time_ = t;
  ++frame_;
  return true;
}

void Pipeline::FuseObjects(const std::vector<BoxHypothesis>& reported, double dt,
                           const Vec2& ego) {
  const int frame = frame_;
  const double t = scenario_.FrameTime(frame);
  const GridMap& map = grid_.grid();

  std::map<int, const BoxHypothesis*> tracks;
  for (const BoxHypothesis& h : reported) tracks[h.track_id] = &h;

  // A track that is new to the fusion may continue an object that is
  // currently held without a track.
  for (const auto& [id, track] : tracks) {
    if (objects_.count(id)) continue;
    int best_id = -1;
    double best = config_.handover_distance;
    for (const auto& [other_id, obj] : objects_) {
      if (tracks.count(other_id) || !obj.previous_selected) continue;
      const double d = (obj.previous_selected->center - track->center).norm();
      if (d <= best) {
        best = d;
        best_id = other_id;
      }
    }
    FusedObject obj;
    if (best_id >= 0) {
      obj = objects_[best_id];
      objects_.erase(best_id);
      if (obj.previous_selected) obj.previous_selected->track_id = id;
    }
    obj.track_id = id;
    objects_[id] = obj;
  }

  for (auto it = objects_.begin(); it != objects_.end();) {
    FusedObject& obj = it->second;
    const auto track_it = tracks.find(it->first);
    obj.has_track = track_it != tracks.end();
    FrameDiagnostics::ObjectInfo info;
    info.track_id = it->first;
    info.has_track = obj.has_track;

    CandidateSet candidates;
    if (obj.has_track) {
      const BoxHypothesis& track = *track_it->second;
      const CellGroup group = Associate(map, track, config_.association);
      info.group_cells = group.count;
      info.from_fallback = group.from_fallback;
      info.heading_std = HeadingStd(group);
      candidates = BuildCandidates(track, group, obj.previous_selected, dt, ego, t,
                                   config_.fusion);
    } else if (obj.previous_selected) {
      candidates = BuildCandidates(std::nullopt, CellGroup(), obj.previous_selected, dt, ego,
                                   t, config_.fusion);
      // Held object: the prediction stands in for the missing track.
      const CellGroup group = Associate(map, *candidates.predicted, config_.association);
      info.group_cells = group.count;
      info.from_fallback = group.from_fallback;
      info.heading_std = HeadingStd(group);
      candidates.fused = FuseHypothesis(*candidates.predicted, group, ego, config_.fusion);
    } else {
      it = objects_.erase(it);
      continue;
    }

    const auto selection = Select(map, candidates, config_.selection, obj.selection);
    info.selection = selection;
    diagnostics_.objects.push_back(info);
    if (selection) {
      CheckFinite(selection->box, frame, "selected hypothesis");
      obj.previous_selected = selection->box;
      obj.previous_selected->track_id = it->first;
      RecordSelection(frame, *selection);
      log_.fused.back().track_id = it->first;
    } else {
      obj.previous_selected.reset();
      if (!obj.has_track) {
        it = objects_.erase(it);
        continue;
      }
    }
    ++it;
  }
}

void Pipeline::RecordSelection(int frame, const Selection& selection) {
  HypothesisRecord r = ToRecord(frame, scenario_.FrameTime(frame), selection.box);
  r.label = selection.label;
  r.support = selection.support;
  r.counts = selection.counts;
  log_.fused.push_back(r);
}

}  // namespace gridfusion
