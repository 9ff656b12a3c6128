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

#ifndef GRIDFUSION_TRACKER_TRACKER_H_
#define GRIDFUSION_TRACKER_TRACKER_H_

#include <vector>

#include "gridfusion/tracker/box_hypothesis.h"
#include "gridfusion/tracker/motion_models.h"

namespace gridfusion {

struct TrackerConfig {
  // Mahalanobis gate on the position innovation.
  double gate = 3.0;

  double birth_existence = 0.4;
  // On a hit: r <- r + (1 - r) * hit_gain. On a miss: r <- r * miss_factor.
  double hit_gain = 0.5;
  double miss_factor = 0.6;
  double death_threshold = 0.1;
  // Tracks below this existence are kept internally but not reported.
  double report_threshold = 0.5;

  double radar_position_sigma = 0.5;
  double boxfit_position_sigma = 0.4;
  double boxfit_orientation_sigma = 0.15;

  // Birth prior. Orientation comes from the ego heading: the tracker assumes
  // longitudinally aligned cars.
  double birth_length = 4.5;
  double birth_width = 1.8;
  double birth_position_sigma = 1.0;
  double birth_orientation_sigma = 0.1;
  double birth_speed_sigma = 10.0;
  double birth_yaw_rate_sigma = 0.2;

  MotionNoise motion;
};

// Mutable context of the point-object tracker that is not part of the
// hypotheses themselves.
struct TrackerContext {
  int next_track_id = 1;
  double ego_heading = 0.0;
  double timestamp = 0.0;
};

// One tracker cycle: CTRV prediction, gating, greedy nearest-neighbour
// assignment, EKF update, existence bookkeeping and radar-driven births.
// Laser box-fit detections update tracks but never start them.
std::vector<BoxHypothesis> TrackStep(std::vector<BoxHypothesis> tracks,
                                     const std::vector<Detection>& detections,
                                     double dt, const TrackerConfig& config,
                                     TrackerContext& context);

class Tracker {
 public:
  explicit Tracker(const TrackerConfig& config = {}) : config_(config) {}

  const std::vector<BoxHypothesis>& Step(const std::vector<Detection>& detections,
                                         double timestamp, double ego_heading);

  const std::vector<BoxHypothesis>& tracks() const { return tracks_; }
  // Tracks whose existence reaches the report threshold.
  std::vector<BoxHypothesis> Reported() const;
  const TrackerConfig& config() const { return config_; }

 private:
  TrackerConfig config_;
  TrackerContext context_;
  std::vector<BoxHypothesis> tracks_;
  bool started_ = false;
};

}  // namespace gridfusion

#endif  // GRIDFUSION_TRACKER_TRACKER_H_
