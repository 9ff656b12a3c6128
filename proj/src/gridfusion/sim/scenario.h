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

#ifndef GRIDFUSION_SIM_SCENARIO_H_
#define GRIDFUSION_SIM_SCENARIO_H_

#include <cstdint>
#include <string>
#include <vector>

#include "gridfusion/common/geometry.h"
#include "gridfusion/grid/grid_map.h"

namespace gridfusion {

enum class SensorKind { kLidar, kRadar };

struct SensorConfig {
  SensorKind kind = SensorKind::kLidar;
  double fov_deg = 85.0;
  // Lidar only.
  double resolution_deg = 0.25;
  double max_range = 200.0;
  double noise_sigma = 0.0;
  double dropout = 0.0;
  // Mounting pose in the vehicle frame.
  Pose2D mount;

  // Throws Error(kInvalidArgument).
  void Validate() const;
};

SensorConfig DefaultLidarConfig();
SensorConfig DefaultRadarConfig();

// Speed and yaw rate held from start_time until the next segment starts.
struct ControlSegment {
  double start_time = 0.0;
  double speed = 0.0;
  double yaw_rate = 0.0;
};

struct MotionSpec {
  Pose2D initial;
  std::vector<ControlSegment> controls;
};

struct TrajectorySample {
  double timestamp = 0.0;
  Pose2D pose;
  double speed = 0.0;
  double yaw_rate = 0.0;
};

// Exact CTRV integration of the control segments up to time t (t >= 0).
TrajectorySample SampleMotion(const MotionSpec& motion, double t);

struct ObjectSpec {
  std::string id;
  double length = 4.5;
  double width = 1.8;
  MotionSpec motion;
  // Objects with evaluate = false still occlude and reflect but are not
  // scored (parked cars, walls).
  bool evaluate = true;
};

struct Scenario {
  std::string id;
  std::string description;
  double duration = 5.0;
  double frame_rate = 12.5;
  std::uint64_t seed = 1;
  // Fraction of frames in which the tracker output is suppressed.
  double tracker_dropout_fraction = 0.0;
  GridGeometry grid;
  MotionSpec ego;
  std::vector<ObjectSpec> objects;
  SensorConfig lidar = DefaultLidarConfig();
  SensorConfig radar = DefaultRadarConfig();

  int FrameCount() const;
  double FrameTime(int frame) const { return frame / frame_rate; }
  // Throws Error(kInvalidArgument) naming the offending field.
  void Validate() const;
};

struct ObjectState {
  std::string id;
  OrientedBox box;
  double speed = 0.0;
  double yaw_rate = 0.0;
  bool evaluate = true;
};

struct SceneState {
  double timestamp = 0.0;
  Pose2D ego;
  std::vector<ObjectState> objects;
};

SceneState SceneAt(const Scenario& scenario, double t);

// Sensor pose in world coordinates for the given ego pose.
Pose2D MountedPose(const Pose2D& ego, const Pose2D& mount);

// True when the tracker output of this frame is suppressed. Dropped frames
// are spread evenly: frame k is dropped iff floor((k + 1) f) > floor(k f).
bool IsTrackerDropoutFrame(double fraction, int frame);

}  // namespace gridfusion

#endif  // GRIDFUSION_SIM_SCENARIO_H_
