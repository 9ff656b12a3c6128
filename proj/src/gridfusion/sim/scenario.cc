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

#include "gridfusion/sim/scenario.h"

#include <cmath>

#include "gridfusion/common/error.h"

namespace gridfusion {

namespace {

void Require(bool ok, const std::string& field, const std::string& what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, field + ": " + what);
}

void ValidateMotion(const MotionSpec& motion, const std::string& field) {
  Require(motion.initial.position.allFinite() && std::isfinite(motion.initial.heading),
          field + ".pose", "must be finite");
  Require(!motion.controls.empty(), field + ".controls", "at least one segment required");
  Require(motion.controls.front().start_time <= 0.0, field + ".controls[0].t",
          "first segment must start at t <= 0");
  for (std::size_t i = 0; i < motion.controls.size(); ++i) {
    const ControlSegment& s = motion.controls[i];
    const std::string name = field + ".controls[" + std::to_string(i) + "]";
    Require(std::isfinite(s.start_time) && std::isfinite(s.speed) &&
                std::isfinite(s.yaw_rate),
            name, "must be finite");
    if (i > 0) {
      Require(s.start_time > motion.controls[i - 1].start_time, name + ".t",
              "segment start times must increase");
    }
  }
}

void Advance(Pose2D& pose, double speed, double yaw_rate, double dt) {
  const double th = pose.heading;
  if (std::abs(yaw_rate) < 1e-9) {
    pose.position += speed * dt * Vec2(std::cos(th), std::sin(th));
  } else {
    const double th1 = th + yaw_rate * dt;
    pose.position += (speed / yaw_rate) *
                     Vec2(std::sin(th1) - std::sin(th), std::cos(th) - std::cos(th1));
  }
  pose.heading = NormalizeAngle(th + yaw_rate * dt);
}

}  // namespace

void SensorConfig::Validate() const {
  const std::string name = kind == SensorKind::kLidar ? "sensors.lidar" : "sensors.radar";
  Require(fov_deg > 0.0 && fov_deg <= 360.0, name + ".fov", "must lie in (0, 360]");
  Require(max_range > 0.0, name + ".max_range", "must be positive");
  Require(noise_sigma >= 0.0, name + ".noise", "must be non-negative");
  Require(dropout >= 0.0 && dropout <= 1.0, name + ".dropout", "must lie in [0, 1]");
  if (kind == SensorKind::kLidar) {
    Require(resolution_deg > 0.0 && resolution_deg <= fov_deg, name + ".resolution",
            "must lie in (0, fov]");
  }
}

SensorConfig DefaultLidarConfig() {
  SensorConfig c;
  c.kind = SensorKind::kLidar;
  c.fov_deg = 85.0;
  c.resolution_deg = 0.25;
  c.max_range = 200.0;
  c.noise_sigma = 0.03;
  return c;
}

SensorConfig DefaultRadarConfig() {
  SensorConfig c;
  c.kind = SensorKind::kRadar;
  c.fov_deg = 30.0;
  c.resolution_deg = 0.0;
  c.max_range = 250.0;
  c.noise_sigma = 0.3;
  return c;
}

TrajectorySample SampleMotion(const MotionSpec& motion, double t) {
  TrajectorySample out;
  out.timestamp = t;
  out.pose = motion.initial;
  if (motion.controls.empty()) return out;
  double now = 0.0;
  for (std::size_t i = 0; i < motion.controls.size(); ++i) {
    const ControlSegment& s = motion.controls[i];
    const double end = i + 1 < motion.controls.size()
                           ? std::min(motion.controls[i + 1].start_time, t)
                           : t;
    if (end > now) {
      Advance(out.pose, s.speed, s.yaw_rate, end - now);
      now = end;
    }
    out.speed = s.speed;
    out.yaw_rate = s.yaw_rate;
    if (i + 1 < motion.controls.size() && motion.controls[i + 1].start_time > t) break;
  }
  return out;
}

int Scenario::FrameCount() const {
  return static_cast<int>(std::floor(duration * frame_rate + 1e-9)) + 1;
}

void Scenario::Validate() const {
  Require(!id.empty(), "id", "must not be empty");
  Require(duration > 0.0 && std::isfinite(duration), "duration", "must be positive");
  Require(frame_rate > 0.0 && std::isfinite(frame_rate), "frame_rate", "must be positive");
  Require(tracker_dropout_fraction >= 0.0 && tracker_dropout_fraction < 1.0,
          "tracker_dropout_fraction", "must lie in [0, 1)");
  try {
    grid.Validate();
  } catch (const Error& e) {
    Require(false, "grid", e.what());
  }
  ValidateMotion(ego, "ego");
  lidar.Validate();
  radar.Validate();
  Require(lidar.kind == SensorKind::kLidar, "sensors.lidar", "wrong sensor kind");
  Require(radar.kind == SensorKind::kRadar, "sensors.radar", "wrong sensor kind");
  for (std::size_t i = 0; i < objects.size(); ++i) {
    const ObjectSpec& o = objects[i];
    const std::string name = "objects[" + std::to_string(i) + "]";
    Require(!o.id.empty(), name + ".id", "must not be empty");
    Require(o.length > 0.0 && o.width > 0.0, name + ".extent", "must be positive");
    ValidateMotion(o.motion, name);
    for (std::size_t j = 0; j < i; ++j) {
      Require(objects[j].id != o.id, name + ".id", "duplicate id '" + o.id + "'");
    }
  }
}

SceneState SceneAt(const Scenario& scenario, double t) {
  SceneState scene;
  scene.timestamp = t;
  scene.ego = SampleMotion(scenario.ego, t).pose;
  scene.objects.reserve(scenario.objects.size());
  for (const ObjectSpec& spec : scenario.objects) {
    const TrajectorySample s = SampleMotion(spec.motion, t);
    ObjectState o;
    o.id = spec.id;
    o.box = {s.pose.position, s.pose.heading, spec.length, spec.width};
    o.speed = s.speed;
    o.yaw_rate = s.yaw_rate;
    o.evaluate = spec.evaluate;
    scene.objects.push_back(o);
  }
  return scene;
}

Pose2D MountedPose(const Pose2D& ego, const Pose2D& mount) {
  const double c = std::cos(ego.heading);
  const double s = std::sin(ego.heading);
  Pose2D out;
  out.position = ego.position + Vec2(c * mount.position.x() - s * mount.position.y(),
                                     s * mount.position.x() + c * mount.position.y());
  out.heading = NormalizeAngle(ego.heading + mount.heading);
  return out;
}

bool IsTrackerDropoutFrame(double fraction, int frame) {
  if (fraction <= 0.0) return false;
  return std::floor((frame + 1) * fraction) > std::floor(frame * fraction);
}

}  // namespace gridfusion
