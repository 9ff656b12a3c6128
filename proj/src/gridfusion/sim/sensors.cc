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

#include "gridfusion/sim/sensors.h"

#include <cmath>
#include <limits>
#include <random>

namespace gridfusion {

namespace {

double DegToRad(double deg) { return deg * kPi / 180.0; }

}  // namespace

std::uint64_t FrameSeed(std::uint64_t seed, int frame, int stream) {
  // splitmix64 over the packed inputs.
  std::uint64_t z = seed ^ (static_cast<std::uint64_t>(frame) << 8) ^
                    (static_cast<std::uint64_t>(stream) * 0x9E3779B97F4A7C15ULL);
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

int LidarRayCount(const SensorConfig& config) {
  return static_cast<int>(std::lround(config.fov_deg / config.resolution_deg)) + 1;
}

LaserScan SimulateLidar(const SceneState& scene, const SensorConfig& config,
                        std::uint64_t seed) {
  LaserScan scan;
  scan.sensor_pose = MountedPose(scene.ego, config.mount);
  scan.angle_min = -0.5 * DegToRad(config.fov_deg);
  scan.angle_increment = DegToRad(config.resolution_deg);
  scan.max_range = config.max_range;
  scan.timestamp = scene.timestamp;
  const int n = LidarRayCount(config);
  scan.ranges.assign(n, config.max_range);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Vec2 origin = scan.sensor_pose.position;
  for (int i = 0; i < n; ++i) {
    // Both draws happen for every ray so the random stream does not depend
    // on which rays hit.
    const double eps = noise(rng);
    const double drop = unit(rng);
    const double bearing = scan.Bearing(i);
    const Vec2 dir(std::cos(bearing), std::sin(bearing));
    double best = std::numeric_limits<double>::infinity();
    for (const ObjectState& o : scene.objects) {
      const auto t = RayBoxIntersection(origin, dir, o.box);
      if (t && *t < best) best = *t;
    }
    if (!(best <= config.max_range)) continue;
    if (drop < config.dropout) {
      scan.ranges[i] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    double r = best + config.noise_sigma * eps;
    if (r < 0.0) r = 0.0;
    if (r >= config.max_range) r = std::nextafter(config.max_range, 0.0);
    scan.ranges[i] = r;
  }
  return scan;
}

bool IsPartiallyVisible(const SceneState& scene, std::size_t target, const Vec2& origin) {
  const OrientedBox& box = scene.objects[target].box;
  if (box.Contains(origin)) return true;
  std::vector<Vec2> samples;
  const auto corners = box.Corners();
  for (int i = 0; i < 4; ++i) {
    samples.push_back(corners[i]);
    samples.push_back(0.5 * (corners[i] + corners[(i + 1) % 4]));
  }
  samples.push_back(box.ClosestPoint(origin));
  for (const Vec2& p : samples) {
    bool blocked = false;
    for (std::size_t j = 0; j < scene.objects.size() && !blocked; ++j) {
      if (j == target) continue;
      blocked = SegmentIntersectsBox(origin, p, scene.objects[j].box);
    }
    if (!blocked) return true;
  }
  return false;
}

std::vector<Detection> SimulateRadar(const SceneState& scene, const SensorConfig& config,
                                     std::uint64_t seed) {
  std::vector<Detection> out;
  const Pose2D pose = MountedPose(scene.ego, config.mount);
  const double half_fov = 0.5 * DegToRad(config.fov_deg);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < scene.objects.size(); ++i) {
    const double ex = noise(rng);
    const double ey = noise(rng);
    const double drop = unit(rng);
    const OrientedBox& box = scene.objects[i].box;
    const Vec2 rel = box.center - pose.position;
    if (rel.norm() > config.max_range) continue;
    if (std::abs(AngleDiff(std::atan2(rel.y(), rel.x()), pose.heading)) > half_fov) continue;
    if (!IsPartiallyVisible(scene, i, pose.position)) continue;
    if (drop < config.dropout) continue;
    Detection d;
    d.position = box.ClosestPoint(pose.position) +
                 config.noise_sigma * Vec2(ex, ey);
    const Vec2 drel = d.position - pose.position;
    if (drel.norm() > config.max_range) continue;
    if (std::abs(AngleDiff(std::atan2(drel.y(), drel.x()), pose.heading)) > half_fov) {
      continue;
    }
    d.source = DetectionSource::kRadar;
    d.timestamp = scene.timestamp;
    out.push_back(d);
  }
  return out;
}

std::vector<std::vector<Vec2>> ClusterScan(const LaserScan& scan, double max_gap) {
  std::vector<std::vector<Vec2>> clusters;
  const Vec2 origin = scan.sensor_pose.position;
  bool open = false;
  for (std::size_t i = 0; i < scan.ranges.size(); ++i) {
    const double r = scan.ranges[i];
    if (!std::isfinite(r) || r >= scan.max_range) {
      open = false;
      continue;
    }
    const double b = scan.Bearing(i);
    const Vec2 p = origin + r * Vec2(std::cos(b), std::sin(b));
    if (open && (p - clusters.back().back()).norm() < max_gap) {
      clusters.back().push_back(p);
    } else {
      clusters.push_back({p});
      open = true;
    }
  }
  return clusters;
}

}  // namespace gridfusion
