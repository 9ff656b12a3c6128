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

#ifndef GRIDFUSION_SIM_SENSORS_H_
#define GRIDFUSION_SIM_SENSORS_H_

#include <cstdint>
#include <vector>

#include "gridfusion/grid/inverse_sensor_model.h"
#include "gridfusion/sim/scenario.h"
#include "gridfusion/tracker/box_hypothesis.h"

namespace gridfusion {

// Number of rays across the field of view, end points included.
int LidarRayCount(const SensorConfig& config);

// Ray casting against every object rectangle. Rays without a hit report
// max_range, dropped returns are NaN.
LaserScan SimulateLidar(const SceneState& scene, const SensorConfig& config,
                        std::uint64_t seed);

// At most one detection per visible object: the rectangle point nearest to
// the sensor plus noise.
std::vector<Detection> SimulateRadar(const SceneState& scene, const SensorConfig& config,
                                     std::uint64_t seed);

// True if some point of `target` can be seen from `origin` without another
// object in between.
bool IsPartiallyVisible(const SceneState& scene, std::size_t target, const Vec2& origin);

// Splits the valid returns of a scan into clusters of consecutive points
// closer than max_gap to their predecessor.
std::vector<std::vector<Vec2>> ClusterScan(const LaserScan& scan, double max_gap);

// Deterministic per-purpose seed for one frame.
std::uint64_t FrameSeed(std::uint64_t seed, int frame, int stream);

}  // namespace gridfusion

#endif  // GRIDFUSION_SIM_SENSORS_H_
