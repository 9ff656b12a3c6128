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

#ifndef GRIDFUSION_GRID_INVERSE_SENSOR_MODEL_H_
#define GRIDFUSION_GRID_INVERSE_SENSOR_MODEL_H_

#include <vector>

#include "gridfusion/common/geometry.h"
#include "gridfusion/grid/grid_map.h"

namespace gridfusion {

// A planar scan. Bearing of ray i is sensor heading + angle_min +
// i * angle_increment. A range >= max_range means "no return"; a non-finite
// range carries no information at all.
struct LaserScan {
  Pose2D sensor_pose;
  double angle_min = 0.0;
  double angle_increment = 0.0;
  double max_range = 0.0;
  std::vector<double> ranges;
  double timestamp = 0.0;

  double Bearing(std::size_t i) const {
    return sensor_pose.heading + angle_min + static_cast<double>(i) * angle_increment;
  }
};

struct InverseSensorModelConfig {
  double occupied_evidence = 0.8;
  double free_evidence = 0.7;
};

// Rasterizes every ray with a voxel walk. Cells before a hit get free
// evidence, the hit cell gets occupied evidence, cells past the hit are left
// alone. Occupied evidence wins where rays disagree.
MeasurementGrid InverseSensorModel(const LaserScan& scan,
                                   const GridGeometry& geometry,
                                   const InverseSensorModelConfig& config = {});

// Cells visited by the segment start->end in traversal order (clipped to the
// grid). Exposed for tests and the dump tools.
std::vector<CellIndex> TraverseCells(const GridGeometry& geometry,
                                     const Vec2& start, const Vec2& end);

}  // namespace gridfusion

#endif  // GRIDFUSION_GRID_INVERSE_SENSOR_MODEL_H_
