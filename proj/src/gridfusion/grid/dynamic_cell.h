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

#ifndef GRIDFUSION_GRID_DYNAMIC_CELL_H_
#define GRIDFUSION_GRID_DYNAMIC_CELL_H_

#include "gridfusion/grid/grid_map.h"

namespace gridfusion {

struct DynamicCellConfig {
  double occupancy_threshold = 0.7;
  double mahalanobis_threshold = 2.0;
  // Added to the velocity covariance diagonal before inversion, (m/s)^2.
  double covariance_epsilon = 1e-4;
};

// sqrt(v^T (S + eps I)^-1 v) between the cell velocity and zero velocity.
// Throws Error(kInvalidArgument) on non-finite input.
double MahalanobisToStatic(const GridCell& cell, double covariance_epsilon = 1e-4);

bool ClassifyDynamic(const GridCell& cell, const DynamicCellConfig& config);

}  // namespace gridfusion

#endif  // GRIDFUSION_GRID_DYNAMIC_CELL_H_
