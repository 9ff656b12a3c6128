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

#ifndef GRIDFUSION_ASSOCIATION_ASSOCIATION_H_
#define GRIDFUSION_ASSOCIATION_ASSOCIATION_H_

#include <span>
#include <vector>

#include "gridfusion/grid/dynamic_cell.h"
#include "gridfusion/grid/grid_map.h"
#include "gridfusion/tracker/box_hypothesis.h"

namespace gridfusion {

struct AssociationConfig {
  DynamicCellConfig dynamic;
  // "Immediate vicinity" around the footprint, meters.
  double vicinity_margin = 0.15;
  // Enlargement of the fallback search when the footprint finds nothing.
  double fallback_scale = 1.5;
  bool fallback_scales_width = true;
  // Occupancy-weighted mean velocity; plain mean otherwise.
  bool occupancy_weighted_velocity = true;
};

// Extremes of the member cells (cell extent, not just centers) along the axes
// of a reference box, relative to the box center.
struct AxisBounds {
  Vec2 min = Vec2::Zero();
  Vec2 max = Vec2::Zero();
};

struct CellGroup {
  std::vector<CellIndex> cell_indices;  // sorted, unique
  std::vector<Vec2> cell_centers;       // parallel to cell_indices
  double cell_size = 0.0;
  Vec2 mean_velocity = Vec2::Zero();
  // Covariance of the weighted mixture of the member cells' velocity
  // distributions.
  Mat2 velocity_cov = Mat2::Zero();
  Vec2 centroid = Vec2::Zero();
  int count = 0;
  AxisBounds bbox_in_box_frame;
  // True when the enlarged fallback search produced the group.
  bool from_fallback = false;

  bool empty() const { return count == 0; }
};

// Cells whose centers lie inside the box inflated by margin on every side.
// Sorted by (row, col).
std::vector<CellIndex> CellsUnderFootprint(const GridMap& grid,
                                           const OrientedBox& box,
                                           double margin);

// Union of the 8-connected dynamic components containing the dynamic seeds.
// Sorted by (row, col).
std::vector<CellIndex> GrowDynamicRegion(const GridMap& grid,
                                         std::span<const CellIndex> seeds,
                                         const DynamicCellConfig& config);

// Bounds of the cells along the axes of `frame`, each cell counted with its
// full square extent.
AxisBounds CellBoundsInFrame(std::span<const Vec2> cell_centers,
                             double cell_size, const OrientedBox& frame);

CellGroup MakeCellGroup(const GridMap& grid, std::vector<CellIndex> cells,
                        const OrientedBox& reference,
                        bool occupancy_weighted = true);

// Footprint + vicinity search, then the enlarged fallback if that is empty.
CellGroup Associate(const GridMap& grid, const BoxHypothesis& hypothesis,
                    const AssociationConfig& config = {});

}  // namespace gridfusion

#endif  // GRIDFUSION_ASSOCIATION_ASSOCIATION_H_
