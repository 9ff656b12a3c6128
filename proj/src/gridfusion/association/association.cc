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

#include "gridfusion/association/association.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <unordered_set>

namespace gridfusion {

std::vector<CellIndex> CellsUnderFootprint(const GridMap& grid,
                                           const OrientedBox& box,
                                           double margin) {
  const GridGeometry& geo = grid.geometry;
  OrientedBox inflated = box;
  inflated.length += 2.0 * margin;
  inflated.width += 2.0 * margin;
  Vec2 lo = Vec2::Constant(std::numeric_limits<double>::infinity());
  Vec2 hi = -lo;
  for (const Vec2& c : inflated.Corners()) {
    lo = lo.cwiseMin(c);
    hi = hi.cwiseMax(c);
  }
  // Conservative index window around the axis-aligned hull of the corners.
  const Vec2 a = (lo - geo.origin) / geo.cell_size;
  const Vec2 b = (hi - geo.origin) / geo.cell_size;
  const int col_lo = std::max(0, static_cast<int>(std::floor(a.x())) - 1);
  const int row_lo = std::max(0, static_cast<int>(std::floor(a.y())) - 1);
  const int col_hi = std::min(geo.width_cells - 1, static_cast<int>(std::ceil(b.x())) + 1);
  const int row_hi = std::min(geo.height_cells - 1, static_cast<int>(std::ceil(b.y())) + 1);

  std::vector<CellIndex> out;
  for (int row = row_lo; row <= row_hi; ++row) {
    for (int col = col_lo; col <= col_hi; ++col) {
      const CellIndex idx{row, col};
      if (box.Contains(geo.CellCenter(idx), margin)) out.push_back(idx);
    }
  }
  return out;
}

std::vector<CellIndex> GrowDynamicRegion(const GridMap& grid,
                                         std::span<const CellIndex> seeds,
                                         const DynamicCellConfig& config) {
  const GridGeometry& geo = grid.geometry;
  std::unordered_set<std::size_t> visited;
  std::vector<CellIndex> region;
  std::deque<CellIndex> frontier;
  for (const CellIndex& seed : seeds) {
    if (!geo.Contains(seed)) continue;
    const std::size_t flat = geo.Flat(seed);
    if (visited.count(flat) || !ClassifyDynamic(grid.at(seed), config)) continue;
    visited.insert(flat);
    frontier.push_back(seed);
    while (!frontier.empty()) {
      const CellIndex c = frontier.front();
      frontier.pop_front();
      region.push_back(c);
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          const CellIndex n{c.row + dr, c.col + dc};
          if (!geo.Contains(n)) continue;
          const std::size_t nf = geo.Flat(n);
          if (visited.count(nf)) continue;
          if (!ClassifyDynamic(grid.at(n), config)) continue;
          visited.insert(nf);
          frontier.push_back(n);
        }
      }
    }
  }
  std::sort(region.begin(), region.end());
  return region;
}

AxisBounds CellBoundsInFrame(std::span<const Vec2> cell_centers,
                             double cell_size, const OrientedBox& frame) {
  AxisBounds bounds;
  if (cell_centers.empty()) return bounds;
  bounds.min = Vec2::Constant(std::numeric_limits<double>::infinity());
  bounds.max = -bounds.min;
  const double h = 0.5 * cell_size;
  const Vec2 offsets[4] = {{-h, -h}, {h, -h}, {h, h}, {-h, h}};
  for (const Vec2& c : cell_centers) {
    for (const Vec2& o : offsets) {
      const Vec2 p = frame.ToLocal(c + o);
      bounds.min = bounds.min.cwiseMin(p);
      bounds.max = bounds.max.cwiseMax(p);
    }
  }
  return bounds;
}

CellGroup MakeCellGroup(const GridMap& grid, std::vector<CellIndex> cells,
                        const OrientedBox& reference, bool occupancy_weighted) {
  CellGroup group;
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  group.cell_indices = std::move(cells);
  group.cell_size = grid.geometry.cell_size;
  group.count = static_cast<int>(group.cell_indices.size());
  if (group.count == 0) return group;

  double w_sum = 0.0;
  Vec2 vel = Vec2::Zero();
  Mat2 cov = Mat2::Zero();
  Vec2 centroid = Vec2::Zero();
  group.cell_centers.reserve(group.cell_indices.size());
  for (const CellIndex& idx : group.cell_indices) {
    const GridCell& cell = grid.at(idx);
    const Vec2 center = grid.geometry.CellCenter(idx);
    group.cell_centers.push_back(center);
    const double w = occupancy_weighted ? cell.occupancy : 1.0;
    w_sum += w;
    vel += w * cell.vel_mean;
    cov += w * cell.vel_cov;
    centroid += center;
  }
  group.mean_velocity = w_sum > 0.0 ? Vec2(vel / w_sum) : Vec2::Zero();
  if (w_sum > 0.0) {
    // Mixture covariance: within-cell spread plus spread of the cell means.
    for (const CellIndex& idx : group.cell_indices) {
      const GridCell& cell = grid.at(idx);
      const double w = occupancy_weighted ? cell.occupancy : 1.0;
      const Vec2 d = cell.vel_mean - group.mean_velocity;
      cov += w * d * d.transpose();
    }
    group.velocity_cov = cov / w_sum;
  }
  group.centroid = centroid / group.count;
  group.bbox_in_box_frame =
      CellBoundsInFrame(group.cell_centers, group.cell_size, reference);
  return group;
}

namespace {

std::vector<CellIndex> SearchRegion(const GridMap& grid, const OrientedBox& box,
                                    const AssociationConfig& config) {
  std::vector<CellIndex> seeds;
  for (const CellIndex& idx : CellsUnderFootprint(grid, box, config.vicinity_margin)) {
    if (ClassifyDynamic(grid.at(idx), config.dynamic)) seeds.push_back(idx);
  }
  if (seeds.empty()) return {};
  return GrowDynamicRegion(grid, seeds, config.dynamic);
}

}  // namespace

CellGroup Associate(const GridMap& grid, const BoxHypothesis& hypothesis,
                    const AssociationConfig& config) {
  const OrientedBox box = hypothesis.Box();
  std::vector<CellIndex> cells = SearchRegion(grid, box, config);
  bool fallback = false;
  if (cells.empty()) {
    OrientedBox enlarged = box;
    enlarged.length *= config.fallback_scale;
    if (config.fallback_scales_width) enlarged.width *= config.fallback_scale;
    cells = SearchRegion(grid, enlarged, config);
    fallback = true;
  }
  CellGroup group = MakeCellGroup(grid, std::move(cells), box,
                                  config.occupancy_weighted_velocity);
  group.from_fallback = fallback && !group.empty();
  return group;
}

}  // namespace gridfusion
