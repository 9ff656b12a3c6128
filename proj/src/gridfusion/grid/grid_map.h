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

#ifndef GRIDFUSION_GRID_GRID_MAP_H_
#define GRIDFUSION_GRID_GRID_MAP_H_

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

#include "gridfusion/common/geometry.h"

namespace gridfusion {

struct CellIndex {
  int row = 0;
  int col = 0;

  auto operator<=>(const CellIndex&) const = default;
};

// Cell (row, col) covers [origin + (col, row) * cell_size, +cell_size) in
// ego-stationary coordinates; rows run along y, columns along x.
struct GridGeometry {
  int width_cells = 0;
  int height_cells = 0;
  double cell_size = 0.15;
  Vec2 origin = Vec2::Zero();

  std::size_t CellCount() const {
    return static_cast<std::size_t>(width_cells) *
           static_cast<std::size_t>(height_cells);
  }
  bool Contains(const CellIndex& c) const {
    return c.row >= 0 && c.row < height_cells && c.col >= 0 &&
           c.col < width_cells;
  }
  std::size_t Flat(const CellIndex& c) const {
    return static_cast<std::size_t>(c.row) * width_cells + c.col;
  }
  CellIndex Unflat(std::size_t i) const {
    return {static_cast<int>(i / width_cells),
            static_cast<int>(i % width_cells)};
  }
  Vec2 CellCenter(const CellIndex& c) const {
    return origin + Vec2((c.col + 0.5) * cell_size, (c.row + 0.5) * cell_size);
  }
  // Cell containing the point; nullopt outside the map.
  std::optional<CellIndex> CellAt(const Vec2& p) const;
  Vec2 Extent() const {
    return {width_cells * cell_size, height_cells * cell_size};
  }

  bool operator==(const GridGeometry& other) const;
  // Throws Error(kInvalidArgument) when the geometry is unusable.
  void Validate() const;
};

struct GridCell {
  double occupancy = 0.0;
  Vec2 vel_mean = Vec2::Zero();
  Mat2 vel_cov = Mat2::Identity();
  int particle_count = 0;
};

struct GridMap {
  GridGeometry geometry;
  std::vector<GridCell> cells;
  double timestamp = 0.0;

  GridMap() = default;
  // All cells set to the given prior with the given velocity covariance.
  GridMap(const GridGeometry& geometry, double occupancy_prior,
          const Mat2& empty_cov = Mat2::Identity());

  const GridCell& at(const CellIndex& c) const {
    return cells[geometry.Flat(c)];
  }
  GridCell& at(const CellIndex& c) { return cells[geometry.Flat(c)]; }
};

struct MeasurementCell {
  float occupied = 0.0f;
  float free = 0.0f;
};

struct MeasurementGrid {
  GridGeometry geometry;
  std::vector<MeasurementCell> cells;
  double timestamp = 0.0;
  // Rays skipped because their range was not finite.
  int skipped_rays = 0;

  MeasurementGrid() = default;
  explicit MeasurementGrid(const GridGeometry& geometry)
      : geometry(geometry), cells(geometry.CellCount()) {}

  const MeasurementCell& at(const CellIndex& c) const {
    return cells[geometry.Flat(c)];
  }
};

}  // namespace gridfusion

#endif  // GRIDFUSION_GRID_GRID_MAP_H_
