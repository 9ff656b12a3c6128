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

#include "gridfusion/grid/grid_map.h"

#include <cmath>
#include <sstream>

#include "gridfusion/common/error.h"

namespace gridfusion {

std::optional<CellIndex> GridGeometry::CellAt(const Vec2& p) const {
  const Vec2 rel = (p - origin) / cell_size;
  if (!std::isfinite(rel.x()) || !std::isfinite(rel.y())) return std::nullopt;
  const CellIndex c{static_cast<int>(std::floor(rel.y())),
                    static_cast<int>(std::floor(rel.x()))};
  if (!Contains(c)) return std::nullopt;
  return c;
}

bool GridGeometry::operator==(const GridGeometry& other) const {
  return width_cells == other.width_cells &&
         height_cells == other.height_cells &&
         cell_size == other.cell_size && origin == other.origin;
}

void GridGeometry::Validate() const {
  if (width_cells <= 0 || height_cells <= 0 || !(cell_size > 0.0) ||
      !std::isfinite(cell_size) || !origin.allFinite()) {
    std::ostringstream msg;
    msg << "invalid grid geometry: " << width_cells << "x" << height_cells
        << " cells of " << cell_size << " m";
    throw Error(ErrorCode::kInvalidArgument, msg.str());
  }
}

GridMap::GridMap(const GridGeometry& geometry, double occupancy_prior,
                 const Mat2& empty_cov)
    : geometry(geometry) {
  geometry.Validate();
  GridCell empty;
  empty.occupancy = occupancy_prior;
  empty.vel_cov = empty_cov;
  cells.assign(geometry.CellCount(), empty);
}

}  // namespace gridfusion
