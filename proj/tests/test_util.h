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

#ifndef GRIDFUSION_TESTS_TEST_UTIL_H_
#define GRIDFUSION_TESTS_TEST_UTIL_H_

#include <cmath>
#include <set>
#include <vector>

#include "gridfusion/grid/grid_map.h"

namespace gridfusion::testing {

inline GridGeometry Geometry(int width, int height, double cell_size = 0.15,
                             Vec2 origin = Vec2::Zero()) {
  GridGeometry g;
  g.width_cells = width;
  g.height_cells = height;
  g.cell_size = cell_size;
  g.origin = origin;
  return g;
}

// Cell that ClassifyDynamic accepts under the default thresholds.
inline void MakeDynamic(GridMap& grid, const CellIndex& c, const Vec2& velocity,
                        double occupancy = 0.9) {
  GridCell& cell = grid.at(c);
  cell.occupancy = occupancy;
  cell.vel_mean = velocity;
  cell.vel_cov = 0.01 * Mat2::Identity();
  cell.particle_count = 10;
}

// Occupied but not moving.
inline void MakeStatic(GridMap& grid, const CellIndex& c, double occupancy = 0.9) {
  GridCell& cell = grid.at(c);
  cell.occupancy = occupancy;
  cell.vel_mean = Vec2::Zero();
  cell.vel_cov = 0.01 * Mat2::Identity();
  cell.particle_count = 10;
}

// Point-in-oriented-rectangle written from scratch: project onto the box
// axes and compare against the inflated half extents.
inline bool InsideRect(const Vec2& p, const Vec2& center, double theta, double length,
                       double width, double margin) {
  const Vec2 d = p - center;
  const double along = d.x() * std::cos(theta) + d.y() * std::sin(theta);
  const double across = -d.x() * std::sin(theta) + d.y() * std::cos(theta);
  return std::abs(along) <= 0.5 * length + margin && std::abs(across) <= 0.5 * width + margin;
}

inline std::set<CellIndex> BruteForceFootprint(const GridGeometry& g, const Vec2& center,
                                               double theta, double length, double width,
                                               double margin) {
  std::set<CellIndex> out;
  for (int r = 0; r < g.height_cells; ++r) {
    for (int c = 0; c < g.width_cells; ++c) {
      const Vec2 p = g.origin + Vec2((c + 0.5) * g.cell_size, (r + 0.5) * g.cell_size);
      if (InsideRect(p, center, theta, length, width, margin)) out.insert({r, c});
    }
  }
  return out;
}

}  // namespace gridfusion::testing

#endif  // GRIDFUSION_TESTS_TEST_UTIL_H_
