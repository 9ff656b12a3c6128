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

#ifndef GRIDFUSION_GRID_GRID_IO_H_
#define GRIDFUSION_GRID_GRID_IO_H_

#include <iosfwd>
#include <string>

#include "gridfusion/grid/grid_map.h"

namespace gridfusion {

// Binary snapshot, little-endian:
//   char[8]  magic "GFGRID\0\1"
//   int32    width_cells, height_cells
//   float64  cell_size, origin_x, origin_y, timestamp
//   then width*height records in row-major order (row = y index):
//   float32  occupancy, vel_x, vel_y, cov_xx, cov_xy, cov_yy
// particle_count is not stored; a loaded map reports 0 for every cell.
void WriteGridSnapshot(const GridMap& grid, std::ostream& out);
GridMap ReadGridSnapshot(std::istream& in);

void WriteGridSnapshotFile(const GridMap& grid, const std::string& path);
GridMap ReadGridSnapshotFile(const std::string& path);

// Binary PGM (P5), one pixel per cell, intensity = round(255 * (1 - occ)) so
// occupied cells are dark. Row 0 of the image is the top (max y) of the map.
void WriteOccupancyPgm(const GridMap& grid, const std::string& path);

}  // namespace gridfusion

#endif  // GRIDFUSION_GRID_GRID_IO_H_
