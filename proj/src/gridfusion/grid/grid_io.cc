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

#include "gridfusion/grid/grid_io.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "gridfusion/common/error.h"

namespace gridfusion {
namespace {

constexpr char kMagic[8] = {'G', 'F', 'G', 'R', 'I', 'D', '\0', '\1'};

static_assert(std::endian::native == std::endian::little,
              "snapshot writer assumes a little-endian host");

template <typename T>
void Put(std::ostream& out, T value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T Get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) throw Error(ErrorCode::kParse, "truncated grid snapshot");
  return value;
}

}  // namespace

void WriteGridSnapshot(const GridMap& grid, std::ostream& out) {
  const GridGeometry& g = grid.geometry;
  out.write(kMagic, sizeof(kMagic));
  Put<std::int32_t>(out, g.width_cells);
  Put<std::int32_t>(out, g.height_cells);
  Put<double>(out, g.cell_size);
  Put<double>(out, g.origin.x());
  Put<double>(out, g.origin.y());
  Put<double>(out, grid.timestamp);
  for (const GridCell& c : grid.cells) {
    Put<float>(out, static_cast<float>(c.occupancy));
    Put<float>(out, static_cast<float>(c.vel_mean.x()));
    Put<float>(out, static_cast<float>(c.vel_mean.y()));
    Put<float>(out, static_cast<float>(c.vel_cov(0, 0)));
    Put<float>(out, static_cast<float>(c.vel_cov(0, 1)));
    Put<float>(out, static_cast<float>(c.vel_cov(1, 1)));
  }
  if (!out) throw Error(ErrorCode::kIo, "failed to write grid snapshot");
}

GridMap ReadGridSnapshot(std::istream& in) {
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw Error(ErrorCode::kParse, "not a grid snapshot (bad magic)");
  }
  GridGeometry g;
  g.width_cells = Get<std::int32_t>(in);
  g.height_cells = Get<std::int32_t>(in);
  g.cell_size = Get<double>(in);
  g.origin.x() = Get<double>(in);
  g.origin.y() = Get<double>(in);
  g.Validate();
  GridMap grid(g, 0.0);
  grid.timestamp = Get<double>(in);
  for (GridCell& c : grid.cells) {
    c.occupancy = Get<float>(in);
    c.vel_mean.x() = Get<float>(in);
    c.vel_mean.y() = Get<float>(in);
    c.vel_cov(0, 0) = Get<float>(in);
    c.vel_cov(0, 1) = c.vel_cov(1, 0) = Get<float>(in);
    c.vel_cov(1, 1) = Get<float>(in);
    c.particle_count = 0;
  }
  return grid;
}

void WriteGridSnapshotFile(const GridMap& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path);
  WriteGridSnapshot(grid, out);
}

GridMap ReadGridSnapshotFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return ReadGridSnapshot(in);
}

void WriteOccupancyPgm(const GridMap& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path);
  const GridGeometry& g = grid.geometry;
  out << "P5\n" << g.width_cells << " " << g.height_cells << "\n255\n";
  for (int row = g.height_cells - 1; row >= 0; --row) {
    for (int col = 0; col < g.width_cells; ++col) {
      const double occ = std::clamp(grid.at({row, col}).occupancy, 0.0, 1.0);
      out.put(static_cast<char>(
          static_cast<unsigned char>(std::lround(255.0 * (1.0 - occ)))));
    }
  }
  if (!out) throw Error(ErrorCode::kIo, "failed to write " + path);
}

}  // namespace gridfusion
