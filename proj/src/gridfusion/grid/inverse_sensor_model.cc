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

#include "gridfusion/grid/inverse_sensor_model.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gridfusion {
namespace {

// Clips start->end to the axis-aligned map rectangle. Returns false when the
// segment misses the map entirely.
bool ClipToMap(const GridGeometry& geometry, Vec2& start, Vec2& end) {
  const Vec2 lo = geometry.origin;
  const Vec2 hi = geometry.origin + geometry.Extent();
  const Vec2 d = end - start;
  double t0 = 0.0;
  double t1 = 1.0;
  for (int k = 0; k < 2; ++k) {
    if (std::abs(d[k]) < 1e-15) {
      if (start[k] < lo[k] || start[k] > hi[k]) return false;
      continue;
    }
    double ta = (lo[k] - start[k]) / d[k];
    double tb = (hi[k] - start[k]) / d[k];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  const Vec2 s = start;
  start = s + t0 * d;
  end = s + t1 * d;
  return true;
}

}  // namespace

std::vector<CellIndex> TraverseCells(const GridGeometry& geometry,
                                     const Vec2& start, const Vec2& end) {
  std::vector<CellIndex> out;
  Vec2 a = start;
  Vec2 b = end;
  if (!ClipToMap(geometry, a, b)) return out;

  const Vec2 p0 = (a - geometry.origin) / geometry.cell_size;
  const Vec2 p1 = (b - geometry.origin) / geometry.cell_size;
  auto clamp_col = [&](double v) {
    return std::clamp(static_cast<int>(std::floor(v)), 0, geometry.width_cells - 1);
  };
  auto clamp_row = [&](double v) {
    return std::clamp(static_cast<int>(std::floor(v)), 0, geometry.height_cells - 1);
  };
  int col = clamp_col(p0.x());
  int row = clamp_row(p0.y());
  const int end_col = clamp_col(p1.x());
  const int end_row = clamp_row(p1.y());

  const Vec2 d = p1 - p0;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const int step_col = d.x() > 0 ? 1 : -1;
  const int step_row = d.y() > 0 ? 1 : -1;
  double t_max_col = kInf;
  double t_max_row = kInf;
  double t_delta_col = kInf;
  double t_delta_row = kInf;
  if (d.x() != 0.0) {
    const double boundary = step_col > 0 ? col + 1 : col;
    t_max_col = (boundary - p0.x()) / d.x();
    t_delta_col = std::abs(1.0 / d.x());
  }
  if (d.y() != 0.0) {
    const double boundary = step_row > 0 ? row + 1 : row;
    t_max_row = (boundary - p0.y()) / d.y();
    t_delta_row = std::abs(1.0 / d.y());
  }

  const int max_steps = std::abs(end_col - col) + std::abs(end_row - row) + 1;
  out.reserve(max_steps);
  for (int i = 0; i < max_steps; ++i) {
    out.push_back({row, col});
    if (row == end_row && col == end_col) break;
    if (t_max_col < t_max_row) {
      col += step_col;
      t_max_col += t_delta_col;
    } else {
      row += step_row;
      t_max_row += t_delta_row;
    }
    if (!geometry.Contains({row, col})) break;
  }
  return out;
}

MeasurementGrid InverseSensorModel(const LaserScan& scan,
                                   const GridGeometry& geometry,
                                   const InverseSensorModelConfig& config) {
  geometry.Validate();
  MeasurementGrid meas(geometry);
  meas.timestamp = scan.timestamp;
  const float occ = static_cast<float>(config.occupied_evidence);
  const float fre = static_cast<float>(config.free_evidence);
  const Vec2 origin = scan.sensor_pose.position;

  std::vector<std::size_t> hits;
  for (std::size_t i = 0; i < scan.ranges.size(); ++i) {
    const double range = scan.ranges[i];
    if (!std::isfinite(range) || range < 0.0) {
      ++meas.skipped_rays;
      continue;
    }
    const bool hit = range < scan.max_range;
    const double bearing = scan.Bearing(i);
    const Vec2 end = origin + std::min(range, scan.max_range) *
                                  Vec2(std::cos(bearing), std::sin(bearing));
    const std::vector<CellIndex> cells = TraverseCells(geometry, origin, end);
    std::optional<CellIndex> hit_cell;
    if (hit) hit_cell = geometry.CellAt(end);
    for (const CellIndex& c : cells) {
      if (hit_cell && c == *hit_cell) {
        hits.push_back(geometry.Flat(c));
        break;
      }
      MeasurementCell& m = meas.cells[geometry.Flat(c)];
      m.free = std::max(m.free, fre);
    }
  }
  for (const std::size_t idx : hits) {
    meas.cells[idx].occupied = std::max(meas.cells[idx].occupied, occ);
    meas.cells[idx].free = 0.0f;
  }
  return meas;
}

}  // namespace gridfusion
