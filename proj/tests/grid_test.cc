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

#include <cmath>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "Eigen/Dense"
#include "gridfusion/common/error.h"
#include "gridfusion/grid/dynamic_cell.h"
#include "gridfusion/grid/dynamic_grid.h"
#include "gridfusion/grid/grid_io.h"
#include "gridfusion/grid/inverse_sensor_model.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace gridfusion {
namespace {

using testing::Geometry;

LaserScan SingleRay(const Vec2& origin, double bearing, double range, double max_range) {
  LaserScan scan;
  scan.sensor_pose.position = origin;
  scan.angle_min = bearing;
  scan.angle_increment = 0.0;
  scan.max_range = max_range;
  scan.ranges = {range};
  return scan;
}

// Cells visited by dense sampling of the open segment; misses only cells
// that the segment grazes for less than the sampling step.
std::set<CellIndex> SampledRayCells(const GridGeometry& g, const Vec2& a, const Vec2& b) {
  std::set<CellIndex> out;
  const int n = 20000;
  for (int i = 0; i <= n; ++i) {
    const Vec2 p = a + (b - a) * (static_cast<double>(i) / n);
    const int c = static_cast<int>(std::floor((p.x() - g.origin.x()) / g.cell_size));
    const int r = static_cast<int>(std::floor((p.y() - g.origin.y()) / g.cell_size));
    if (r >= 0 && r < g.height_cells && c >= 0 && c < g.width_cells) out.insert({r, c});
  }
  return out;
}

TEST(InverseSensorModelTest, SingleRayHit) {
  const GridGeometry g = Geometry(60, 60, 0.15, Vec2(-0.5, -4.5));
  const Vec2 origin(0.02, 0.01);
  const double bearing = 0.31;
  const Vec2 hit = origin + 3.0 * Vec2(std::cos(bearing), std::sin(bearing));
  const MeasurementGrid m = InverseSensorModel(SingleRay(origin, bearing, 3.0, 200.0), g);

  const CellIndex hit_cell = *g.CellAt(hit);
  EXPECT_GT(m.at(hit_cell).occupied, 0.0f);
  std::set<CellIndex> expected_free = SampledRayCells(g, origin, hit);
  expected_free.erase(hit_cell);
  EXPECT_GE(expected_free.size(), 20u);
  std::set<CellIndex> free_cells, occupied_cells;
  for (std::size_t i = 0; i < m.cells.size(); ++i) {
    if (m.cells[i].free > 0.0f) free_cells.insert(g.Unflat(i));
    if (m.cells[i].occupied > 0.0f) occupied_cells.insert(g.Unflat(i));
    EXPECT_LE(m.cells[i].free + m.cells[i].occupied, 1.0f);
  }
  EXPECT_EQ(free_cells, expected_free);
  EXPECT_EQ(occupied_cells, std::set<CellIndex>{hit_cell});
}

TEST(InverseSensorModelTest, EmptyScanIsAllUnknown) {
  const GridGeometry g = Geometry(20, 20);
  LaserScan scan;
  scan.max_range = 10.0;
  const MeasurementGrid m = InverseSensorModel(scan, g);
  for (const MeasurementCell& c : m.cells) {
    EXPECT_EQ(c.occupied, 0.0f);
    EXPECT_EQ(c.free, 0.0f);
  }
}

TEST(InverseSensorModelTest, MaxRangeRayIsFreeOnly) {
  const GridGeometry g = Geometry(40, 40, 0.15, Vec2(-1.0, -3.0));
  const Vec2 origin(0.01, 0.02);
  const double bearing = -0.4;
  const double max_range = 4.0;
  const MeasurementGrid m =
      InverseSensorModel(SingleRay(origin, bearing, max_range, max_range), g);
  const Vec2 end = origin + max_range * Vec2(std::cos(bearing), std::sin(bearing));
  const std::set<CellIndex> expected = SampledRayCells(g, origin, end);
  std::set<CellIndex> free_cells;
  for (std::size_t i = 0; i < m.cells.size(); ++i) {
    EXPECT_EQ(m.cells[i].occupied, 0.0f);
    if (m.cells[i].free > 0.0f) free_cells.insert(g.Unflat(i));
  }
  EXPECT_EQ(free_cells, expected);
}

TEST(InverseSensorModelTest, NonFiniteRangesAreSkippedAndCounted) {
  const GridGeometry g = Geometry(20, 20);
  LaserScan scan = SingleRay(Vec2(0.1, 0.1), 0.5, 1.0, 10.0);
  scan.angle_increment = 0.1;
  scan.ranges = {std::numeric_limits<double>::quiet_NaN(), 1.0,
                 std::numeric_limits<double>::infinity()};
  const MeasurementGrid m = InverseSensorModel(scan, g);
  EXPECT_EQ(m.skipped_rays, 2);
}

TEST(InverseSensorModelTest, TraversalMatchesSampledOracleOnRandomRays) {
  const GridGeometry g = Geometry(64, 64, 0.15);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.2, 9.4);
  for (int i = 0; i < 200; ++i) {
    const Vec2 a(u(rng), u(rng));
    const Vec2 b(u(rng), u(rng));
    const std::vector<CellIndex> cells = TraverseCells(g, a, b);
    const std::set<CellIndex> got(cells.begin(), cells.end());
    EXPECT_EQ(got.size(), cells.size()) << "cell visited twice";
    const std::set<CellIndex> sampled = SampledRayCells(g, a, b);
    // Every sampled cell is traversed; the traversal may add grazed cells
    // but never a cell far from the segment.
    for (const CellIndex& c : sampled) EXPECT_TRUE(got.count(c)) << i;
    EXPECT_LE(got.size(), sampled.size() + 2) << i;
  }
}

TEST(MahalanobisTest, Examples) {
  GridCell cell;
  cell.vel_cov = Mat2::Identity();
  cell.vel_mean = Vec2::Zero();
  EXPECT_DOUBLE_EQ(MahalanobisToStatic(cell, 0.0), 0.0);
  cell.vel_mean = Vec2(2.0, 0.0);
  EXPECT_NEAR(MahalanobisToStatic(cell, 0.0), 2.0, 1e-12);
  cell.vel_cov = Vec2(4.0, 1.0).asDiagonal();
  EXPECT_NEAR(MahalanobisToStatic(cell, 0.0), 1.0, 1e-12);
}

TEST(MahalanobisTest, RegularizesSingularCovariance) {
  GridCell cell;
  cell.vel_mean = Vec2(1.0, 0.0);
  cell.vel_cov = Mat2::Zero();
  EXPECT_NEAR(MahalanobisToStatic(cell, 1e-4), 100.0, 1e-9);
}

TEST(MahalanobisTest, RejectsNonFiniteInput) {
  GridCell cell;
  cell.vel_mean = Vec2(std::numeric_limits<double>::quiet_NaN(), 0.0);
  EXPECT_THROW(MahalanobisToStatic(cell), Error);
}

TEST(ClassifyDynamicTest, Examples) {
  const DynamicCellConfig cfg;
  GridCell cell;
  cell.vel_cov = Mat2::Identity();
  cell.occupancy = 0.9;
  EXPECT_FALSE(ClassifyDynamic(cell, cfg));
  cell.occupancy = 0.5;
  cell.vel_mean = Vec2(50.0, 0.0);
  EXPECT_FALSE(ClassifyDynamic(cell, cfg));
  cell.occupancy = 0.9;
  cell.vel_mean = Vec2(5.0, 0.0);
  EXPECT_TRUE(ClassifyDynamic(cell, cfg));
}

TEST(ClassifyDynamicTest, Monotone) {
  const DynamicCellConfig cfg;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    GridCell cell;
    cell.occupancy = u(rng);
    cell.vel_mean = Vec2(4.0 * u(rng) - 2.0, 4.0 * u(rng) - 2.0);
    const double a = 0.1 + u(rng), b = 0.1 + u(rng), c = 0.5 * u(rng) * std::sqrt(a * b);
    cell.vel_cov << a, c, c, b;
    if (!ClassifyDynamic(cell, cfg)) continue;
    GridCell more = cell;
    more.occupancy = std::min(1.0, cell.occupancy + 0.1 * u(rng));
    EXPECT_TRUE(ClassifyDynamic(more, cfg));
    GridCell faster = cell;
    faster.vel_mean *= 1.0 + u(rng);
    EXPECT_TRUE(ClassifyDynamic(faster, cfg));
  }
}

// Dempster's rule over {occupied, free} with focal sets encoded as bit masks
// (1 = occupied, 2 = free, 3 = unknown).
double DempsterOccupied(double predicted, double occ, double fre) {
  const double m1[4] = {0.0, predicted, 0.0, 1.0 - predicted};
  const double m2[4] = {0.0, occ, fre, 1.0 - occ - fre};
  double joint[4] = {0.0, 0.0, 0.0, 0.0};
  for (int a = 1; a < 4; ++a) {
    for (int b = 1; b < 4; ++b) joint[a & b] += m1[a] * m2[b];
  }
  return joint[1] / (1.0 - joint[0]);
}

TEST(DynamicGridTest, CombineOccupancyIsDempsterRule) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double p = u(rng);
    const double occ = u(rng);
    const double fre = (1.0 - occ) * u(rng);
    EXPECT_NEAR(DynamicGrid::CombineOccupancy(p, occ, fre), DempsterOccupied(p, occ, fre),
                1e-12);
  }
}

MeasurementGrid BlockMeasurement(const GridGeometry& g, int r0, int c0, int size) {
  MeasurementGrid m(g);
  for (int r = r0; r < r0 + size; ++r) {
    for (int c = c0; c < c0 + size; ++c) m.cells[g.Flat({r, c})].occupied = 0.8f;
  }
  return m;
}

TEST(DynamicGridTest, RejectsBadInput) {
  DynamicGrid grid(Geometry(20, 20));
  try {
    grid.Update(MeasurementGrid(Geometry(21, 20)), 0.08, 1);
    FAIL() << "expected geometry mismatch";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kGeometryMismatch);
  }
  try {
    grid.Update(MeasurementGrid(Geometry(20, 20)), 0.0, 1);
    FAIL() << "expected invalid argument";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
}

TEST(DynamicGridTest, DeterministicForFixedSeed) {
  const GridGeometry g = Geometry(30, 30);
  DynamicGrid a(g), b(g);
  for (int k = 0; k < 5; ++k) {
    const MeasurementGrid m = BlockMeasurement(g, 10, 10 + k, 4);
    a.Update(m, 0.08, 100 + k);
    b.Update(m, 0.08, 100 + k);
  }
  ASSERT_EQ(a.grid().cells.size(), b.grid().cells.size());
  for (std::size_t i = 0; i < a.grid().cells.size(); ++i) {
    EXPECT_EQ(a.grid().cells[i].occupancy, b.grid().cells[i].occupancy);
    EXPECT_EQ(a.grid().cells[i].vel_mean, b.grid().cells[i].vel_mean);
    EXPECT_EQ(a.grid().cells[i].vel_cov, b.grid().cells[i].vel_cov);
  }
}

TEST(DynamicGridTest, OccupancyStaysInUnitIntervalUnderRandomScans) {
  const GridGeometry g = Geometry(32, 32);
  DynamicGrid grid(g);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    MeasurementGrid m(g);
    for (MeasurementCell& c : m.cells) {
      const double x = u(rng);
      if (x < 0.1) {
        c.occupied = static_cast<float>(u(rng));
      } else if (x < 0.5) {
        c.free = static_cast<float>(u(rng));
      }
    }
    grid.Update(m, 0.08, k);
    for (const GridCell& c : grid.grid().cells) {
      EXPECT_GE(c.occupancy, 0.0);
      EXPECT_LE(c.occupancy, 1.0);
      EXPECT_TRUE(c.vel_mean.allFinite());
      EXPECT_NEAR(c.vel_cov(0, 1), c.vel_cov(1, 0), 1e-12);
      EXPECT_GE(c.vel_cov.determinant(), -1e-9);
      EXPECT_GE(c.vel_cov(0, 0), 0.0);
    }
    EXPECT_LE(grid.particles().size(), 200000u);
  }
}

TEST(DynamicGridTest, FreeEvidenceNeverRaisesOccupancy) {
  for (double p = 0.0; p <= 1.0; p += 0.05) {
    for (double f = 0.0; f <= 1.0; f += 0.05) {
      EXPECT_LE(DynamicGrid::CombineOccupancy(p, 0.0, f), p + 1e-12);
    }
  }
  // Prediction only moves or removes particle mass, so with free evidence
  // everywhere the total occupancy cannot grow.
  const GridGeometry g = Geometry(24, 24);
  DynamicGrid grid(g);
  for (int k = 0; k < 5; ++k) grid.Update(BlockMeasurement(g, 8, 8, 6), 0.08, k);
  MeasurementGrid free_only(g);
  for (MeasurementCell& c : free_only.cells) c.free = 0.7f;
  auto total = [&] {
    double sum = 0.0;
    for (const GridCell& c : grid.grid().cells) sum += c.occupancy;
    return sum;
  };
  double before = total();
  for (int k = 0; k < 5; ++k) {
    grid.Update(free_only, 0.08, 10 + k);
    const double now = total();
    EXPECT_LE(now, before + 1e-9);
    before = now;
  }
}

TEST(DynamicGridTest, UnknownMeasurementsDecayTowardPrior) {
  const GridGeometry g = Geometry(24, 24);
  DynamicGrid grid(g);
  for (int k = 0; k < 5; ++k) grid.Update(BlockMeasurement(g, 8, 8, 6), 0.08, k);
  const double start = grid.grid().at({10, 10}).occupancy;
  ASSERT_GT(start, 0.5);
  for (int k = 0; k < 60; ++k) grid.Update(MeasurementGrid(g), 0.08, 100 + k);
  EXPECT_LT(grid.grid().at({10, 10}).occupancy, 0.1 * start);
  for (const GridCell& c : grid.grid().cells) {
    if (c.particle_count == 0) {
      EXPECT_EQ(c.occupancy, grid.config().occupancy_prior);
      EXPECT_EQ(c.vel_mean, Vec2::Zero());
    }
  }
}

// Moments recomputed from the particle set: persistent samples carry the
// velocity, newborn mass pulls the mean toward the zero prior mean.
TEST(DynamicGridTest, MomentsMatchParticleOracle) {
  const GridGeometry g = Geometry(24, 24);
  DynamicGrid grid(g);
  for (int k = 0; k < 6; ++k) grid.Update(BlockMeasurement(g, 6, 6 + k, 5), 0.08, 40 + k);
  std::vector<double> all(g.CellCount(), 0.0), persistent(g.CellCount(), 0.0);
  std::vector<Vec2> moment(g.CellCount(), Vec2::Zero());
  for (const Particle& p : grid.particles()) {
    const std::size_t c = g.Flat(*g.CellAt(p.pos));
    all[c] += p.weight;
    if (p.newborn) continue;
    persistent[c] += p.weight;
    moment[c] += p.weight * p.vel;
  }
  int checked = 0;
  int shrunk = 0;
  for (std::size_t c = 0; c < g.CellCount(); ++c) {
    if (persistent[c] <= 0.0) continue;
    const Vec2 mean = moment[c] / all[c];
    Mat2 cov = Mat2::Zero();
    for (const Particle& p : grid.particles()) {
      if (p.newborn || g.Flat(*g.CellAt(p.pos)) != c) continue;
      cov += p.weight * (p.vel - mean) * (p.vel - mean).transpose();
    }
    cov /= persistent[c];
    const GridCell& cell = grid.grid().cells[c];
    EXPECT_NEAR((cell.vel_mean - mean).norm(), 0.0, 1e-9) << c;
    EXPECT_NEAR((cell.vel_cov - cov).norm(), 0.0, 1e-9) << c;
    ++checked;
    if (all[c] > persistent[c]) ++shrunk;
  }
  EXPECT_GT(checked, 20);
  EXPECT_GT(shrunk, 0);
}

TEST(DynamicGridTest, ParticleBudgetPerCell) {
  const GridGeometry g = Geometry(16, 16);
  DynamicGrid grid(g);
  for (int k = 0; k < 4; ++k) grid.Update(BlockMeasurement(g, 4, 4, 8), 0.08, k);
  for (const GridCell& c : grid.grid().cells) EXPECT_LE(c.particle_count, 50);
  for (const Particle& p : grid.particles()) {
    EXPECT_GE(p.weight, 0.0);
    EXPECT_TRUE(g.CellAt(p.pos).has_value());
  }
}

TEST(GridIoTest, SnapshotRoundTrip) {
  GridMap map(Geometry(7, 5, 0.2, Vec2(-1.0, 2.0)), 0.0);
  map.timestamp = 1.25;
  testing::MakeDynamic(map, {2, 3}, Vec2(1.5, -0.5));
  map.at({4, 6}).occupancy = 0.3;
  std::stringstream buf;
  WriteGridSnapshot(map, buf);
  const GridMap back = ReadGridSnapshot(buf);
  EXPECT_TRUE(back.geometry == map.geometry);
  EXPECT_EQ(back.timestamp, 1.25);
  for (std::size_t i = 0; i < map.cells.size(); ++i) {
    EXPECT_NEAR(back.cells[i].occupancy, map.cells[i].occupancy, 1e-6);
    EXPECT_NEAR((back.cells[i].vel_mean - map.cells[i].vel_mean).norm(), 0.0, 1e-6);
  }
}

TEST(GridIoTest, RejectsGarbage) {
  std::stringstream buf("not a grid snapshot");
  EXPECT_THROW(ReadGridSnapshot(buf), Error);
}

}  // namespace
}  // namespace gridfusion
