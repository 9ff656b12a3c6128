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
#include <functional>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "test_util.h"

namespace gridfusion {
namespace {

using testing::BruteForceFootprint;
using testing::Geometry;
using testing::MakeDynamic;
using testing::MakeStatic;

GridMap EmptyGrid(int w = 64, int h = 64) { return GridMap(Geometry(w, h), 0.0); }

std::set<CellIndex> AsSet(const std::vector<CellIndex>& v) { return {v.begin(), v.end()}; }

// Recursive 8-connected flood fill over the dynamic cells.
std::set<CellIndex> FloodFill(const GridMap& grid, const std::vector<CellIndex>& seeds) {
  const DynamicCellConfig cfg;
  std::set<CellIndex> out;
  std::function<void(CellIndex)> visit = [&](CellIndex c) {
    if (!grid.geometry.Contains(c) || out.count(c) || !ClassifyDynamic(grid.at(c), cfg)) return;
    out.insert(c);
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) visit({c.row + dr, c.col + dc});
    }
  };
  for (const CellIndex& s : seeds) visit(s);
  return out;
}

TEST(CellsUnderFootprintTest, SmallSquareCoversNineCells) {
  const GridMap grid = EmptyGrid(20, 20);
  const Vec2 center = grid.geometry.CellCenter({10, 10});
  const auto cells = CellsUnderFootprint(grid, OrientedBox{center, 0.0, 0.45, 0.45}, 0.0);
  EXPECT_EQ(cells.size(), 9u);
  EXPECT_EQ(AsSet(cells), BruteForceFootprint(grid.geometry, center, 0.0, 0.45, 0.45, 0.0));
}

TEST(CellsUnderFootprintTest, BoxOutsideGridIsEmpty) {
  const GridMap grid = EmptyGrid(20, 20);
  EXPECT_TRUE(CellsUnderFootprint(grid, OrientedBox{Vec2(-50, 7), 0.3, 4.5, 1.8}, 0.15).empty());
  EXPECT_TRUE(CellsUnderFootprint(grid, OrientedBox{Vec2(10, 40), 0.0, 1.0, 1.0}, 0.0).empty());
}

TEST(CellsUnderFootprintTest, MatchesBruteForceOnRandomBoxes) {
  const GridMap grid = EmptyGrid();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(-1.0, 10.6);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::uniform_real_distribution<double> len(0.1, 5.0);
  std::uniform_real_distribution<double> margin(0.0, 0.4);
  for (int i = 0; i < 500; ++i) {
    const Vec2 c(pos(rng), pos(rng));
    // Every tenth box sits at exactly 45 degrees.
    const double theta = i % 10 == 0 ? kPi / 4 : ang(rng);
    const double l = len(rng);
    const double w = len(rng);
    const double m = margin(rng);
    const auto cells = CellsUnderFootprint(grid, OrientedBox{c, theta, l, w}, m);
    ASSERT_TRUE(std::is_sorted(cells.begin(), cells.end()));
    ASSERT_EQ(AsSet(cells), BruteForceFootprint(grid.geometry, c, theta, l, w, m)) << i;
  }
}

TEST(GrowDynamicRegionTest, NoDynamicSeedsGivesNothing) {
  GridMap grid = EmptyGrid(10, 10);
  MakeStatic(grid, {3, 3});
  MakeDynamic(grid, {7, 7}, Vec2(4, 0));
  const std::vector<CellIndex> seeds = {{3, 3}, {0, 0}};
  EXPECT_TRUE(GrowDynamicRegion(grid, seeds, {}).empty());
  EXPECT_TRUE(GrowDynamicRegion(grid, {}, {}).empty());
}

TEST(GrowDynamicRegionTest, LShapeFromCornerSeed) {
  GridMap grid = EmptyGrid(12, 12);
  for (int r = 2; r <= 8; ++r) MakeDynamic(grid, {r, 2}, Vec2(3, 1));
  for (int c = 3; c <= 7; ++c) MakeDynamic(grid, {8, c}, Vec2(3, 1));
  const std::vector<CellIndex> seeds = {{2, 2}};
  const auto region = GrowDynamicRegion(grid, seeds, {});
  EXPECT_EQ(region.size(), 12u);
  EXPECT_EQ(AsSet(region), FloodFill(grid, seeds));
}

TEST(GrowDynamicRegionTest, StaticGapSeparatesBlobs) {
  GridMap grid = EmptyGrid(12, 12);
  for (int r = 2; r <= 5; ++r) {
    for (int c = 1; c <= 3; ++c) MakeDynamic(grid, {r, c}, Vec2(0, 5));
    MakeStatic(grid, {r, 4});
    for (int c = 5; c <= 7; ++c) MakeDynamic(grid, {r, c}, Vec2(0, 5));
  }
  const std::vector<CellIndex> seeds = {{3, 2}};
  const auto region = AsSet(GrowDynamicRegion(grid, seeds, {}));
  EXPECT_EQ(region.size(), 12u);
  EXPECT_EQ(region, FloodFill(grid, seeds));
  for (const CellIndex& c : region) EXPECT_LE(c.col, 3);
}

TEST(GrowDynamicRegionTest, DiagonalNeighborsConnect) {
  GridMap grid = EmptyGrid(6, 6);
  for (int i = 0; i < 5; ++i) MakeDynamic(grid, {i, i}, Vec2(2, 2));
  const std::vector<CellIndex> seeds = {{0, 0}};
  EXPECT_EQ(GrowDynamicRegion(grid, seeds, {}).size(), 5u);
}

TEST(GrowDynamicRegionTest, MatchesFloodFillAndIgnoresSeedOrder) {
  std::mt19937_64 rng(5);
  std::bernoulli_distribution dyn(0.35);
  std::uniform_int_distribution<int> idx(0, 23);
  for (int trial = 0; trial < 200; ++trial) {
    GridMap grid = EmptyGrid(24, 24);
    for (int r = 0; r < 24; ++r) {
      for (int c = 0; c < 24; ++c) {
        if (dyn(rng)) {
          MakeDynamic(grid, {r, c}, Vec2(3, -1));
        } else if (dyn(rng)) {
          MakeStatic(grid, {r, c});
        }
      }
    }
    std::vector<CellIndex> seeds;
    for (int k = 0; k < 6; ++k) seeds.push_back({idx(rng), idx(rng)});
    const auto region = GrowDynamicRegion(grid, seeds, {});
    ASSERT_EQ(AsSet(region), FloodFill(grid, seeds)) << trial;
    std::vector<CellIndex> permuted = seeds;
    std::shuffle(permuted.begin(), permuted.end(), rng);
    ASSERT_EQ(GrowDynamicRegion(grid, permuted, {}), region) << trial;
  }
}

BoxHypothesis Track(const Vec2& center, double theta = 0.0, double l = 4.5, double w = 1.8) {
  BoxHypothesis b;
  b.center = center;
  b.orientation = theta;
  b.length = l;
  b.width = w;
  return b;
}

TEST(AssociateTest, DirectHitReturnsBlobAndWeightedVelocity) {
  GridMap grid = EmptyGrid();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> occ(0.75, 1.0);
  std::uniform_real_distribution<double> vel(3.0, 6.0);
  std::vector<CellIndex> blob;
  for (int r = 20; r < 32; ++r) {
    for (int c = 16; c < 46; ++c) {
      MakeDynamic(grid, {r, c}, Vec2(vel(rng), 0.2 * vel(rng)), occ(rng));
      blob.push_back({r, c});
    }
  }
  MakeStatic(grid, {5, 5});
  const BoxHypothesis t = Track(Vec2(4.8, 3.9));
  const CellGroup g = Associate(grid, t);
  EXPECT_EQ(AsSet(g.cell_indices), AsSet(blob));
  EXPECT_EQ(g.count, static_cast<int>(blob.size()));
  EXPECT_FALSE(g.from_fallback);

  double w = 0.0;
  Vec2 v = Vec2::Zero();
  for (const CellIndex& c : blob) {
    w += grid.at(c).occupancy;
    v += grid.at(c).occupancy * grid.at(c).vel_mean;
  }
  EXPECT_NEAR((g.mean_velocity - v / w).norm(), 0.0, 1e-12);

  AssociationConfig plain;
  plain.occupancy_weighted_velocity = false;
  Vec2 m = Vec2::Zero();
  for (const CellIndex& c : blob) m += grid.at(c).vel_mean;
  EXPECT_NEAR((Associate(grid, t, plain).mean_velocity - m / blob.size()).norm(), 0.0, 1e-12);
}

TEST(AssociateTest, VelocityCovarianceIsMixtureCovariance) {
  GridMap grid = EmptyGrid(8, 8);
  MakeDynamic(grid, {3, 3}, Vec2(4, 0), 1.0);
  MakeDynamic(grid, {3, 4}, Vec2(4, 2), 1.0);
  const CellGroup g = Associate(grid, Track(grid.geometry.CellCenter({3, 3}), 0.0, 0.6, 0.3));
  ASSERT_EQ(g.count, 2);
  // Each cell contributes 0.01 I plus half of the squared deviation (0, +-1).
  EXPECT_NEAR(g.velocity_cov(0, 0), 0.01, 1e-12);
  EXPECT_NEAR(g.velocity_cov(1, 1), 1.01, 1e-12);
  EXPECT_NEAR(g.velocity_cov(0, 1), 0.0, 1e-12);
}

// Car-sized blob next to a hypothesis: the footprint plus vicinity stops at
// y = 4.05, the blob starts at 4.05 (first centers at 4.125).
GridMap BesideGrid(std::vector<CellIndex>* blob = nullptr) {
  GridMap grid = EmptyGrid();
  for (int r = 27; r <= 38; ++r) {
    for (int c = 16; c <= 45; ++c) {
      MakeDynamic(grid, {r, c}, Vec2(5, 0));
      if (blob) blob->push_back({r, c});
    }
  }
  return grid;
}

TEST(AssociateTest, FallbackFindsBlobBesideHypothesis) {
  std::vector<CellIndex> blob;
  const GridMap grid = BesideGrid(&blob);
  const BoxHypothesis t = Track(Vec2(4.8, 3.0));
  for (const CellIndex& c : CellsUnderFootprint(grid, t.Box(), 0.15)) {
    ASSERT_FALSE(ClassifyDynamic(grid.at(c), {}));
  }
  const CellGroup g = Associate(grid, t);
  EXPECT_TRUE(g.from_fallback);
  EXPECT_EQ(AsSet(g.cell_indices), AsSet(blob));

  AssociationConfig length_only;
  length_only.fallback_scales_width = false;
  const CellGroup h = Associate(grid, t, length_only);
  EXPECT_TRUE(h.empty());
  EXPECT_FALSE(h.from_fallback);
}

TEST(AssociateTest, FallbackSkippedWhenFootprintHasDynamicCells) {
  GridMap grid = BesideGrid();
  // A small blob under the footprint, disconnected from the big one.
  for (int c = 30; c <= 32; ++c) MakeDynamic(grid, {20, c}, Vec2(0, 4));
  const CellGroup g = Associate(grid, Track(Vec2(4.8, 3.0)));
  EXPECT_FALSE(g.from_fallback);
  EXPECT_EQ(g.count, 3);
  for (const CellIndex& c : g.cell_indices) EXPECT_EQ(c.row, 20);
}

TEST(AssociateTest, StaticGridGivesEmptyGroup) {
  GridMap grid = EmptyGrid();
  for (int r = 10; r < 40; ++r) {
    for (int c = 10; c < 40; ++c) MakeStatic(grid, {r, c});
  }
  const CellGroup g = Associate(grid, Track(Vec2(3.75, 3.75)));
  EXPECT_TRUE(g.empty());
  EXPECT_EQ(g.count, 0);
  EXPECT_TRUE(g.cell_indices.empty());
}

TEST(AssociateTest, ResultIsAlwaysDynamic) {
  std::mt19937_64 rng(9);
  std::bernoulli_distribution dyn(0.2);
  std::uniform_real_distribution<double> pos(0.0, 9.6);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int trial = 0; trial < 50; ++trial) {
    GridMap grid = EmptyGrid();
    for (std::size_t i = 0; i < grid.cells.size(); ++i) {
      const CellIndex c = grid.geometry.Unflat(i);
      dyn(rng) ? MakeDynamic(grid, c, Vec2(2, 3)) : MakeStatic(grid, c, 0.8);
    }
    const CellGroup g = Associate(grid, Track(Vec2(pos(rng), pos(rng)), ang(rng)));
    EXPECT_EQ(g.count, static_cast<int>(g.cell_indices.size()));
    for (const CellIndex& c : g.cell_indices) ASSERT_TRUE(ClassifyDynamic(grid.at(c), {}));
    if (!g.empty()) {
      EXPECT_TRUE(g.mean_velocity.allFinite());
    }
  }
}

}  // namespace
}  // namespace gridfusion
