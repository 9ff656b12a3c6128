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

// Acceptance checks. Prints one line per criterion and exits non-zero when
// any of them fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gridfusion/association/association.h"
#include "gridfusion/eval/metrics.h"
#include "gridfusion/fusion/fusion.h"
#include "gridfusion/grid/dynamic_cell.h"
#include "gridfusion/grid/dynamic_grid.h"
#include "gridfusion/grid/inverse_sensor_model.h"
#include "gridfusion/pipeline/pipeline.h"
#include "gridfusion/selection/selection.h"
#include "gridfusion/sim/scenario_library.h"
#include "gridfusion/sim/sensors.h"
#include "gridfusion/tracker/motion_models.h"
#include "gridfusion/tracker/tracker.h"
#include "test_util.h"

namespace gridfusion {
namespace {

using testing::BruteForceFootprint;
using testing::Geometry;
using testing::MakeDynamic;
using testing::MakeStatic;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

double Seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const ObjectState* FindObject(const SceneState& scene, const std::string& id) {
  for (const ObjectState& o : scene.objects) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

const BoxHypothesis* FindTrack(const Tracker& tracker, int track_id) {
  for (const BoxHypothesis& t : tracker.tracks()) {
    if (t.track_id == track_id) return &t;
  }
  return nullptr;
}

// Cross traffic: the fused orientation corrects the misaligned track shortly
// after the crossing car is first associated with grid cells.
Outcome Criterion1() {
  const auto start = std::chrono::steady_clock::now();
  Pipeline p(*BuiltinScenario("cross_traffic"), {}, {});
  int first = -1;
  int hit = -1;
  double hit_sel = 0.0;
  double hit_trk = 0.0;
  double best_sel = std::numeric_limits<double>::infinity();
  while (p.Step()) {
    const FrameDiagnostics& d = p.diagnostics();
    const ObjectState* truth = FindObject(SceneAt(p.scenario(), d.timestamp), "V1");
    if (truth == nullptr) continue;
    for (const FrameDiagnostics::ObjectInfo& o : d.objects) {
      if (o.group_cells == 0 || !o.selection) continue;
      if ((o.selection->box.center - truth->box.center).norm() > 4.0) continue;
      if (first < 0) first = d.frame;
      if (d.frame > first + 4 || hit >= 0) continue;
      const BoxHypothesis* track = FindTrack(p.tracker(), o.track_id);
      const double sel = std::abs(AngleDiff(o.selection->box.orientation, truth->box.orientation));
      best_sel = std::min(best_sel, sel);
      if (track == nullptr) continue;
      const double trk = std::abs(AngleDiff(track->orientation, truth->box.orientation));
      if (sel < 0.15 && trk > 1.0) {
        hit = d.frame;
        hit_sel = sel;
        hit_trk = trk;
      }
    }
  }
  const double elapsed = Seconds(start);
  Outcome out;
  out.pass = first >= 0 && hit >= 0 && elapsed < 10.0;
  if (hit >= 0) {
    out.detail = Format(
        "first association frame %d, corrected at frame %d: selected error %.3f rad, "
        "tracker error %.3f rad, runtime %.2f s",
        first, hit, hit_sel, hit_trk, elapsed);
  } else {
    out.detail = Format("first association frame %d, no correction within 5 frames "
                        "(best selected error %.3f rad), runtime %.2f s",
                        first, best_sel, elapsed);
  }
  return out;
}

// Fused hypotheses are never materially worse than the tracker across the
// built-in suite.
Outcome Criterion2() {
  int runs = 0;
  int compared = 0;
  int failed = 0;
  double worst_pos = -std::numeric_limits<double>::infinity();
  double worst_ori = -std::numeric_limits<double>::infinity();
  std::string failures;
  for (const std::string& name : BuiltinScenarioNames()) {
    for (TrackerSensors sensors : {TrackerSensors::kRadar, TrackerSensors::kRadarLidar}) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        RunOptions o;
        o.sensors = sensors;
        o.seed = seed;
        Pipeline p(*BuiltinScenario(name), {}, o);
        p.Run();
        ++runs;
        for (const ObjectMetrics& m : ComputeRunMetrics(p.log(), p.config().eval).objects) {
          if (!m.rmse_position_t || !m.rmse_position_f) continue;
          ++compared;
          const double dp = *m.rmse_position_f - *m.rmse_position_t;
          const double dr = *m.rmse_orientation_f - *m.rmse_orientation_t;
          worst_pos = std::max(worst_pos, dp);
          worst_ori = std::max(worst_ori, dr);
          if (dp > 0.05 || dr > 0.02) {
            ++failed;
            failures += Format(" [%s %s seed %d %s: dpos %+.3f dori %+.3f]", name.c_str(),
                               TrackerSensorsName(sensors), static_cast<int>(seed),
                               m.object_id.c_str(), dp, dr);
          }
        }
      }
    }
  }
  Outcome out;
  out.pass = runs >= 15 && compared > 0 && failed == 0;
  out.detail = Format("%d runs, %d object comparisons, %d outside tolerance; worst "
                      "F-T position %+.3f m, orientation %+.3f rad",
                      runs, compared, failed, worst_pos, worst_ori) +
               failures;
  return out;
}

// Tracker dropout: fusion keeps the object alive, and the duration rule is
// reproduced on hand-computed timestamp lists.
Outcome Criterion3() {
  struct Crafted {
    std::vector<double> times;
    double expected;
  };
  // Binary fractions keep the hand-computed sums exact.
  const std::vector<Crafted> crafted = {
      {{}, 0.0},
      {{1.0}, 0.0},
      {{0.0, 0.0625, 0.125, 0.25, 0.3125}, 0.1875},
      {{0.0, 0.25, 0.5}, 0.0},
      {{0.0, 0.0625, 0.125, 0.1875, 0.25, 0.3125, 0.375, 0.4375}, 0.4375},
      {{0.0, 0.03125, 0.5, 0.53125, 0.5625}, 0.09375},
  };
  int crafted_ok = 0;
  for (const Crafted& c : crafted) {
    if (TrackDuration(c.times, 0.1) == c.expected) ++crafted_ok;
  }

  int runs = 0;
  int ok = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  double sum_t = 0.0;
  double sum_f = 0.0;
  for (TrackerSensors sensors : {TrackerSensors::kRadar, TrackerSensors::kRadarLidar}) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      RunOptions o;
      o.sensors = sensors;
      o.seed = seed;
      Pipeline p(*BuiltinScenario("dropout"), {}, o);
      p.Run();
      for (const ObjectMetrics& m : ComputeRunMetrics(p.log(), p.config().eval).objects) {
        ++runs;
        sum_t += m.duration_t;
        sum_f += m.duration_f;
        if (m.duration_f >= 1.5 * m.duration_t) ++ok;
        if (m.duration_t > 0.0) min_ratio = std::min(min_ratio, m.duration_f / m.duration_t);
      }
    }
  }
  Outcome out;
  out.pass = runs > 0 && ok == runs &&
             crafted_ok == static_cast<int>(crafted.size());
  out.detail = Format("%d/%d dropout object-runs with duration_F >= 1.5 duration_T "
                      "(min ratio %.2f, mean T %.2f s, mean F %.2f s); crafted lists %d/%d exact",
                      ok, runs, min_ratio, runs ? sum_t / runs : 0.0,
                      runs ? sum_f / runs : 0.0, crafted_ok,
                      static_cast<int>(crafted.size()));
  return out;
}

// Every percentage cell of the reference results table recomputed from the
// printed O_T and O_F values.
Outcome Criterion4() {
  struct Cell {
    const char* where;
    double t;
    double f;
    double printed;
    bool duration;
  };
  const std::vector<Cell> cells = {
      {"#1 LRR pos V1", 1.12, 0.75, 33.04, false},
      {"#1 LRR pos V2", 2.08, 1.63, 21.63, false},
      {"#1 LRR ori V1", 0.26, 0.18, 30.77, false},
      {"#1 LRR ori V2", 0.21, 0.20, 4.76, false},
      {"#1 LRR dur V1", 11.6, 15.2, 31.03, true},
      {"#1 LRR dur V2", 23.8, 23.9, 0.42, true},
      {"#1 LRR&ibeo pos V1", 1.34, 0.68, 49.25, false},
      {"#1 LRR&ibeo pos V2", 1.10, 0.59, 46.36, false},
      {"#1 LRR&ibeo ori V1", 0.17, 0.13, 23.53, false},
      {"#1 LRR&ibeo ori V2", 0.22, 0.21, 4.55, false},
      {"#1 LRR&ibeo dur V1", 2.3, 11.0, 378.26, true},
      {"#1 LRR&ibeo dur V2", 5.5, 5.9, 7.27, true},
      {"#2 LRR pos V1", 0.51, 0.20, 60.78, false},
      {"#2 LRR pos V2", 3.18, 0.23, 92.77, false},
      {"#2 LRR ori V1", 0.02, 0.02, 0.00, false},
      {"#2 LRR ori V2", 0.22, 0.02, 90.91, false},
      {"#2 LRR dur V1", 3.0, 7.9, 163.33, true},
      {"#2 LRR dur V2", 2.7, 3.3, 22.22, true},
      {"#2 LRR&ibeo pos V1", 0.43, 0.19, 55.81, false},
      {"#2 LRR&ibeo pos V2", 0.76, 0.48, 36.84, false},
      {"#2 LRR&ibeo ori V1", 0.02, 0.02, 0.00, false},
      {"#2 LRR&ibeo ori V2", 0.06, 0.01, 83.33, false},
      {"#2 LRR&ibeo dur V1", 3.0, 7.8, 160.00, true},
      {"#2 LRR&ibeo dur V2", 3.3, 3.3, 0.00, true},
      {"#3 LRR pos V1", 0.54, 0.40, 25.93, false},
      {"#3 LRR pos V2", 1.29, 0.41, 68.22, false},
      {"#3 LRR ori V1", 0.15, 0.09, 60.00, false},
      {"#3 LRR ori V2", 0.21, 0.11, 47.62, false},
      {"#3 LRR dur V1", 3.8, 8.4, 121.05, true},
      {"#3 LRR dur V2", 10.6, 13.9, 31.13, true},
      {"#3 LRR&ibeo pos V1", 1.16, 0.38, 67.24, false},
      {"#3 LRR&ibeo pos V2", 0.84, 0.68, 19.05, false},
      {"#3 LRR&ibeo ori V1", 0.15, 0.09, 60.00, false},
      {"#3 LRR&ibeo ori V2", 0.09, 0.07, 22.22, false},
      {"#3 LRR&ibeo dur V1", 2.6, 5.9, 126.92, true},
      {"#3 LRR&ibeo dur V2", 9.4, 11.9, 26.60, true},
  };
  int ok = 0;
  std::string failures;
  for (const Cell& c : cells) {
    const std::optional<double> v =
        c.duration ? PercentExtension(c.t, c.f) : PercentImprovement(c.t, c.f);
    if (v && std::abs(*v - c.printed) <= 0.01) {
      ++ok;
    } else {
      failures += Format(" [%s: %.2f -> %.2f computes %.2f, printed %.2f]", c.where, c.t, c.f,
                         v.value_or(std::nan("")), c.printed);
    }
  }
  Outcome out;
  out.pass = ok == static_cast<int>(cells.size());
  out.detail = Format("%d/%d cells within 0.01", ok, static_cast<int>(cells.size())) + failures;
  if (!out.pass) {
    out.detail +=
        "; the printed value is inconsistent with its own O_T and O_F (100*(T-F)/T), and no "
        "rounding of the two-decimal inputs reaches it";
  }
  return out;
}

// Iterative 8-connected flood fill over dynamic cells.
std::set<CellIndex> FloodFillOracle(const GridMap& grid, const std::vector<CellIndex>& seeds) {
  const GridGeometry& g = grid.geometry;
  auto dynamic = [&](int r, int c) {
    return r >= 0 && c >= 0 && r < g.height_cells && c < g.width_cells &&
           ClassifyDynamic(grid.at({r, c}), {});
  };
  std::set<CellIndex> seen;
  std::vector<CellIndex> stack;
  for (const CellIndex& s : seeds) {
    if (dynamic(s.row, s.col) && seen.insert(s).second) stack.push_back(s);
  }
  while (!stack.empty()) {
    const CellIndex c = stack.back();
    stack.pop_back();
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        const CellIndex n{c.row + dr, c.col + dc};
        if (dynamic(n.row, n.col) && seen.insert(n).second) stack.push_back(n);
      }
    }
  }
  return seen;
}

BoxHypothesis Box(const Vec2& center, double theta, double l, double w) {
  BoxHypothesis b;
  b.center = center;
  b.orientation = theta;
  b.length = l;
  b.width = w;
  return b;
}

// Footprint, region growing and selection against independent oracles.
Outcome Criterion5() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> pos(0.0, 9.6);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  std::uniform_real_distribution<double> len(0.2, 6.0);
  std::uniform_real_distribution<double> margin(0.0, 0.5);

  int footprint_ok = 0;
  const GridMap empty(Geometry(64, 64), 0.0);
  for (int i = 0; i < 500; ++i) {
    const BoxHypothesis b = Box(Vec2(pos(rng), pos(rng)), ang(rng), len(rng), len(rng));
    const double m = margin(rng);
    const std::vector<CellIndex> got = CellsUnderFootprint(empty, b.Box(), m);
    const std::set<CellIndex> want =
        BruteForceFootprint(empty.geometry, b.center, b.orientation, b.length, b.width, m);
    if (std::set<CellIndex>(got.begin(), got.end()) == want && got.size() == want.size()) {
      ++footprint_ok;
    }
  }

  int grow_ok = 0;
  std::bernoulli_distribution dyn(0.45);
  std::uniform_int_distribution<int> idx(0, 63);
  for (int i = 0; i < 200; ++i) {
    GridMap grid(Geometry(64, 64), 0.0);
    for (std::size_t k = 0; k < grid.cells.size(); ++k) {
      const CellIndex c = grid.geometry.Unflat(k);
      dyn(rng) ? MakeDynamic(grid, c, Vec2(2.0, 1.0)) : MakeStatic(grid, c);
    }
    std::vector<CellIndex> seeds;
    for (int s = 0; s < 5; ++s) seeds.push_back({idx(rng), idx(rng)});
    const std::vector<CellIndex> got = GrowDynamicRegion(grid, seeds, {});
    if (std::set<CellIndex>(got.begin(), got.end()) == FloodFillOracle(grid, seeds) &&
        std::is_sorted(got.begin(), got.end())) {
      ++grow_ok;
    }
  }

  int select_ok = 0;
  std::bernoulli_distribution present(0.7);
  std::uniform_real_distribution<double> small(0.0, 6.0);
  for (int i = 0; i < 200; ++i) {
    GridMap grid(Geometry(40, 40), 0.0);
    for (std::size_t k = 0; k < grid.cells.size(); ++k) {
      const CellIndex c = grid.geometry.Unflat(k);
      dyn(rng) ? MakeDynamic(grid, c, Vec2(1.0, -2.0)) : MakeStatic(grid, c);
    }
    CandidateSet s;
    s.tracking = Box(Vec2(small(rng), small(rng)), ang(rng), len(rng) / 2, len(rng) / 2);
    if (present(rng)) s.fused = Box(Vec2(small(rng), small(rng)), ang(rng), len(rng) / 2, len(rng) / 2);
    if (present(rng)) s.predicted = Box(Vec2(small(rng), small(rng)), ang(rng), len(rng) / 2, len(rng) / 2);
    auto count = [&](const BoxHypothesis& b) {
      int n = 0;
      for (const CellIndex& c :
           BruteForceFootprint(grid.geometry, b.center, b.orientation, b.length, b.width, 0.0)) {
        if (ClassifyDynamic(grid.at(c), {})) ++n;
      }
      return n;
    };
    int best = -1;
    CandidateLabel label = CandidateLabel::kTracking;
    for (CandidateLabel l :
         {CandidateLabel::kFused, CandidateLabel::kTracking, CandidateLabel::kPredicted}) {
      if (!s.Get(l)) continue;
      const int n = count(*s.Get(l));
      if (n > best) {
        best = n;
        label = l;
      }
    }
    const Selection sel = SelectBest(grid, s, {});
    if (sel.support == best && sel.label == label && sel.support >= count(*s.tracking)) {
      ++select_ok;
    }
  }
  const double elapsed = Seconds(start);
  Outcome out;
  out.pass = footprint_ok == 500 && grow_ok == 200 && select_ok == 200 && elapsed < 30.0;
  out.detail = Format("footprint %d/500, region growing %d/200, selection %d/200, runtime %.2f s",
                      footprint_ok, grow_ok, select_ok, elapsed);
  return out;
}

bool InHalfOpenPi(double a) { return a > -kPi && a <= kPi; }

// Numerical properties: CTRV limit, Mahalanobis form, angle range.
Outcome Criterion6() {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> speed(0.0, 30.0);
  std::uniform_real_distribution<double> dt(0.0, 1.0);

  double ctrv_gap = 0.0;
  for (int i = 0; i < 2000; ++i) {
    BoxHypothesis s = Box(Vec2(50 * unit(rng), 50 * unit(rng)), kPi * unit(rng), 4.5, 1.8);
    s.speed = speed(rng);
    s.yaw_rate = i % 4 == 0 ? std::copysign(1e-9, unit(rng)) : 1e-9 * unit(rng);
    const double h = dt(rng);
    const BoxHypothesis a = CtrvPredict(s, h);
    const BoxHypothesis b = CvPredict(s, h);
    ctrv_gap = std::max({ctrv_gap, (a.center - b.center).norm(),
                         std::abs(AngleDiff(a.orientation, b.orientation))});
  }

  double maha_gap = 0.0;
  std::uniform_real_distribution<double> eig(0.05, 5.0);
  for (int i = 0; i < 1000; ++i) {
    const double phi = kPi * unit(rng);
    const Mat2 r = (Mat2() << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi)).finished();
    const Mat2 d = Vec2(eig(rng), eig(rng)).asDiagonal();
    GridCell cell;
    cell.vel_cov = r * d * r.transpose();
    cell.vel_mean = Vec2(5 * unit(rng), 5 * unit(rng));
    const double eps = 1e-4;
    const double a = cell.vel_cov(0, 0) + eps;
    const double b = cell.vel_cov(0, 1);
    const double c = cell.vel_cov(1, 1) + eps;
    const Vec2& v = cell.vel_mean;
    const double direct =
        std::sqrt((c * v.x() * v.x() - 2 * b * v.x() * v.y() + a * v.y() * v.y()) / (a * c - b * b));
    maha_gap = std::max(maha_gap, std::abs(MahalanobisToStatic(cell, eps) - direct));
  }

  int chains_ok = 0;
  std::uniform_int_distribution<int> op(0, 4);
  std::uniform_real_distribution<double> wild(-40.0, 40.0);
  for (int chain = 0; chain < 10000; ++chain) {
    BoxHypothesis s = Box(Vec2::Zero(), NormalizeAngle(wild(rng)), 4.5, 1.8);
    s.speed = speed(rng);
    s.yaw_rate = 2 * unit(rng);
    Tracker tracker;
    double t = 0.0;
    bool ok = InHalfOpenPi(s.orientation);
    for (int k = 0; k < 8 && ok; ++k) {
      switch (op(rng)) {
        case 0:
          s = CtrvPredict(s, 3 * dt(rng));
          break;
        case 1:
          s = CvPredict(s, 3 * dt(rng));
          break;
        case 2: {
          CellGroup g;
          g.count = 10;
          g.mean_velocity = Vec2(10 * unit(rng), 10 * unit(rng));
          g.velocity_cov = 1e-4 * Mat2::Identity();
          s = FuseOrientation(s, g);
          break;
        }
        case 3:
          s.orientation = NormalizeAngle(s.orientation + wild(rng));
          break;
        default: {
          t += 0.08;
          Detection det;
          det.position = Vec2(10 + unit(rng), unit(rng));
          det.timestamp = t;
          if (k % 2 == 1) {
            det.source = DetectionSource::kLaserBoxFit;
            det.orientation = wild(rng);
            det.extent = Vec2(4.5, 1.8);
          }
          tracker.Step({det}, t, wild(rng));
          for (const BoxHypothesis& h : tracker.tracks()) ok = ok && InHalfOpenPi(h.orientation);
          break;
        }
      }
      ok = ok && InHalfOpenPi(s.orientation);
    }
    if (ok) ++chains_ok;
  }

  Outcome out;
  out.pass = ctrv_gap <= 1e-6 && maha_gap <= 1e-12 && chains_ok == 10000;
  out.detail = Format("CTRV-CV max gap %.3g for |yaw rate| <= 1e-9; Mahalanobis max deviation "
                      "%.3g over 1000 SPD matrices; %d/10000 operation chains keep "
                      "orientation in (-pi, pi]",
                      ctrv_gap, maha_gap, chains_ok);
  return out;
}

struct GridObjectStats {
  int occupied = 0;
  int cells_within = 0;
  Vec2 weighted_velocity = Vec2::Zero();
};

// Occupied cells (occupancy > 0.7) inside the true box plus one cell margin.
GridObjectStats ObjectStats(const GridMap& map, const ObjectState& object, const Vec2& truth) {
  GridObjectStats s;
  double weight = 0.0;
  for (std::size_t i = 0; i < map.cells.size(); ++i) {
    const GridCell& cell = map.cells[i];
    if (cell.occupancy <= 0.7) continue;
    if (!object.box.Contains(map.geometry.CellCenter(map.geometry.Unflat(i)), 0.15)) continue;
    ++s.occupied;
    const Vec2 e = cell.vel_mean - truth;
    if (std::abs(e.x()) <= 1.0 && std::abs(e.y()) <= 1.0) ++s.cells_within;
    s.weighted_velocity += cell.occupancy * cell.vel_mean;
    weight += cell.occupancy;
  }
  if (weight > 0.0) s.weighted_velocity /= weight;
  return s;
}

// Runs the grid alone on a single-object scene seen by a standing ego. Records
// the first frame at which `ok` holds and the state at the last frame.
struct GridRun {
  int first = -1;
  bool at_end = false;
  GridObjectStats end;
  Vec2 truth = Vec2::Zero();
};

GridRun RunGrid(const Pose2D& start, double speed, int frames, std::uint64_t seed,
                const std::function<bool(const GridObjectStats&, const Vec2&)>& ok) {
  Scenario s = *BuiltinScenario("cross_traffic");
  s.objects = {s.objects[0]};
  s.objects[0].id = "X";
  s.objects[0].motion = {start, {{0.0, speed, 0.0}}};
  const PipelineConfig cfg;
  DynamicGrid grid(s.grid, cfg.grid);
  GridRun run;
  for (int f = 0; f < frames; ++f) {
    const SceneState scene = SceneAt(s, s.FrameTime(f));
    const LaserScan scan = SimulateLidar(scene, s.lidar, FrameSeed(seed, f, 1));
    grid.Update(InverseSensorModel(scan, s.grid, cfg.sensor_model), 1.0 / s.frame_rate,
                FrameSeed(seed, f, 3));
    const ObjectState& o = scene.objects[0];
    const Vec2 truth = o.speed * Vec2(std::cos(o.box.orientation), std::sin(o.box.orientation));
    const GridObjectStats st = ObjectStats(grid.grid(), o, truth);
    const bool good = st.occupied > 0 && ok(st, truth);
    if (good && run.first < 0) run.first = f;
    if (f == frames - 1) {
      run.at_end = good;
      run.end = st;
      run.truth = truth;
    }
  }
  return run;
}

// Grid velocity estimates converge for a stationary and a translating object.
Outcome Criterion7() {
  const auto start = std::chrono::steady_clock::now();
  auto still = [](const GridObjectStats& s, const Vec2&) {
    return s.weighted_velocity.norm() < 0.3;
  };
  auto moving = [](const GridObjectStats& s, const Vec2& truth) {
    const Vec2 e = s.weighted_velocity - truth;
    return std::abs(e.x()) <= 1.0 && std::abs(e.y()) <= 1.0;
  };
  // Seed 1 is the scenario seed and decides the outcome; the other seeds are
  // reported alongside.
  bool pass = false;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const GridRun a = RunGrid({{15.0, 2.0}, 0.3}, 0.0, 20, seed, still);
    const GridRun b = RunGrid({{20.0, -12.0}, kPi / 2}, 6.0, 30, seed, moving);
    if (seed == 1) pass = a.at_end && b.at_end;
    detail += Format(" [seed %d%s: stationary |v| %.2f at frame 19; translating error "
                     "(%+.2f, %+.2f) at frame 29 (first within bounds at frame %d), %d/%d "
                     "cells within 1 m/s]",
                     static_cast<int>(seed), seed == 1 ? "" : ", not gating",
                     a.end.weighted_velocity.norm(), b.end.weighted_velocity.x() - b.truth.x(),
                     b.end.weighted_velocity.y() - b.truth.y(), b.first, b.end.cells_within,
                     b.end.occupied);
  }
  const double elapsed = Seconds(start);
  Outcome out;
  out.pass = pass && elapsed < 20.0;
  out.detail = Format("occupancy-weighted cell velocity, runtime %.2f s", elapsed) + detail;
  return out;
}

}  // namespace
}  // namespace gridfusion

int main() {
  using gridfusion::Outcome;
  const std::vector<Outcome (*)()> criteria = {
      gridfusion::Criterion1, gridfusion::Criterion2, gridfusion::Criterion3,
      gridfusion::Criterion4, gridfusion::Criterion5, gridfusion::Criterion6,
      gridfusion::Criterion7};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::printf("criterion %zu: %s - %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
