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

#include "gridfusion/grid/dynamic_grid.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "gridfusion/common/error.h"

namespace gridfusion {
namespace {

struct CellPlan {
  std::size_t cell = 0;
  std::uint32_t begin = 0;  // range into the bucketed particle array
  std::uint32_t end = 0;
  double persistent_mass = 0.0;
  double birth_mass = 0.0;
  int persistent_count = 0;
  int birth_count = 0;
};

Mat2 EmptyCellCovariance(const DynamicGridConfig& config) {
  // Variance of the uniform newborn velocity prior.
  const double v = config.newborn_max_speed;
  return Mat2::Identity() * (v * v / 3.0);
}

}  // namespace

DynamicGrid::DynamicGrid(const GridGeometry& geometry,
                         const DynamicGridConfig& config)
    : config_(config),
      grid_(geometry, config.occupancy_prior, EmptyCellCovariance(config)) {}

double DynamicGrid::CombineOccupancy(double predicted, double occupied_evidence,
                                     double free_evidence) {
  const double conflict = predicted * free_evidence;
  const double occupied = predicted * (1.0 - free_evidence) +
                          (1.0 - predicted) * occupied_evidence;
  return std::clamp(occupied / (1.0 - conflict), 0.0, 1.0);
}

void DynamicGrid::Predict(double dt, std::uint64_t rng_seed) {
  std::mt19937_64 rng(rng_seed);
  std::normal_distribution<double> vel_noise(0.0, config_.process_noise_velocity);
  std::normal_distribution<double> pos_noise(0.0, config_.process_noise_position);
  const GridGeometry& geo = grid_.geometry;
  const Vec2 lo = geo.origin;
  const Vec2 hi = geo.origin + geo.Extent();

  std::size_t kept = 0;
  for (Particle& p : particles_) {
    p.vel.x() += vel_noise(rng);
    p.vel.y() += vel_noise(rng);
    p.pos += p.vel * dt;
    p.pos.x() += pos_noise(rng);
    p.pos.y() += pos_noise(rng);
    p.weight *= config_.survival_probability;
    p.newborn = false;
    const bool inside = p.pos.x() >= lo.x() && p.pos.x() < hi.x() &&
                        p.pos.y() >= lo.y() && p.pos.y() < hi.y();
    if (inside && p.weight >= config_.min_particle_weight) {
      particles_[kept++] = p;
    }
  }
  particles_.resize(kept);
}

void DynamicGrid::Update(const MeasurementGrid& meas, double dt,
                         std::uint64_t rng_seed) {
  if (!(meas.geometry == grid_.geometry) ||
      meas.cells.size() != grid_.cells.size()) {
    throw Error(ErrorCode::kGeometryMismatch,
                "measurement grid geometry does not match the dynamic grid");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorCode::kInvalidArgument, "grid update needs dt > 0");
  }
  const GridGeometry& geo = grid_.geometry;
  const std::size_t n_cells = geo.CellCount();

  // Seed streams for prediction and resampling are split so that adding a
  // particle never shifts the other stream.
  std::seed_seq seq{static_cast<std::uint32_t>(rng_seed),
                    static_cast<std::uint32_t>(rng_seed >> 32)};
  std::array<std::uint64_t, 2> seeds{};
  {
    std::array<std::uint32_t, 4> raw{};
    seq.generate(raw.begin(), raw.end());
    seeds[0] = (static_cast<std::uint64_t>(raw[0]) << 32) | raw[1];
    seeds[1] = (static_cast<std::uint64_t>(raw[2]) << 32) | raw[3];
  }
  Predict(dt, seeds[0]);

  // Bucket particles by cell (counting sort keeps the order stable).
  std::vector<std::uint32_t> cell_of(particles_.size());
  std::vector<std::uint32_t> offsets(n_cells + 1, 0);
  for (std::size_t i = 0; i < particles_.size(); ++i) {
    const Vec2 rel = (particles_[i].pos - geo.origin) / geo.cell_size;
    const int col = std::min(static_cast<int>(rel.x()), geo.width_cells - 1);
    const int row = std::min(static_cast<int>(rel.y()), geo.height_cells - 1);
    cell_of[i] = static_cast<std::uint32_t>(geo.Flat({row, col}));
    ++offsets[cell_of[i] + 1];
  }
  for (std::size_t c = 0; c < n_cells; ++c) offsets[c + 1] += offsets[c];
  std::vector<Particle> bucketed(particles_.size());
  {
    std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
    for (std::size_t i = 0; i < particles_.size(); ++i) {
      bucketed[cursor[cell_of[i]]++] = particles_[i];
    }
  }

  // Measurement update per cell.
  const int cap = config_.max_particles_per_cell;
  std::vector<CellPlan> plans;
  long long planned_total = 0;
  for (std::size_t c = 0; c < n_cells; ++c) {
    const std::uint32_t begin = offsets[c];
    const std::uint32_t end = offsets[c + 1];
    const double occ_ev = meas.cells[c].occupied;
    const double free_ev = meas.cells[c].free;
    if (begin == end && occ_ev <= 0.0) continue;

    double predicted = 0.0;
    for (std::uint32_t i = begin; i < end; ++i) predicted += bucketed[i].weight;
    if (predicted > config_.max_occupancy) {
      const double s = config_.max_occupancy / predicted;
      for (std::uint32_t i = begin; i < end; ++i) bucketed[i].weight *= s;
      predicted = config_.max_occupancy;
    }

    double posterior = predicted;
    if (occ_ev > 0.0 || free_ev > 0.0) {
      posterior = CombineOccupancy(predicted, occ_ev, free_ev);
      if (occ_ev <= 0.0) posterior = std::min(posterior, predicted);
    }
    posterior = std::min(posterior, config_.max_occupancy);

    double birth = 0.0;
    if (occ_ev > 0.0) {
      if (predicted <= 0.0) {
        birth = posterior;
      } else {
        const double pb = config_.birth_probability * (1.0 - predicted);
        birth = posterior * pb / (predicted + pb);
      }
    }
    const double persistent = posterior - birth;

    CellPlan plan;
    plan.cell = c;
    plan.begin = begin;
    plan.end = end;
    plan.persistent_mass = predicted > 0.0 ? persistent : 0.0;
    plan.birth_mass = birth;
    if (plan.persistent_mass > 0.0) {
      plan.persistent_count =
          std::clamp(static_cast<int>(std::ceil(plan.persistent_mass * cap)), 1, cap);
    }
    if (plan.birth_mass > 0.0) {
      plan.birth_count =
          std::clamp(static_cast<int>(std::ceil(plan.birth_mass * cap)), 1, cap);
    }
    if (plan.persistent_count + plan.birth_count > cap) {
      if (plan.persistent_count >= cap) {
        plan.persistent_count = cap - 1;
      }
      plan.birth_count = cap - plan.persistent_count;
      if (plan.persistent_mass <= 0.0) {
        plan.persistent_count = 0;
        plan.birth_count = cap;
      }
    }
    if (plan.persistent_count + plan.birth_count == 0) continue;
    planned_total += plan.persistent_count + plan.birth_count;
    plans.push_back(plan);
  }

  if (planned_total > config_.max_particles_total) {
    const double f = static_cast<double>(config_.max_particles_total) /
                     static_cast<double>(planned_total);
    for (CellPlan& plan : plans) {
      plan.persistent_count = static_cast<int>(std::floor(plan.persistent_count * f));
      plan.birth_count = static_cast<int>(std::floor(plan.birth_count * f));
    }
  }

  // Resample persistent particles, then spawn newborns, cell by cell.
  std::mt19937_64 rng(seeds[1]);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Particle> next;
  next.reserve(static_cast<std::size_t>(std::min<long long>(
      planned_total, config_.max_particles_total)));
  for (const CellPlan& plan : plans) {
    const int n = plan.persistent_count;
    if (n > 0 && plan.end > plan.begin) {
      double total = 0.0;
      for (std::uint32_t i = plan.begin; i < plan.end; ++i) {
        total += bucketed[i].weight;
      }
      const double step = total / n;
      double u = unit(rng) * step;
      double cumulative = bucketed[plan.begin].weight;
      std::uint32_t i = plan.begin;
      for (int k = 0; k < n; ++k) {
        while (u > cumulative && i + 1 < plan.end) {
          ++i;
          cumulative += bucketed[i].weight;
        }
        Particle p = bucketed[i];
        p.weight = plan.persistent_mass / n;
        next.push_back(p);
        u += step;
      }
    }
    if (plan.birth_count > 0) {
      const CellIndex idx = geo.Unflat(plan.cell);
      const Vec2 corner =
          geo.origin + Vec2(idx.col * geo.cell_size, idx.row * geo.cell_size);
      const double vmax = config_.newborn_max_speed;
      for (int k = 0; k < plan.birth_count; ++k) {
        Particle p;
        p.pos = corner + Vec2(unit(rng) * geo.cell_size, unit(rng) * geo.cell_size);
        p.vel = Vec2((2.0 * unit(rng) - 1.0) * vmax, (2.0 * unit(rng) - 1.0) * vmax);
        p.weight = plan.birth_mass / plan.birth_count;
        p.newborn = true;
        next.push_back(p);
      }
    }
  }
  particles_ = std::move(next);
  grid_.timestamp = meas.timestamp;
  ComputeMoments();
}

void DynamicGrid::ComputeMoments() {
  const GridGeometry& geo = grid_.geometry;
  GridCell empty;
  empty.occupancy = config_.occupancy_prior;
  empty.vel_cov = EmptyCellCovariance(config_);
  std::fill(grid_.cells.begin(), grid_.cells.end(), empty);

  const std::size_t n_cells = geo.CellCount();
  const bool persistent_only = config_.velocity_from_persistent_only;
  std::vector<double> w_sum(n_cells, 0.0);
  std::vector<double> v_sum(n_cells, 0.0);
  std::vector<double> newborn_sum(n_cells, 0.0);
  std::vector<Vec2> moment(n_cells, Vec2::Zero());
  std::vector<std::size_t> flat(particles_.size());
  for (std::size_t i = 0; i < particles_.size(); ++i) {
    const Particle& p = particles_[i];
    const Vec2 rel = (p.pos - geo.origin) / geo.cell_size;
    const int col = std::clamp(static_cast<int>(rel.x()), 0, geo.width_cells - 1);
    const int row = std::clamp(static_cast<int>(rel.y()), 0, geo.height_cells - 1);
    flat[i] = geo.Flat({row, col});
    w_sum[flat[i]] += p.weight;
    ++grid_.cells[flat[i]].particle_count;
    if (persistent_only && p.newborn) {
      newborn_sum[flat[i]] += p.weight;
      continue;
    }
    v_sum[flat[i]] += p.weight;
    moment[flat[i]] += p.weight * p.vel;
  }
  for (std::size_t c = 0; c < n_cells; ++c) {
    GridCell& cell = grid_.cells[c];
    if (cell.particle_count == 0) continue;
    cell.occupancy = std::clamp(w_sum[c], 0.0, 1.0);
    if (v_sum[c] > 0.0) {
      cell.vel_mean = moment[c] / (v_sum[c] + newborn_sum[c]);
      cell.vel_cov = Mat2::Zero();
    }
  }
  for (std::size_t i = 0; i < particles_.size(); ++i) {
    if (persistent_only && particles_[i].newborn) continue;
    GridCell& cell = grid_.cells[flat[i]];
    const Vec2 d = particles_[i].vel - cell.vel_mean;
    cell.vel_cov += particles_[i].weight * d * d.transpose();
  }
  for (std::size_t c = 0; c < n_cells; ++c) {
    GridCell& cell = grid_.cells[c];
    if (v_sum[c] <= 0.0) continue;
    cell.vel_cov /= v_sum[c];
    cell.vel_cov = 0.5 * (cell.vel_cov + cell.vel_cov.transpose()).eval();
  }
}

}  // namespace gridfusion
