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

#ifndef GRIDFUSION_GRID_DYNAMIC_GRID_H_
#define GRIDFUSION_GRID_DYNAMIC_GRID_H_

#include <cstdint>
#include <vector>

#include "gridfusion/grid/grid_map.h"

namespace gridfusion {

struct Particle {
  Vec2 pos = Vec2::Zero();
  Vec2 vel = Vec2::Zero();
  double weight = 0.0;
  // Set for particles spawned in the latest update.
  bool newborn = false;
};

struct DynamicGridConfig {
  // Occupancy reported for cells that hold no particles.
  double occupancy_prior = 0.0;
  double max_occupancy = 0.99;
  int max_particles_per_cell = 50;
  int max_particles_total = 200000;
  // Per-update standard deviations of the random walk on velocity and the
  // position jitter of the constant-velocity prediction.
  double process_noise_velocity = 0.5;
  double process_noise_position = 0.02;
  double survival_probability = 0.95;
  // Prior probability that occupied evidence comes from a new object.
  double birth_probability = 0.05;
  // Newborn velocities are uniform over [-v, v]^2.
  double newborn_max_speed = 20.0;
  double min_particle_weight = 1e-6;
  // Velocity moments from the samples of particles that survived at least
  // one prediction. Newborn mass enters through its prior (zero mean, uniform
  // covariance) instead of its samples, so cells holding only newborns report
  // zero velocity with the prior covariance.
  bool velocity_from_persistent_only = true;
};

// Particle-filter estimate of per-cell occupancy and velocity with a
// constant-velocity motion model. The map exposed by grid() is a snapshot
// that stays valid until the next Update().
//
// Per cell the predicted particle mass is combined with the measurement as
// masses over {occupied, free, unknown}; the posterior occupied mass is split
// between surviving particles and newborns, and each cell is resampled back
// to a bounded particle count.
class DynamicGrid {
 public:
  DynamicGrid(const GridGeometry& geometry, const DynamicGridConfig& config = {});

  // Throws Error(kGeometryMismatch) if meas does not share the grid geometry,
  // Error(kInvalidArgument) if dt <= 0. Deterministic for a fixed seed.
  void Update(const MeasurementGrid& meas, double dt, std::uint64_t rng_seed);

  const GridMap& grid() const { return grid_; }
  const std::vector<Particle>& particles() const { return particles_; }
  const DynamicGridConfig& config() const { return config_; }

  // Posterior occupied mass for predicted mass `predicted` and the
  // measurement masses; exposed for tests.
  static double CombineOccupancy(double predicted, double occupied_evidence,
                                 double free_evidence);

 private:
  void Predict(double dt, std::uint64_t rng_seed);
  void ComputeMoments();

  DynamicGridConfig config_;
  GridMap grid_;
  std::vector<Particle> particles_;  // grouped by cell after each Update
};

}  // namespace gridfusion

#endif  // GRIDFUSION_GRID_DYNAMIC_GRID_H_
