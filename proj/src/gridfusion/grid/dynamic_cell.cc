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

#include "gridfusion/grid/dynamic_cell.h"

#include <cmath>

#include "gridfusion/common/error.h"

namespace gridfusion {

double MahalanobisToStatic(const GridCell& cell, double covariance_epsilon) {
  if (!cell.vel_mean.allFinite() || !cell.vel_cov.allFinite() ||
      !std::isfinite(covariance_epsilon)) {
    throw Error(ErrorCode::kInvalidArgument,
                "non-finite cell velocity or covariance");
  }
  const double a = cell.vel_cov(0, 0) + covariance_epsilon;
  const double b = 0.5 * (cell.vel_cov(0, 1) + cell.vel_cov(1, 0));
  const double c = cell.vel_cov(1, 1) + covariance_epsilon;
  const double det = a * c - b * b;
  if (!(det > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "velocity covariance not positive definite");
  }
  const double vx = cell.vel_mean.x();
  const double vy = cell.vel_mean.y();
  const double quad = (c * vx * vx - 2.0 * b * vx * vy + a * vy * vy) / det;
  return std::sqrt(std::max(quad, 0.0));
}

bool ClassifyDynamic(const GridCell& cell, const DynamicCellConfig& config) {
  if (!(cell.occupancy > config.occupancy_threshold)) return false;
  return MahalanobisToStatic(cell, config.covariance_epsilon) >
         config.mahalanobis_threshold;
}

}  // namespace gridfusion
