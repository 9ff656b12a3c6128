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

#ifndef GRIDFUSION_TRACKER_BOX_HYPOTHESIS_H_
#define GRIDFUSION_TRACKER_BOX_HYPOTHESIS_H_

#include <cmath>
#include <optional>

#include "Eigen/Core"
#include "gridfusion/common/geometry.h"

namespace gridfusion {

// State order of the covariance: x, y, orientation, speed, yaw_rate.
using StateCov = Eigen::Matrix<double, 5, 5>;

struct BoxHypothesis {
  int track_id = -1;
  Vec2 center = Vec2::Zero();
  double orientation = 0.0;
  double length = 4.5;
  double width = 1.8;
  double speed = 0.0;
  double yaw_rate = 0.0;
  StateCov state_cov = StateCov::Identity();
  double timestamp = 0.0;
  double existence = 1.0;

  OrientedBox Box() const { return {center, orientation, length, width}; }
  bool IsFinite() const {
    return center.allFinite() && std::isfinite(orientation) &&
           std::isfinite(speed) && std::isfinite(yaw_rate) &&
           state_cov.allFinite();
  }
};

enum class DetectionSource { kRadar, kLaserBoxFit };

struct Detection {
  Vec2 position = Vec2::Zero();
  std::optional<double> orientation;
  // (length, width), length >= width.
  std::optional<Vec2> extent;
  DetectionSource source = DetectionSource::kRadar;
  double timestamp = 0.0;
};

}  // namespace gridfusion

#endif  // GRIDFUSION_TRACKER_BOX_HYPOTHESIS_H_
