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

#ifndef GRIDFUSION_TRACKER_MOTION_MODELS_H_
#define GRIDFUSION_TRACKER_MOTION_MODELS_H_

#include "gridfusion/tracker/box_hypothesis.h"

namespace gridfusion {

// Below this |yaw_rate| (rad/s) CTRV falls back to straight-line motion.
inline constexpr double kCtrvYawRateThreshold = 1e-6;

struct MotionNoise {
  double accel_sigma = 2.0;      // m/s^2, longitudinal
  double yaw_accel_sigma = 0.5;  // rad/s^2
};

// Constant velocity along the current orientation. Orientation, speed and
// yaw rate are left untouched. No noise is injected for dt == 0.
BoxHypothesis CvPredict(const BoxHypothesis& state, double dt,
                        const MotionNoise& noise = {});

// Constant turn rate and velocity, covariance propagated through the
// Jacobian of the motion.
BoxHypothesis CtrvPredict(const BoxHypothesis& state, double dt,
                          const MotionNoise& noise = {});

}  // namespace gridfusion

#endif  // GRIDFUSION_TRACKER_MOTION_MODELS_H_
