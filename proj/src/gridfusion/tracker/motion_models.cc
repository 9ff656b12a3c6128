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

#include "gridfusion/tracker/motion_models.h"

#include <cmath>

namespace gridfusion {
namespace {

using Jacobian = Eigen::Matrix<double, 5, 5>;

StateCov ProcessNoise(double theta, double dt, const MotionNoise& noise) {
  Eigen::Matrix<double, 5, 2> g = Eigen::Matrix<double, 5, 2>::Zero();
  const double half_dt2 = 0.5 * dt * dt;
  g(0, 0) = half_dt2 * std::cos(theta);
  g(1, 0) = half_dt2 * std::sin(theta);
  g(3, 0) = dt;
  g(2, 1) = half_dt2;
  g(4, 1) = dt;
  Eigen::Matrix2d q = Eigen::Matrix2d::Zero();
  q(0, 0) = noise.accel_sigma * noise.accel_sigma;
  q(1, 1) = noise.yaw_accel_sigma * noise.yaw_accel_sigma;
  return g * q * g.transpose();
}

BoxHypothesis Propagate(const BoxHypothesis& state, const Jacobian& f,
                        double dt, const MotionNoise& noise) {
  BoxHypothesis out = state;
  out.state_cov = f * state.state_cov * f.transpose() +
                  ProcessNoise(state.orientation, dt, noise);
  out.state_cov = 0.5 * (out.state_cov + out.state_cov.transpose()).eval();
  out.timestamp = state.timestamp + dt;
  return out;
}

}  // namespace

BoxHypothesis CvPredict(const BoxHypothesis& state, double dt,
                        const MotionNoise& noise) {
  if (dt <= 0.0) return state;
  const double c = std::cos(state.orientation);
  const double s = std::sin(state.orientation);
  const double v = state.speed;
  Jacobian f = Jacobian::Identity();
  f(0, 2) = -v * s * dt;
  f(0, 3) = c * dt;
  f(1, 2) = v * c * dt;
  f(1, 3) = s * dt;
  BoxHypothesis out = Propagate(state, f, dt, noise);
  out.center = state.center + v * dt * Vec2(c, s);
  return out;
}

BoxHypothesis CtrvPredict(const BoxHypothesis& state, double dt,
                          const MotionNoise& noise) {
  if (dt <= 0.0) return state;
  const double w = state.yaw_rate;
  const double v = state.speed;
  const double th = state.orientation;
  const double th1 = th + w * dt;
  Jacobian f = Jacobian::Identity();
  Vec2 delta;
  if (std::abs(w) < kCtrvYawRateThreshold) {
    const double c = std::cos(th);
    const double s = std::sin(th);
    delta = v * dt * Vec2(c, s);
    f(0, 2) = -v * s * dt;
    f(0, 3) = c * dt;
    f(0, 4) = -0.5 * v * dt * dt * s;
    f(1, 2) = v * c * dt;
    f(1, 3) = s * dt;
    f(1, 4) = 0.5 * v * dt * dt * c;
  } else {
    const double ds = std::sin(th1) - std::sin(th);
    const double dc = std::cos(th) - std::cos(th1);
    delta = (v / w) * Vec2(ds, dc);
    f(0, 2) = (v / w) * (std::cos(th1) - std::cos(th));
    f(0, 3) = ds / w;
    f(0, 4) = v * dt * std::cos(th1) / w - v * ds / (w * w);
    f(1, 2) = (v / w) * ds;
    f(1, 3) = dc / w;
    f(1, 4) = v * dt * std::sin(th1) / w - v * dc / (w * w);
  }
  f(2, 4) = dt;
  BoxHypothesis out = Propagate(state, f, dt, noise);
  out.center = state.center + delta;
  out.orientation = NormalizeAngle(th1);
  return out;
}

}  // namespace gridfusion
