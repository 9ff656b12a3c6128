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

#ifndef GRIDFUSION_COMMON_GEOMETRY_H_
#define GRIDFUSION_COMMON_GEOMETRY_H_

#include <array>
#include <cmath>
#include <numbers>
#include <optional>

#include "Eigen/Core"

namespace gridfusion {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

inline constexpr double kPi = std::numbers::pi;

// Wraps an angle into (-pi, pi].
double NormalizeAngle(double angle);

// Signed smallest difference a - b, wrapped into (-pi, pi].
inline double AngleDiff(double a, double b) { return NormalizeAngle(a - b); }

struct Pose2D {
  Vec2 position = Vec2::Zero();
  double heading = 0.0;
};

// Corner order used throughout: front-left, front-right, rear-right,
// rear-left, where "front" is +x and "left" is +y of the box frame.
enum class Corner { kFrontLeft = 0, kFrontRight = 1, kRearRight = 2, kRearLeft = 3 };

struct OrientedBox {
  Vec2 center = Vec2::Zero();
  double orientation = 0.0;
  double length = 0.0;
  double width = 0.0;

  Vec2 Axis() const { return {std::cos(orientation), std::sin(orientation)}; }
  Vec2 Normal() const { return {-std::sin(orientation), std::cos(orientation)}; }

  // Point expressed in box coordinates (x along orientation).
  Vec2 ToLocal(const Vec2& world) const;
  Vec2 ToWorld(const Vec2& local) const;

  std::array<Vec2, 4> Corners() const;

  // Closed-rectangle test after inflating every side by margin.
  bool Contains(const Vec2& point, double margin = 0.0) const;

  // Closest point of the (filled) rectangle to point.
  Vec2 ClosestPoint(const Vec2& point) const;
};

// Distance along the ray origin + t * direction (unit) to the first crossing
// of the rectangle boundary, if any with t > 0.
std::optional<double> RayBoxIntersection(const Vec2& origin,
                                         const Vec2& direction,
                                         const OrientedBox& box);

// True if the open segment a->b crosses the rectangle interior or boundary.
bool SegmentIntersectsBox(const Vec2& a, const Vec2& b, const OrientedBox& box);

}  // namespace gridfusion

#endif  // GRIDFUSION_COMMON_GEOMETRY_H_
