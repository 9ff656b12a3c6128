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

#include "gridfusion/common/geometry.h"

#include <algorithm>
#include <limits>

namespace gridfusion {
namespace {

// Liang-Barsky clip of origin + t*dir against the box in local coordinates.
// Returns the entry/exit parameters if the line meets the rectangle.
std::optional<std::pair<double, double>> ClipLocal(const Vec2& origin,
                                                   const Vec2& dir,
                                                   const OrientedBox& box) {
  const Vec2 o = box.ToLocal(origin);
  const Vec2 d(dir.dot(box.Axis()), dir.dot(box.Normal()));
  const double half[2] = {0.5 * box.length, 0.5 * box.width};
  double t_enter = -std::numeric_limits<double>::infinity();
  double t_exit = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 2; ++k) {
    if (std::abs(d[k]) < 1e-15) {
      if (o[k] < -half[k] || o[k] > half[k]) return std::nullopt;
      continue;
    }
    double t0 = (-half[k] - o[k]) / d[k];
    double t1 = (half[k] - o[k]) / d[k];
    if (t0 > t1) std::swap(t0, t1);
    t_enter = std::max(t_enter, t0);
    t_exit = std::min(t_exit, t1);
  }
  if (t_enter > t_exit) return std::nullopt;
  return std::make_pair(t_enter, t_exit);
}

}  // namespace

double NormalizeAngle(double angle) {
  double wrapped = std::fmod(angle + kPi, 2.0 * kPi);
  if (wrapped <= 0.0) wrapped += 2.0 * kPi;
  return wrapped - kPi;
}

Vec2 OrientedBox::ToLocal(const Vec2& world) const {
  const Vec2 d = world - center;
  const double c = std::cos(orientation);
  const double s = std::sin(orientation);
  return {d.x() * c + d.y() * s, -d.x() * s + d.y() * c};
}

Vec2 OrientedBox::ToWorld(const Vec2& local) const {
  return center + local.x() * Axis() + local.y() * Normal();
}

std::array<Vec2, 4> OrientedBox::Corners() const {
  const double hl = 0.5 * length;
  const double hw = 0.5 * width;
  return {ToWorld({hl, hw}), ToWorld({hl, -hw}), ToWorld({-hl, -hw}),
          ToWorld({-hl, hw})};
}

bool OrientedBox::Contains(const Vec2& point, double margin) const {
  const Vec2 p = ToLocal(point);
  return std::abs(p.x()) <= 0.5 * length + margin &&
         std::abs(p.y()) <= 0.5 * width + margin;
}

Vec2 OrientedBox::ClosestPoint(const Vec2& point) const {
  const Vec2 p = ToLocal(point);
  const Vec2 clamped(std::clamp(p.x(), -0.5 * length, 0.5 * length),
                     std::clamp(p.y(), -0.5 * width, 0.5 * width));
  return ToWorld(clamped);
}

std::optional<double> RayBoxIntersection(const Vec2& origin,
                                         const Vec2& direction,
                                         const OrientedBox& box) {
  const auto clip = ClipLocal(origin, direction, box);
  if (!clip) return std::nullopt;
  const auto [t_enter, t_exit] = *clip;
  if (t_enter > 0.0) return t_enter;
  // Origin inside the box: the ray leaves through the boundary.
  if (t_exit > 0.0) return 0.0;
  return std::nullopt;
}

bool SegmentIntersectsBox(const Vec2& a, const Vec2& b, const OrientedBox& box) {
  const auto clip = ClipLocal(a, b - a, box);
  if (!clip) return false;
  return clip->first <= 1.0 && clip->second >= 0.0;
}

}  // namespace gridfusion
