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

#include "gridfusion/tracker/box_fit.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace gridfusion {
namespace {

double Cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

}  // namespace

std::vector<Vec2> ConvexHull(std::span<const Vec2> points) {
  std::vector<Vec2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Vec2& p : pts) {
    while (k >= 2 && Cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && Cross(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0.0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  return hull;
}

std::optional<Detection> BoxFit(std::span<const Vec2> points,
                                const BoxFitConfig& config) {
  if (static_cast<int>(points.size()) < config.min_points || points.empty()) {
    return std::nullopt;
  }
  const std::vector<Vec2> hull = ConvexHull(points);

  // Candidate directions: every hull edge. Degenerate hulls (one point or a
  // segment) fall back to the segment direction.
  std::vector<Vec2> directions;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vec2 e = hull[(i + 1) % hull.size()] - hull[i];
    if (e.norm() > 0.0) directions.push_back(e.normalized());
  }
  if (directions.empty()) directions.push_back(Vec2::UnitX());

  double best_area = std::numeric_limits<double>::infinity();
  Vec2 best_axis = Vec2::UnitX();
  Vec2 best_min, best_max;
  for (const Vec2& u : directions) {
    const Vec2 n(-u.y(), u.x());
    Vec2 lo(std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity());
    Vec2 hi = -lo;
    for (const Vec2& p : hull) {
      const Vec2 q(p.dot(u), p.dot(n));
      lo = lo.cwiseMin(q);
      hi = hi.cwiseMax(q);
    }
    const double area = (hi.x() - lo.x()) * (hi.y() - lo.y());
    if (area < best_area) {
      best_area = area;
      best_axis = u;
      best_min = lo;
      best_max = hi;
    }
  }

  const Vec2 n(-best_axis.y(), best_axis.x());
  const Vec2 mid = 0.5 * (best_min + best_max);
  const Vec2 size = best_max - best_min;
  Detection det;
  det.source = DetectionSource::kLaserBoxFit;
  det.position = mid.x() * best_axis + mid.y() * n;
  double heading = std::atan2(best_axis.y(), best_axis.x());
  Vec2 extent = size;
  if (size.y() > size.x()) {
    heading += 0.5 * kPi;
    extent = Vec2(size.y(), size.x());
  }
  det.orientation = 0.5 * NormalizeAngle(2.0 * heading);
  det.extent = extent;
  return det;
}

}  // namespace gridfusion
