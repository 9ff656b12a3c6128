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

#include "gridfusion/fusion/fusion.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gridfusion {

const char* CandidateLabelName(CandidateLabel label) {
  switch (label) {
    case CandidateLabel::kTracking:
      return "tracking";
    case CandidateLabel::kFused:
      return "fused";
    case CandidateLabel::kPredicted:
      return "predicted";
  }
  return "unknown";
}

const std::optional<BoxHypothesis>& CandidateSet::Get(CandidateLabel label) const {
  switch (label) {
    case CandidateLabel::kTracking:
      return tracking;
    case CandidateLabel::kFused:
      return fused;
    case CandidateLabel::kPredicted:
      break;
  }
  return predicted;
}

double HeadingStd(const CellGroup& group) {
  const double speed = group.mean_velocity.norm();
  if (group.count < 2 || !(speed > 0.0)) return std::numeric_limits<double>::infinity();
  const Vec2 normal(-group.mean_velocity.y() / speed, group.mean_velocity.x() / speed);
  const double var = std::max(0.0, normal.dot(group.velocity_cov * normal)) / group.count;
  return std::sqrt(var) / speed;
}

BoxHypothesis FuseOrientation(const BoxHypothesis& box, const CellGroup& group,
                              const FusionConfig& config) {
  BoxHypothesis out = box;
  if (group.empty()) return out;
  const Vec2& v = group.mean_velocity;
  if (!(v.norm() > config.min_speed_for_heading)) return out;
  if (config.max_heading_std > 0.0 && !(HeadingStd(group) <= config.max_heading_std)) {
    return out;
  }
  out.orientation = std::atan2(v.y(), v.x());
  return out;
}

VisibleCornerResult VisibleCorner(const OrientedBox& box, const Vec2& ego_position) {
  VisibleCornerResult result;
  result.degenerate = box.Contains(ego_position);
  const auto corners = box.Corners();
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) {
    const double d = (corners[i] - ego_position).norm();
    if (d < best) {
      best = d;
      result.corner = static_cast<Corner>(i);
    }
  }
  return result;
}

BoxHypothesis FusePosition(const BoxHypothesis& box_rotated, const CellGroup& group,
                           const Vec2& ego_position) {
  if (group.empty()) return box_rotated;
  const OrientedBox box = box_rotated.Box();
  const AxisBounds b = CellBoundsInFrame(group.cell_centers, group.cell_size, box);
  const double hl = 0.5 * box.length;
  const double hw = 0.5 * box.width;
  Vec2 box_corner;
  Vec2 group_corner;
  switch (VisibleCorner(box, ego_position).corner) {
    case Corner::kFrontLeft:
      box_corner = {hl, hw};
      group_corner = {b.max.x(), b.max.y()};
      break;
    case Corner::kFrontRight:
      box_corner = {hl, -hw};
      group_corner = {b.max.x(), b.min.y()};
      break;
    case Corner::kRearRight:
      box_corner = {-hl, -hw};
      group_corner = {b.min.x(), b.min.y()};
      break;
    case Corner::kRearLeft:
      box_corner = {-hl, hw};
      group_corner = {b.min.x(), b.max.y()};
      break;
  }
  BoxHypothesis out = box_rotated;
  out.center = box.ToWorld(group_corner - box_corner);
  return out;
}

std::optional<BoxHypothesis> FuseHypothesis(const BoxHypothesis& base,
                                            const CellGroup& group,
                                            const Vec2& ego_position,
                                            const FusionConfig& config) {
  if (group.empty()) return std::nullopt;
  return FusePosition(FuseOrientation(base, group, config), group, ego_position);
}

CandidateSet BuildCandidates(const std::optional<BoxHypothesis>& track,
                             const CellGroup& group,
                             const std::optional<BoxHypothesis>& previous_selected,
                             double dt, const Vec2& ego_position,
                             double timestamp, const FusionConfig& config) {
  CandidateSet set;
  set.timestamp = timestamp;
  if (track) {
    set.tracking = *track;
    set.tracking->timestamp = timestamp;
    set.fused = FuseHypothesis(*track, group, ego_position, config);
  }
  if (previous_selected) {
    BoxHypothesis predicted =
        CtrvPredict(*previous_selected, dt, config.prediction_noise);
    predicted.timestamp = timestamp;
    if (track) {
      predicted.track_id = track->track_id;
      predicted.length = track->length;
      predicted.width = track->width;
    }
    set.predicted = predicted;
  }
  if (set.fused) set.fused->timestamp = timestamp;
  return set;
}

}  // namespace gridfusion
