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

#ifndef GRIDFUSION_FUSION_FUSION_H_
#define GRIDFUSION_FUSION_FUSION_H_

#include <optional>

#include "gridfusion/association/association.h"
#include "gridfusion/tracker/box_hypothesis.h"
#include "gridfusion/tracker/motion_models.h"

namespace gridfusion {

struct FusionConfig {
  // Below this group speed the velocity direction is not trusted.
  double min_speed_for_heading = 0.5;
  // Upper bound on HeadingStd for the velocity direction to be used; a
  // non-positive value disables the check.
  double max_heading_std = 0.04;
  MotionNoise prediction_noise;
};

enum class CandidateLabel { kTracking = 0, kFused = 1, kPredicted = 2 };

const char* CandidateLabelName(CandidateLabel label);

// The competing hypotheses for one object in one frame.
struct CandidateSet {
  std::optional<BoxHypothesis> tracking;
  std::optional<BoxHypothesis> fused;
  std::optional<BoxHypothesis> predicted;
  double timestamp = 0.0;

  int size() const {
    return static_cast<int>(tracking.has_value()) +
           static_cast<int>(fused.has_value()) +
           static_cast<int>(predicted.has_value());
  }
  bool empty() const { return size() == 0; }
  const std::optional<BoxHypothesis>& Get(CandidateLabel label) const;
};

// Angular standard error of the group's mean velocity direction: the
// cross-heading velocity standard error over the speed. Infinite for a
// stationary group or one with fewer than two cells, whose spread cannot be
// estimated.
double HeadingStd(const CellGroup& group);

// Orientation taken from the group's mean velocity. Groups that are empty or
// slower than config.min_speed_for_heading leave the box untouched.
BoxHypothesis FuseOrientation(const BoxHypothesis& box, const CellGroup& group,
                              const FusionConfig& config = {});

struct VisibleCornerResult {
  Corner corner = Corner::kFrontLeft;
  // Set when the viewpoint lies inside the box.
  bool degenerate = false;
};

// Corner nearest to the viewpoint; ties go to the lowest corner index.
VisibleCornerResult VisibleCorner(const OrientedBox& box, const Vec2& ego_position);

// Moves the box (keeping orientation and extent) so that its corner visible
// from ego coincides with the same corner of the group's bounding rectangle
// taken along the box axes.
BoxHypothesis FusePosition(const BoxHypothesis& box_rotated, const CellGroup& group,
                           const Vec2& ego_position);

// FusePosition(FuseOrientation(base)) or nullopt for an empty group.
std::optional<BoxHypothesis> FuseHypothesis(const BoxHypothesis& base,
                                            const CellGroup& group,
                                            const Vec2& ego_position,
                                            const FusionConfig& config = {});

// tracking = track; fused from track and group; predicted = CTRV prediction
// of the previously selected hypothesis. Without a track only the predicted
// candidate is produced. All candidates carry the reference track id and
// extent.
CandidateSet BuildCandidates(const std::optional<BoxHypothesis>& track,
                             const CellGroup& group,
                             const std::optional<BoxHypothesis>& previous_selected,
                             double dt, const Vec2& ego_position,
                             double timestamp, const FusionConfig& config = {});

}  // namespace gridfusion

#endif  // GRIDFUSION_FUSION_FUSION_H_
