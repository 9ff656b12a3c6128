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

#ifndef GRIDFUSION_TRACKER_BOX_FIT_H_
#define GRIDFUSION_TRACKER_BOX_FIT_H_

#include <optional>
#include <span>

#include "gridfusion/tracker/box_hypothesis.h"

namespace gridfusion {

struct BoxFitConfig {
  int min_points = 5;
};

// Minimum-area enclosing rectangle of one pre-clustered object (rotating
// calipers over the convex hull). Orientation follows the longer side and is
// reported in (-pi/2, pi/2]. Returns nullopt for clusters smaller than
// config.min_points.
std::optional<Detection> BoxFit(std::span<const Vec2> points,
                                const BoxFitConfig& config = {});

// Andrew's monotone chain; counter-clockwise, no repeated end point.
std::vector<Vec2> ConvexHull(std::span<const Vec2> points);

}  // namespace gridfusion

#endif  // GRIDFUSION_TRACKER_BOX_FIT_H_
