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

#ifndef GRIDFUSION_SELECTION_SELECTION_H_
#define GRIDFUSION_SELECTION_SELECTION_H_

#include <array>
#include <optional>

#include "gridfusion/fusion/fusion.h"
#include "gridfusion/grid/dynamic_cell.h"
#include "gridfusion/grid/grid_map.h"

namespace gridfusion {

struct SelectionConfig {
  DynamicCellConfig dynamic;
  // An object whose best support stays below min_support for `patience`
  // consecutive frames is terminated.
  int min_support = 3;
  int patience = 3;
};

// Dynamic cells whose centers lie inside the box. Static cells never count.
int CountDynamicCells(const GridMap& grid, const OrientedBox& box,
                      const DynamicCellConfig& config);

struct Selection {
  CandidateLabel label = CandidateLabel::kTracking;
  BoxHypothesis box;
  int support = 0;
  // Support per label (tracking, fused, predicted); -1 when absent.
  std::array<int, 3> counts = {-1, -1, -1};
};

// Argmax of dynamic-cell support, ties broken fused > tracking > predicted.
// The candidate set must not be empty.
Selection SelectBest(const GridMap& grid, const CandidateSet& candidates,
                     const SelectionConfig& config);

struct SelectionState {
  int low_support_streak = 0;
};

// SelectBest plus the termination rule; nullopt once the object is
// terminated (and for as long as its support stays low).
std::optional<Selection> Select(const GridMap& grid, const CandidateSet& candidates,
                                const SelectionConfig& config, SelectionState& state);

}  // namespace gridfusion

#endif  // GRIDFUSION_SELECTION_SELECTION_H_
