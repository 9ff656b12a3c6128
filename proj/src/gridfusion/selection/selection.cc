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

#include "gridfusion/selection/selection.h"

#include "gridfusion/association/association.h"
#include "gridfusion/common/error.h"

namespace gridfusion {

int CountDynamicCells(const GridMap& grid, const OrientedBox& box,
                      const DynamicCellConfig& config) {
  int count = 0;
  for (const CellIndex& idx : CellsUnderFootprint(grid, box, 0.0)) {
    if (ClassifyDynamic(grid.at(idx), config)) ++count;
  }
  return count;
}

Selection SelectBest(const GridMap& grid, const CandidateSet& candidates,
                     const SelectionConfig& config) {
  if (candidates.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "empty candidate set");
  }
  Selection best;
  bool have = false;
  for (const CandidateLabel label : {CandidateLabel::kFused, CandidateLabel::kTracking,
                                     CandidateLabel::kPredicted}) {
    const auto& candidate = candidates.Get(label);
    if (!candidate) continue;
    const int support = CountDynamicCells(grid, candidate->Box(), config.dynamic);
    best.counts[static_cast<int>(label)] = support;
    if (!have || support > best.support) {
      have = true;
      best.label = label;
      best.box = *candidate;
      best.support = support;
    }
  }
  return best;
}

std::optional<Selection> Select(const GridMap& grid, const CandidateSet& candidates,
                                const SelectionConfig& config, SelectionState& state) {
  Selection best = SelectBest(grid, candidates, config);
  if (best.support < config.min_support) {
    ++state.low_support_streak;
  } else {
    state.low_support_streak = 0;
  }
  if (state.low_support_streak >= config.patience) return std::nullopt;
  return best;
}

}  // namespace gridfusion
