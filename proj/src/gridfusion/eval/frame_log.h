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

#ifndef GRIDFUSION_EVAL_FRAME_LOG_H_
#define GRIDFUSION_EVAL_FRAME_LOG_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gridfusion/common/geometry.h"
#include "gridfusion/fusion/fusion.h"

namespace gridfusion {

struct TruthRecord {
  int frame = 0;
  double timestamp = 0.0;
  std::string object_id;
  OrientedBox box;
  double speed = 0.0;
  double yaw_rate = 0.0;
  bool evaluate = true;
};

struct HypothesisRecord {
  int frame = 0;
  double timestamp = 0.0;
  int track_id = -1;
  OrientedBox box;
  double speed = 0.0;
  double yaw_rate = 0.0;
  double existence = 1.0;
  // Selection decision; only meaningful for fused records.
  CandidateLabel label = CandidateLabel::kTracking;
  int support = -1;
  std::array<int, 3> counts = {-1, -1, -1};
};

struct FrameLog {
  std::string scenario_id;
  std::string sensors = "radar";
  std::uint64_t seed = 0;
  bool fusion_enabled = true;
  std::vector<double> frame_times;
  std::vector<TruthRecord> truth;
  std::vector<HypothesisRecord> tracking;  // O_T
  std::vector<HypothesisRecord> fused;     // O_F
};

// Line-oriented text format, one record per line:
//   FRAME <frame> <t>
//   GT <frame> <t> <object> <x> <y> <theta> <length> <width> <speed> <yaw_rate> <evaluate>
//   OT <frame> <t> <track> <x> <y> <theta> <length> <width> <speed> <yaw_rate> <existence>
//   OF <frame> <t> <track> <x> <y> <theta> <length> <width> <speed> <yaw_rate> <label>
//      <support> <count_tracking> <count_fused> <count_predicted>
// preceded by "scenario", "sensors", "seed" and "fusion" header lines.
void WriteFrameLog(std::ostream& out, const FrameLog& log);
void WriteFrameLogFile(const std::string& path, const FrameLog& log);

// Throws Error(kParse) with the offending line number.
FrameLog ReadFrameLog(std::istream& in, const std::string& source_name = "<stream>");
FrameLog ReadFrameLogFile(const std::string& path);

}  // namespace gridfusion

#endif  // GRIDFUSION_EVAL_FRAME_LOG_H_
