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

#include "gridfusion/eval/frame_log.h"

#include <charconv>
#include <fstream>
#include <sstream>

#include "gridfusion/common/error.h"

namespace gridfusion {

namespace {

std::string Num(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

void WriteBox(std::ostream& out, const OrientedBox& b) {
  out << ' ' << Num(b.center.x()) << ' ' << Num(b.center.y()) << ' ' << Num(b.orientation)
      << ' ' << Num(b.length) << ' ' << Num(b.width);
}

int LabelFromName(const std::string& name) {
  for (int i = 0; i < 3; ++i) {
    if (name == CandidateLabelName(static_cast<CandidateLabel>(i))) return i;
  }
  return -1;
}

class LineParser {
 public:
  LineParser(const std::string& line, const std::string& source, int line_no)
      : in_(line), source_(source), line_no_(line_no) {}

  [[noreturn]] void Fail(const std::string& what) const {
    throw Error(ErrorCode::kParse, source_ + ":" + std::to_string(line_no_) + ": " + what);
  }

  std::string Word(const char* field) {
    std::string w;
    if (!(in_ >> w)) Fail(std::string("missing field '") + field + "'");
    return w;
  }

  double Double(const char* field) {
    const std::string w = Word(field);
    double v = 0.0;
    const auto r = std::from_chars(w.data(), w.data() + w.size(), v);
    if (r.ec != std::errc() || r.ptr != w.data() + w.size()) {
      Fail(std::string("field '") + field + "': not a number: '" + w + "'");
    }
    return v;
  }

  long long Int(const char* field) {
    const std::string w = Word(field);
    long long v = 0;
    const auto r = std::from_chars(w.data(), w.data() + w.size(), v);
    if (r.ec != std::errc() || r.ptr != w.data() + w.size()) {
      Fail(std::string("field '") + field + "': not an integer: '" + w + "'");
    }
    return v;
  }

  OrientedBox Box() {
    OrientedBox b;
    b.center.x() = Double("x");
    b.center.y() = Double("y");
    b.orientation = Double("theta");
    b.length = Double("length");
    b.width = Double("width");
    return b;
  }

  void End() {
    std::string extra;
    if (in_ >> extra) Fail("unexpected trailing field '" + extra + "'");
  }

 private:
  std::istringstream in_;
  const std::string& source_;
  int line_no_;
};

}  // namespace

void WriteFrameLog(std::ostream& out, const FrameLog& log) {
  out << "# gridfusion frame log v1\n";
  out << "scenario " << log.scenario_id << '\n';
  out << "sensors " << log.sensors << '\n';
  out << "seed " << log.seed << '\n';
  out << "fusion " << (log.fusion_enabled ? 1 : 0) << '\n';
  std::size_t gt = 0, ot = 0, of = 0;
  for (std::size_t f = 0; f < log.frame_times.size(); ++f) {
    const int frame = static_cast<int>(f);
    out << "FRAME " << frame << ' ' << Num(log.frame_times[f]) << '\n';
    for (; gt < log.truth.size() && log.truth[gt].frame == frame; ++gt) {
      const TruthRecord& r = log.truth[gt];
      out << "GT " << r.frame << ' ' << Num(r.timestamp) << ' ' << r.object_id;
      WriteBox(out, r.box);
      out << ' ' << Num(r.speed) << ' ' << Num(r.yaw_rate) << ' ' << (r.evaluate ? 1 : 0)
          << '\n';
    }
    for (; ot < log.tracking.size() && log.tracking[ot].frame == frame; ++ot) {
      const HypothesisRecord& r = log.tracking[ot];
      out << "OT " << r.frame << ' ' << Num(r.timestamp) << ' ' << r.track_id;
      WriteBox(out, r.box);
      out << ' ' << Num(r.speed) << ' ' << Num(r.yaw_rate) << ' ' << Num(r.existence) << '\n';
    }
    for (; of < log.fused.size() && log.fused[of].frame == frame; ++of) {
      const HypothesisRecord& r = log.fused[of];
      out << "OF " << r.frame << ' ' << Num(r.timestamp) << ' ' << r.track_id;
      WriteBox(out, r.box);
      out << ' ' << Num(r.speed) << ' ' << Num(r.yaw_rate) << ' ' << CandidateLabelName(r.label)
          << ' ' << r.support << ' ' << r.counts[0] << ' ' << r.counts[1] << ' '
          << r.counts[2] << '\n';
    }
  }
}

void WriteFrameLogFile(const std::string& path, const FrameLog& log) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write frame log '" + path + "'");
  WriteFrameLog(out, log);
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path + "'");
}

FrameLog ReadFrameLog(std::istream& in, const std::string& source_name) {
  FrameLog log;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    LineParser p(line, source_name, line_no);
    const std::string tag = p.Word("tag");
    if (tag == "scenario") {
      log.scenario_id = p.Word("scenario");
    } else if (tag == "sensors") {
      log.sensors = p.Word("sensors");
    } else if (tag == "seed") {
      log.seed = static_cast<std::uint64_t>(p.Int("seed"));
    } else if (tag == "fusion") {
      log.fusion_enabled = p.Int("fusion") != 0;
    } else if (tag == "FRAME") {
      const long long frame = p.Int("frame");
      if (frame != static_cast<long long>(log.frame_times.size())) {
        p.Fail("frames out of order");
      }
      const double t = p.Double("t");
      if (!log.frame_times.empty() && !(t > log.frame_times.back())) {
        p.Fail("timestamps must increase");
      }
      log.frame_times.push_back(t);
    } else if (tag == "GT") {
      TruthRecord r;
      r.frame = static_cast<int>(p.Int("frame"));
      r.timestamp = p.Double("t");
      r.object_id = p.Word("object");
      r.box = p.Box();
      r.speed = p.Double("speed");
      r.yaw_rate = p.Double("yaw_rate");
      r.evaluate = p.Int("evaluate") != 0;
      log.truth.push_back(r);
    } else if (tag == "OT" || tag == "OF") {
      HypothesisRecord r;
      r.frame = static_cast<int>(p.Int("frame"));
      r.timestamp = p.Double("t");
      r.track_id = static_cast<int>(p.Int("track"));
      r.box = p.Box();
      r.speed = p.Double("speed");
      r.yaw_rate = p.Double("yaw_rate");
      if (tag == "OT") {
        r.existence = p.Double("existence");
      } else {
        const int label = LabelFromName(p.Word("label"));
        if (label < 0) p.Fail("unknown candidate label");
        r.label = static_cast<CandidateLabel>(label);
        r.support = static_cast<int>(p.Int("support"));
        r.counts[0] = static_cast<int>(p.Int("count_tracking"));
        r.counts[1] = static_cast<int>(p.Int("count_fused"));
        r.counts[2] = static_cast<int>(p.Int("count_predicted"));
      }
      if (r.frame + 1 != static_cast<int>(log.frame_times.size())) {
        p.Fail("record outside its FRAME block");
      }
      (tag == "OT" ? log.tracking : log.fused).push_back(r);
    } else {
      p.Fail("unknown record tag '" + tag + "'");
    }
    p.End();
  }
  for (const TruthRecord& r : log.truth) {
    if (r.frame + 1 > static_cast<int>(log.frame_times.size())) {
      throw Error(ErrorCode::kParse, source_name + ": ground truth outside frame range");
    }
  }
  if (log.scenario_id.empty()) {
    throw Error(ErrorCode::kParse, source_name + ": missing 'scenario' header");
  }
  return log;
}

FrameLog ReadFrameLogFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open frame log '" + path + "'");
  return ReadFrameLog(in, path);
}

}  // namespace gridfusion
