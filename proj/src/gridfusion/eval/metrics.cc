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

#include "gridfusion/eval/metrics.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <ostream>

namespace gridfusion {

std::vector<std::pair<std::size_t, std::size_t>> MatchFrames(std::span<const double> a,
                                                             std::span<const double> b,
                                                             double tol) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (std::abs(a[i] - b[j]) <= tol) {
      pairs.emplace_back(i++, j++);
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return pairs;
}

double PositionError(const StreamSample& s) {
  return (s.estimate.center - s.truth.center).norm();
}

double OrientationError(const StreamSample& s, bool mod_pi) {
  const double d = AngleDiff(s.estimate.orientation, s.truth.orientation);
  return mod_pi ? 0.5 * NormalizeAngle(2.0 * d) : d;
}

std::optional<double> Rms(std::span<const double> values) {
  if (values.empty()) return std::nullopt;
  double sum = 0.0;
  for (double v : values) sum += v * v;
  return std::sqrt(sum / static_cast<double>(values.size()));
}

std::optional<double> RmsePosition(std::span<const StreamSample> samples) {
  std::vector<double> e;
  e.reserve(samples.size());
  for (const StreamSample& s : samples) e.push_back(PositionError(s));
  return Rms(e);
}

std::optional<double> RmseOrientation(std::span<const StreamSample> samples, bool mod_pi) {
  std::vector<double> e;
  e.reserve(samples.size());
  for (const StreamSample& s : samples) e.push_back(OrientationError(s, mod_pi));
  return Rms(e);
}

double TrackDuration(std::span<const double> timestamps, double gap_threshold) {
  double total = 0.0;
  for (std::size_t i = 1; i < timestamps.size(); ++i) {
    const double gap = timestamps[i] - timestamps[i - 1];
    if (gap < gap_threshold) total += gap;
  }
  return total;
}

std::optional<double> PercentImprovement(double metric_t, double metric_f) {
  if (metric_t == 0.0) return std::nullopt;
  return 100.0 * (metric_t - metric_f) / metric_t;
}

std::optional<double> PercentExtension(double duration_t, double duration_f) {
  if (duration_t == 0.0) return std::nullopt;
  return 100.0 * (duration_f - duration_t) / duration_t;
}

namespace {

// Frame-wise greedy nearest assignment of hypotheses to truth objects.
void AssignStream(const FrameLog& log, const std::vector<HypothesisRecord>& records,
                  const EvalConfig& config,
                  std::map<std::string, std::vector<StreamSample>>& out) {
  std::size_t gt = 0, h = 0;
  for (std::size_t f = 0; f < log.frame_times.size(); ++f) {
    const int frame = static_cast<int>(f);
    std::vector<const TruthRecord*> truths;
    for (; gt < log.truth.size() && log.truth[gt].frame <= frame; ++gt) {
      if (log.truth[gt].frame == frame && log.truth[gt].evaluate) {
        truths.push_back(&log.truth[gt]);
      }
    }
    std::vector<const HypothesisRecord*> hyps;
    for (; h < records.size() && records[h].frame <= frame; ++h) {
      if (records[h].frame == frame) hyps.push_back(&records[h]);
    }
    struct Candidate {
      double distance;
      std::size_t truth;
      std::size_t hyp;
    };
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < truths.size(); ++i) {
      for (std::size_t j = 0; j < hyps.size(); ++j) {
        const double d = (truths[i]->box.center - hyps[j]->box.center).norm();
        if (d <= config.association_gate) candidates.push_back({d, i, j});
      }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Candidate& a, const Candidate& b) { return a.distance < b.distance; });
    std::vector<bool> truth_used(truths.size(), false), hyp_used(hyps.size(), false);
    for (const Candidate& c : candidates) {
      if (truth_used[c.truth] || hyp_used[c.hyp]) continue;
      truth_used[c.truth] = hyp_used[c.hyp] = true;
      out[truths[c.truth]->object_id].push_back(
          {hyps[c.hyp]->timestamp, hyps[c.hyp]->box, truths[c.truth]->box});
    }
  }
}

std::vector<double> Times(std::span<const StreamSample> samples) {
  std::vector<double> t;
  t.reserve(samples.size());
  for (const StreamSample& s : samples) t.push_back(s.timestamp);
  return t;
}

std::string Fixed(const std::optional<double>& v, int decimals) {
  if (!v || !std::isfinite(*v)) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, *v);
  return buf;
}

std::vector<std::string> VehicleColumns(std::span<const RunMetrics* const> runs) {
  std::vector<std::string> ids;
  for (const RunMetrics* r : runs) {
    for (const ObjectMetrics& o : r->objects) {
      if (std::find(ids.begin(), ids.end(), o.object_id) == ids.end()) ids.push_back(o.object_id);
    }
  }
  return ids;
}

void WriteHeader(std::ostream& out, const std::vector<std::string>& ids, const char* lead) {
  out << lead;
  for (const char* metric : {"rmse_position", "rmse_orientation", "duration"}) {
    for (const std::string& id : ids) out << ',' << metric << '_' << id;
  }
  out << '\n';
}

const ObjectMetrics* Find(const RunMetrics& run, const std::string& id) {
  for (const ObjectMetrics& o : run.objects) {
    if (o.object_id == id) return &o;
  }
  return nullptr;
}

}  // namespace

std::vector<ObjectStreams> ExtractObjectStreams(const FrameLog& log, const EvalConfig& config) {
  std::map<std::string, std::vector<StreamSample>> tracking, fused;
  AssignStream(log, log.tracking, config, tracking);
  AssignStream(log, log.fused, config, fused);
  std::vector<ObjectStreams> out;
  for (const TruthRecord& r : log.truth) {
    if (!r.evaluate) continue;
    const bool seen = std::any_of(out.begin(), out.end(), [&](const ObjectStreams& s) {
      return s.object_id == r.object_id;
    });
    if (seen) continue;
    ObjectStreams s;
    s.object_id = r.object_id;
    s.tracking = std::move(tracking[r.object_id]);
    s.fused = std::move(fused[r.object_id]);
    out.push_back(std::move(s));
  }
  return out;
}

RunMetrics ComputeRunMetrics(const FrameLog& log, const EvalConfig& config) {
  RunMetrics run;
  run.scenario_id = log.scenario_id;
  run.sensors = log.sensors;
  run.seed = log.seed;
  run.fusion_enabled = log.fusion_enabled;
  for (const ObjectStreams& s : ExtractObjectStreams(log, config)) {
    ObjectMetrics m;
    m.object_id = s.object_id;
    m.tracking_records = static_cast<int>(s.tracking.size());
    m.fused_records = static_cast<int>(s.fused.size());
    const auto t_times = Times(s.tracking);
    const auto f_times = Times(s.fused);
    m.duration_t = TrackDuration(t_times, config.gap_threshold);
    m.duration_f = TrackDuration(f_times, config.gap_threshold);
    if (log.fusion_enabled) {
      std::vector<StreamSample> mt, mf;
      for (const auto& [i, j] : MatchFrames(t_times, f_times, config.match_tolerance)) {
        mt.push_back(s.tracking[i]);
        mf.push_back(s.fused[j]);
      }
      m.matched_frames = static_cast<int>(mt.size());
      m.rmse_position_t = RmsePosition(mt);
      m.rmse_position_f = RmsePosition(mf);
      m.rmse_orientation_t = RmseOrientation(mt, config.orientation_mod_pi);
      m.rmse_orientation_f = RmseOrientation(mf, config.orientation_mod_pi);
    } else {
      m.rmse_position_t = RmsePosition(s.tracking);
      m.rmse_orientation_t = RmseOrientation(s.tracking, config.orientation_mod_pi);
    }
    run.objects.push_back(m);
  }
  return run;
}

namespace {

enum class RowKind { kTracking, kFused, kPercent };

std::array<std::string, 3> Cells(const ObjectMetrics* m, RowKind kind) {
  if (!m) return {"NA", "NA", "NA"};
  switch (kind) {
    case RowKind::kTracking:
      return {Fixed(m->rmse_position_t, 4), Fixed(m->rmse_orientation_t, 4),
              Fixed(m->duration_t, 4)};
    case RowKind::kFused:
      return {Fixed(m->rmse_position_f, 4), Fixed(m->rmse_orientation_f, 4),
              Fixed(m->duration_f, 4)};
    case RowKind::kPercent:
      break;
  }
  auto pct = [](const std::optional<double>& t, const std::optional<double>& f) {
    return t && f ? PercentImprovement(*t, *f) : std::nullopt;
  };
  return {Fixed(pct(m->rmse_position_t, m->rmse_position_f), 2),
          Fixed(pct(m->rmse_orientation_t, m->rmse_orientation_f), 2),
          Fixed(PercentExtension(m->duration_t, m->duration_f), 2)};
}

void EmitRow(std::ostream& out, const std::string& lead, const std::vector<std::string>& ids,
             const std::function<std::array<std::string, 3>(const std::string&)>& cells) {
  std::vector<std::array<std::string, 3>> per_vehicle;
  for (const std::string& id : ids) per_vehicle.push_back(cells(id));
  out << lead;
  for (int metric = 0; metric < 3; ++metric) {
    for (const auto& c : per_vehicle) out << ',' << c[metric];
  }
  out << '\n';
}

std::string Lead(const RunMetrics& r) {
  return r.scenario_id + ',' + r.sensors + ',' + std::to_string(r.seed);
}

}  // namespace

void WriteMetricsCsv(std::ostream& out, std::span<const RunMetrics> runs) {
  std::vector<const RunMetrics*> ptrs;
  for (const RunMetrics& r : runs) ptrs.push_back(&r);
  const auto ids = VehicleColumns(ptrs);
  WriteHeader(out, ids, "sequence,sensors,seed,row");
  for (const RunMetrics& r : runs) {
    const std::string lead = Lead(r);
    EmitRow(out, lead + ",O_T", ids,
            [&](const std::string& id) { return Cells(Find(r, id), RowKind::kTracking); });
    if (!r.fusion_enabled) continue;
    EmitRow(out, lead + ",O_F", ids,
            [&](const std::string& id) { return Cells(Find(r, id), RowKind::kFused); });
    EmitRow(out, lead + ",%", ids,
            [&](const std::string& id) { return Cells(Find(r, id), RowKind::kPercent); });
  }
}

void WriteComparisonCsv(std::ostream& out, const RunMetrics& a, const RunMetrics& b) {
  const RunMetrics* pair[2] = {&a, &b};
  const auto ids = VehicleColumns(pair);
  WriteHeader(out, ids, "sequence,sensors,seed,row");
  auto compare = [&](RowKind kind, const char* name) {
    EmitRow(out, Lead(a) + ',' + name, ids,
            [&](const std::string& id) { return Cells(Find(a, id), kind); });
    EmitRow(out, Lead(b) + ',' + name, ids,
            [&](const std::string& id) { return Cells(Find(b, id), kind); });
    EmitRow(out, a.scenario_id + ',' + a.sensors + "->" + b.sensors + ",," + name + " %", ids,
            [&](const std::string& id) -> std::array<std::string, 3> {
              const ObjectMetrics* ma = Find(a, id);
              const ObjectMetrics* mb = Find(b, id);
              if (!ma || !mb) return {"NA", "NA", "NA"};
              const bool fused = kind == RowKind::kFused;
              const auto pos_a = fused ? ma->rmse_position_f : ma->rmse_position_t;
              const auto pos_b = fused ? mb->rmse_position_f : mb->rmse_position_t;
              const auto ori_a = fused ? ma->rmse_orientation_f : ma->rmse_orientation_t;
              const auto ori_b = fused ? mb->rmse_orientation_f : mb->rmse_orientation_t;
              const double dur_a = fused ? ma->duration_f : ma->duration_t;
              const double dur_b = fused ? mb->duration_f : mb->duration_t;
              return {Fixed(pos_a && pos_b ? PercentImprovement(*pos_a, *pos_b) : std::nullopt, 2),
                      Fixed(ori_a && ori_b ? PercentImprovement(*ori_a, *ori_b) : std::nullopt, 2),
                      Fixed(PercentExtension(dur_a, dur_b), 2)};
            });
  };
  compare(RowKind::kTracking, "O_T");
  if (a.fusion_enabled && b.fusion_enabled) compare(RowKind::kFused, "O_F");
}

void WriteErrorSeriesCsv(std::ostream& out, std::span<const StreamSample> samples, bool mod_pi) {
  out << "timestamp,position_error,orientation_error\n";
  char buf[128];
  for (const StreamSample& s : samples) {
    std::snprintf(buf, sizeof(buf), "%.4f,%.6f,%.6f\n", s.timestamp, PositionError(s),
                  OrientationError(s, mod_pi));
    out << buf;
  }
}

}  // namespace gridfusion
