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

#include "gridfusion/tracker/tracker.h"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "Eigen/Dense"

namespace gridfusion {
namespace {

// Wraps an angle into (-pi/2, pi/2]: box-fit headings are sign ambiguous.
double WrapHalfTurn(double a) { return 0.5 * NormalizeAngle(2.0 * a); }

template <int M>
void KalmanUpdate(BoxHypothesis& track, const Eigen::Matrix<double, M, 1>& innovation,
                  const Eigen::Matrix<double, M, 5>& h,
                  const Eigen::Matrix<double, M, M>& r) {
  const Eigen::Matrix<double, M, M> s = h * track.state_cov * h.transpose() + r;
  const Eigen::Matrix<double, 5, M> k =
      track.state_cov * h.transpose() * s.inverse();
  const Eigen::Matrix<double, 5, 1> dx = k * innovation;
  track.center += dx.template head<2>();
  track.orientation = NormalizeAngle(track.orientation + dx(2));
  track.speed += dx(3);
  track.yaw_rate += dx(4);
  const StateCov i_kh = StateCov::Identity() - k * h;
  // Joseph form keeps the covariance symmetric positive semidefinite.
  track.state_cov = i_kh * track.state_cov * i_kh.transpose() +
                    k * r * k.transpose();
  track.state_cov = 0.5 * (track.state_cov + track.state_cov.transpose()).eval();
}

double PositionSigma(const Detection& det, const TrackerConfig& config) {
  return det.source == DetectionSource::kRadar ? config.radar_position_sigma
                                               : config.boxfit_position_sigma;
}

double GateDistance(const BoxHypothesis& track, const Detection& det,
                    const TrackerConfig& config) {
  const double sigma = PositionSigma(det, config);
  const Mat2 s = track.state_cov.topLeftCorner<2, 2>() +
                 Mat2::Identity() * sigma * sigma;
  const Vec2 nu = det.position - track.center;
  return std::sqrt(nu.dot(s.ldlt().solve(nu)));
}

void Update(BoxHypothesis& track, const Detection& det,
            const TrackerConfig& config) {
  const double ps = PositionSigma(det, config);
  if (det.source == DetectionSource::kLaserBoxFit && det.orientation) {
    Eigen::Matrix<double, 3, 5> h = Eigen::Matrix<double, 3, 5>::Zero();
    h(0, 0) = h(1, 1) = h(2, 2) = 1.0;
    Eigen::Vector3d nu;
    nu.head<2>() = det.position - track.center;
    nu(2) = WrapHalfTurn(*det.orientation - track.orientation);
    Eigen::Matrix3d r = Eigen::Matrix3d::Zero();
    r(0, 0) = r(1, 1) = ps * ps;
    r(2, 2) = config.boxfit_orientation_sigma * config.boxfit_orientation_sigma;
    KalmanUpdate<3>(track, nu, h, r);
  } else {
    Eigen::Matrix<double, 2, 5> h = Eigen::Matrix<double, 2, 5>::Zero();
    h(0, 0) = h(1, 1) = 1.0;
    const Eigen::Vector2d nu = det.position - track.center;
    const Eigen::Matrix2d r = Eigen::Matrix2d::Identity() * ps * ps;
    KalmanUpdate<2>(track, nu, h, r);
  }
}

BoxHypothesis Birth(const Detection& det, const TrackerConfig& config,
                    TrackerContext& context) {
  BoxHypothesis t;
  t.track_id = context.next_track_id++;
  t.center = det.position;
  t.orientation = NormalizeAngle(context.ego_heading);
  t.length = config.birth_length;
  t.width = config.birth_width;
  t.speed = 0.0;
  t.yaw_rate = 0.0;
  t.existence = config.birth_existence;
  t.timestamp = context.timestamp;
  Eigen::Matrix<double, 5, 1> var;
  var << config.birth_position_sigma, config.birth_position_sigma,
      config.birth_orientation_sigma, config.birth_speed_sigma,
      config.birth_yaw_rate_sigma;
  t.state_cov = var.cwiseProduct(var).asDiagonal();
  return t;
}

}  // namespace

std::vector<BoxHypothesis> TrackStep(std::vector<BoxHypothesis> tracks,
                                     const std::vector<Detection>& detections,
                                     double dt, const TrackerConfig& config,
                                     TrackerContext& context) {
  for (BoxHypothesis& t : tracks) {
    t = CtrvPredict(t, dt, config.motion);
    t.timestamp = context.timestamp;
  }

  // Greedy global nearest neighbour over gated pairs, one sensor at a time so
  // that a track takes at most one detection per sensor.
  std::vector<bool> track_hit(tracks.size(), false);
  std::vector<bool> det_used(detections.size(), false);
  for (const DetectionSource source :
       {DetectionSource::kRadar, DetectionSource::kLaserBoxFit}) {
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < tracks.size(); ++i) {
      for (std::size_t j = 0; j < detections.size(); ++j) {
        if (detections[j].source != source) continue;
        const double d = GateDistance(tracks[i], detections[j], config);
        if (d < config.gate) pairs.emplace_back(d, i, j);
      }
    }
    std::sort(pairs.begin(), pairs.end());
    std::vector<bool> track_used(tracks.size(), false);
    for (const auto& [d, i, j] : pairs) {
      if (track_used[i] || det_used[j]) continue;
      track_used[i] = true;
      det_used[j] = true;
      track_hit[i] = true;
      Update(tracks[i], detections[j], config);
    }
  }

  std::vector<BoxHypothesis> out;
  out.reserve(tracks.size() + detections.size());
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    BoxHypothesis& t = tracks[i];
    if (track_hit[i]) {
      t.existence += (1.0 - t.existence) * config.hit_gain;
    } else {
      t.existence *= config.miss_factor;
    }
    if (t.existence >= config.death_threshold) out.push_back(t);
  }
  for (std::size_t j = 0; j < detections.size(); ++j) {
    if (det_used[j] || detections[j].source != DetectionSource::kRadar) continue;
    out.push_back(Birth(detections[j], config, context));
  }
  return out;
}

const std::vector<BoxHypothesis>& Tracker::Step(
    const std::vector<Detection>& detections, double timestamp,
    double ego_heading) {
  const double dt = started_ ? std::max(0.0, timestamp - context_.timestamp) : 0.0;
  started_ = true;
  context_.timestamp = timestamp;
  context_.ego_heading = ego_heading;
  tracks_ = TrackStep(std::move(tracks_), detections, dt, config_, context_);
  return tracks_;
}

std::vector<BoxHypothesis> Tracker::Reported() const {
  std::vector<BoxHypothesis> out;
  for (const BoxHypothesis& t : tracks_) {
    if (t.existence >= config_.report_threshold) out.push_back(t);
  }
  return out;
}

}  // namespace gridfusion
