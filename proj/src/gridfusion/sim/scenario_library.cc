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

#include "gridfusion/sim/scenario_library.h"

#include <cmath>

namespace gridfusion {

namespace {

constexpr double kHalfPi = 0.5 * kPi;

GridGeometry Area(double x0, double y0, double x1, double y1) {
  GridGeometry g;
  g.cell_size = 0.15;
  g.origin = {x0, y0};
  g.width_cells = static_cast<int>(std::ceil((x1 - x0) / g.cell_size));
  g.height_cells = static_cast<int>(std::ceil((y1 - y0) / g.cell_size));
  return g;
}

MotionSpec Straight(double x, double y, double heading, double speed) {
  return {{{x, y}, heading}, {{0.0, speed, 0.0}}};
}

ObjectSpec Car(const std::string& id, MotionSpec motion, bool evaluate = true) {
  ObjectSpec o;
  o.id = id;
  o.length = 4.5;
  o.width = 1.8;
  o.motion = std::move(motion);
  o.evaluate = evaluate;
  return o;
}

Scenario Base(const std::string& id, const std::string& description, double duration) {
  Scenario s;
  s.id = id;
  s.description = description;
  s.duration = duration;
  s.frame_rate = 12.5;
  s.seed = 1;
  s.lidar = DefaultLidarConfig();
  s.radar = DefaultRadarConfig();
  s.lidar.mount = {{1.5, 0.0}, 0.0};
  s.radar.mount = {{1.5, 0.0}, 0.0};
  return s;
}

Scenario CrossTraffic() {
  Scenario s = Base("cross_traffic",
                    "Car crossing in front of a standing ego vehicle; the tracker "
                    "initializes it with the ego heading.",
                    5.0);
  s.grid = Area(0.0, -20.0, 30.0, 20.0);
  s.ego = Straight(0.0, 0.0, 0.0, 0.0);
  s.objects.push_back(Car("V1", Straight(22.0, -16.0, kHalfPi, 6.0)));
  s.objects.push_back(Car("P1", Straight(12.0, 8.0, 0.0, 0.0), false));
  return s;
}

Scenario BesideObject() {
  Scenario s = Base("beside_object",
                    "Car ahead in the neighbouring lane; the radar reports its "
                    "nearest corner so the tracked box sits beside the car.",
                    6.0);
  s.grid = Area(-2.0, -10.0, 82.0, 10.0);
  s.ego = Straight(0.0, 0.0, 0.0, 8.0);
  s.objects.push_back(Car("V1", Straight(18.0, 3.5, 0.0, 9.0)));
  return s;
}

Scenario OcclusionReemergence() {
  Scenario s = Base("occlusion_reemergence",
                    "Car driving away from a standing ego vehicle is hidden for "
                    "a moment by a second car crossing in between.",
                    5.0);
  s.grid = Area(0.0, -15.0, 50.0, 15.0);
  s.ego = Straight(0.0, 0.0, 0.0, 0.0);
  s.objects.push_back(Car("V1", Straight(20.0, 0.0, 0.0, 4.0)));
  s.objects.push_back(Car("V2", Straight(12.0, -12.0, kHalfPi, 8.0)));
  return s;
}

Scenario FarRange() {
  Scenario s = Base("far_range",
                    "Car far ahead of the ego vehicle, covered by few lidar "
                    "returns.",
                    5.0);
  s.grid = Area(-5.0, -8.0, 160.0, 8.0);
  s.ego = Straight(0.0, 0.0, 0.0, 15.0);
  s.objects.push_back(Car("V1", Straight(70.0, 1.0, 0.0, 16.0)));
  return s;
}

Scenario Curve() {
  Scenario s = Base("curve",
                    "Both cars follow the same left bend; the target enters it "
                    "two seconds before the ego vehicle.",
                    6.0);
  s.grid = Area(-5.0, -8.0, 85.0, 22.0);
  s.ego = {{{0.0, 0.0}, 0.0}, {{0.0, 10.0, 0.0}, {3.0, 10.0, 0.2}, {5.0, 10.0, 0.0}}};
  s.objects.push_back(
      Car("V1", {{{20.0, 0.0}, 0.0}, {{0.0, 10.0, 0.0}, {1.0, 10.0, 0.2}, {3.0, 10.0, 0.0}}}));
  return s;
}

Scenario Dropout() {
  Scenario s = Base("dropout",
                    "Car ahead in the ego lane; the tracker output is withheld "
                    "in 30 % of the frames.",
                    6.0);
  s.grid = Area(-5.0, -6.0, 100.0, 6.0);
  s.ego = Straight(0.0, 0.0, 0.0, 10.0);
  s.objects.push_back(Car("V1", Straight(25.0, 0.0, 0.0, 11.0)));
  s.tracker_dropout_fraction = 0.3;
  return s;
}

}  // namespace

std::vector<std::string> BuiltinScenarioNames() {
  return {"cross_traffic", "beside_object", "occlusion_reemergence",
          "far_range",     "curve",         "dropout"};
}

std::optional<Scenario> BuiltinScenario(const std::string& name) {
  if (name == "cross_traffic") return CrossTraffic();
  if (name == "beside_object") return BesideObject();
  if (name == "occlusion_reemergence") return OcclusionReemergence();
  if (name == "far_range") return FarRange();
  if (name == "curve") return Curve();
  if (name == "dropout") return Dropout();
  return std::nullopt;
}

}  // namespace gridfusion
