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

#include "gridfusion/sim/scenario_io.h"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "gridfusion/common/error.h"
#include "yaml-cpp/yaml.h"

namespace gridfusion {

namespace {

class ScenarioReader {
 public:
  explicit ScenarioReader(std::string source) : source_(std::move(source)) {}

  Scenario Read(const YAML::Node& root) {
    if (!root.IsMap()) Fail(root, "<root>", "expected a mapping");
    Note("", root);
    Scenario s;
    s.id = String(root, "id", "id");
    if (root["description"]) s.description = String(root, "description", "description");
    s.duration = Number(root, "duration", "duration");
    s.frame_rate = Number(root, "frame_rate", "frame_rate", 12.5);
    s.seed = static_cast<std::uint64_t>(Integer(root, "seed", "seed", 1));
    s.tracker_dropout_fraction =
        Number(root, "tracker_dropout_fraction", "tracker_dropout_fraction", 0.0);

    const YAML::Node grid = Map(root, "grid", "grid");
    s.grid.width_cells = static_cast<int>(Integer(grid, "width", "grid.width"));
    s.grid.height_cells = static_cast<int>(Integer(grid, "height", "grid.height"));
    s.grid.cell_size = Number(grid, "cell_size", "grid.cell_size", 0.15);
    s.grid.origin = Vector2(grid, "origin", "grid.origin");

    s.ego = Motion(Map(root, "ego", "ego"), "ego");

    if (root["sensors"]) {
      const YAML::Node sensors = Map(root, "sensors", "sensors");
      if (sensors["lidar"]) {
        s.lidar = Sensor(Map(sensors, "lidar", "sensors.lidar"), "sensors.lidar",
                         DefaultLidarConfig());
      }
      if (sensors["radar"]) {
        s.radar = Sensor(Map(sensors, "radar", "sensors.radar"), "sensors.radar",
                         DefaultRadarConfig());
      }
    }

    if (root["objects"]) {
      const YAML::Node objects = root["objects"];
      if (!objects.IsSequence()) Fail(objects, "objects", "expected a list");
      for (std::size_t i = 0; i < objects.size(); ++i) {
        const std::string name = "objects[" + std::to_string(i) + "]";
        const YAML::Node o = objects[i];
        if (!o.IsMap()) Fail(o, name, "expected a mapping");
        Note(name, o);
        ObjectSpec spec;
        spec.id = String(o, "id", name + ".id");
        spec.length = Number(o, "length", name + ".length", 4.5);
        spec.width = Number(o, "width", name + ".width", 1.8);
        if (o["evaluate"]) spec.evaluate = Bool(o, "evaluate", name + ".evaluate");
        spec.motion = Motion(o, name);
        s.objects.push_back(spec);
      }
    }

    try {
      s.Validate();
    } catch (const Error& e) {
      const std::string msg = e.what();
      const std::string field = msg.substr(0, msg.find(':'));
      throw Error(ErrorCode::kParse, Where(LookupMark(field)) + msg);
    }
    return s;
  }

 private:
  [[noreturn]] void Fail(const YAML::Node& node, const std::string& field,
                         const std::string& what) const {
    throw Error(ErrorCode::kParse, Where(node.Mark()) + field + ": " + what);
  }

  std::string Where(const YAML::Mark& mark) const {
    if (mark.line < 0) return source_ + ": ";
    return source_ + ":" + std::to_string(mark.line + 1) + ":" +
           std::to_string(mark.column + 1) + ": ";
  }

  void Note(const std::string& field, const YAML::Node& node) { marks_[field] = node.Mark(); }

  YAML::Mark LookupMark(std::string field) const {
    while (true) {
      const auto it = marks_.find(field);
      if (it != marks_.end()) return it->second;
      const auto cut = field.find_last_of(".[");
      if (cut == std::string::npos) break;
      field.resize(cut);
    }
    const auto root = marks_.find("");
    return root != marks_.end() ? root->second : YAML::Mark::null_mark();
  }

  YAML::Node Required(const YAML::Node& parent, const char* key, const std::string& field) {
    const YAML::Node n = parent[key];
    if (!n) Fail(parent, field, "missing required field");
    Note(field, n);
    return n;
  }

  YAML::Node Map(const YAML::Node& parent, const char* key, const std::string& field) {
    const YAML::Node n = Required(parent, key, field);
    if (!n.IsMap()) Fail(n, field, "expected a mapping");
    return n;
  }

  template <typename T>
  T Scalar(const YAML::Node& n, const std::string& field, const char* expected) {
    if (!n.IsScalar()) Fail(n, field, std::string("expected ") + expected);
    try {
      return n.as<T>();
    } catch (const YAML::Exception&) {
      Fail(n, field, std::string("expected ") + expected + ", got '" + n.Scalar() + "'");
    }
  }

  double Number(const YAML::Node& parent, const char* key, const std::string& field) {
    return Scalar<double>(Required(parent, key, field), field, "a number");
  }
  double Number(const YAML::Node& parent, const char* key, const std::string& field,
                double fallback) {
    if (!parent[key]) return fallback;
    return Number(parent, key, field);
  }
  long long Integer(const YAML::Node& parent, const char* key, const std::string& field) {
    return Scalar<long long>(Required(parent, key, field), field, "an integer");
  }
  long long Integer(const YAML::Node& parent, const char* key, const std::string& field,
                    long long fallback) {
    if (!parent[key]) return fallback;
    return Integer(parent, key, field);
  }
  bool Bool(const YAML::Node& parent, const char* key, const std::string& field) {
    return Scalar<bool>(Required(parent, key, field), field, "true or false");
  }
  std::string String(const YAML::Node& parent, const char* key, const std::string& field) {
    return Scalar<std::string>(Required(parent, key, field), field, "a string");
  }

  std::vector<double> Numbers(const YAML::Node& n, const std::string& field, std::size_t count) {
    if (!n.IsSequence() || n.size() != count) {
      Fail(n, field, "expected a list of " + std::to_string(count) + " numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < count; ++i) {
      out.push_back(Scalar<double>(n[i], field + "[" + std::to_string(i) + "]", "a number"));
    }
    return out;
  }

  Vec2 Vector2(const YAML::Node& parent, const char* key, const std::string& field) {
    const auto v = Numbers(Required(parent, key, field), field, 2);
    return {v[0], v[1]};
  }

  Pose2D Pose(const YAML::Node& parent, const char* key, const std::string& field) {
    const auto v = Numbers(Required(parent, key, field), field, 3);
    return {{v[0], v[1]}, v[2]};
  }

  MotionSpec Motion(const YAML::Node& node, const std::string& field) {
    MotionSpec m;
    m.initial = Pose(node, "pose", field + ".pose");
    const YAML::Node controls = Required(node, "controls", field + ".controls");
    if (!controls.IsSequence()) Fail(controls, field + ".controls", "expected a list");
    for (std::size_t i = 0; i < controls.size(); ++i) {
      const std::string name = field + ".controls[" + std::to_string(i) + "]";
      const YAML::Node c = controls[i];
      if (!c.IsMap()) Fail(c, name, "expected a mapping");
      Note(name, c);
      ControlSegment seg;
      seg.start_time = Number(c, "t", name + ".t");
      seg.speed = Number(c, "speed", name + ".speed");
      seg.yaw_rate = Number(c, "yaw_rate", name + ".yaw_rate", 0.0);
      m.controls.push_back(seg);
    }
    return m;
  }

  SensorConfig Sensor(const YAML::Node& node, const std::string& field, SensorConfig c) {
    c.fov_deg = Number(node, "fov", field + ".fov", c.fov_deg);
    c.resolution_deg = Number(node, "resolution", field + ".resolution", c.resolution_deg);
    c.max_range = Number(node, "max_range", field + ".max_range", c.max_range);
    c.noise_sigma = Number(node, "noise", field + ".noise", c.noise_sigma);
    c.dropout = Number(node, "dropout", field + ".dropout", c.dropout);
    if (node["mount"]) c.mount = Pose(node, "mount", field + ".mount");
    return c;
  }

  std::string source_;
  std::map<std::string, YAML::Mark> marks_;
};

// Shortest representation that reads back to the same double.
struct Num {
  double value;
};

YAML::Emitter& operator<<(YAML::Emitter& out, Num n) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), n.value);
  return out << std::string(buf, r.ptr);
}

void EmitPose(YAML::Emitter& out, const Pose2D& p) {
  out << YAML::Flow << YAML::BeginSeq << Num{p.position.x()} << Num{p.position.y()} << Num{p.heading}
      << YAML::EndSeq;
}

void EmitMotion(YAML::Emitter& out, const MotionSpec& m) {
  out << YAML::Key << "pose" << YAML::Value;
  EmitPose(out, m.initial);
  out << YAML::Key << "controls" << YAML::Value << YAML::BeginSeq;
  for (const ControlSegment& c : m.controls) {
    out << YAML::Flow << YAML::BeginMap << YAML::Key << "t" << YAML::Value << Num{c.start_time}
        << YAML::Key << "speed" << YAML::Value << Num{c.speed} << YAML::Key << "yaw_rate"
        << YAML::Value << Num{c.yaw_rate} << YAML::EndMap;
  }
  out << YAML::EndSeq;
}

void EmitSensor(YAML::Emitter& out, const SensorConfig& c) {
  out << YAML::BeginMap;
  out << YAML::Key << "fov" << YAML::Value << Num{c.fov_deg};
  if (c.kind == SensorKind::kLidar) {
    out << YAML::Key << "resolution" << YAML::Value << Num{c.resolution_deg};
  }
  out << YAML::Key << "max_range" << YAML::Value << Num{c.max_range};
  out << YAML::Key << "noise" << YAML::Value << Num{c.noise_sigma};
  out << YAML::Key << "dropout" << YAML::Value << Num{c.dropout};
  out << YAML::Key << "mount" << YAML::Value;
  EmitPose(out, c.mount);
  out << YAML::EndMap;
}

}  // namespace

Scenario ParseScenario(const std::string& text, const std::string& source_name) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw Error(ErrorCode::kParse, source_name + ":" + std::to_string(e.mark.line + 1) + ":" +
                                       std::to_string(e.mark.column + 1) + ": " + e.msg);
  }
  return ScenarioReader(source_name).Read(root);
}

Scenario LoadScenarioFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open scenario file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseScenario(buffer.str(), path);
}

std::string SerializeScenario(const Scenario& s) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "id" << YAML::Value << s.id;
  if (!s.description.empty()) {
    out << YAML::Key << "description" << YAML::Value << s.description;
  }
  out << YAML::Key << "duration" << YAML::Value << Num{s.duration};
  out << YAML::Key << "frame_rate" << YAML::Value << Num{s.frame_rate};
  out << YAML::Key << "seed" << YAML::Value << s.seed;
  out << YAML::Key << "tracker_dropout_fraction" << YAML::Value << Num{s.tracker_dropout_fraction};
  out << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "width" << YAML::Value << s.grid.width_cells;
  out << YAML::Key << "height" << YAML::Value << s.grid.height_cells;
  out << YAML::Key << "cell_size" << YAML::Value << Num{s.grid.cell_size};
  out << YAML::Key << "origin" << YAML::Value << YAML::Flow << YAML::BeginSeq
      << Num{s.grid.origin.x()} << Num{s.grid.origin.y()} << YAML::EndSeq;
  out << YAML::EndMap;
  out << YAML::Key << "ego" << YAML::Value << YAML::BeginMap;
  EmitMotion(out, s.ego);
  out << YAML::EndMap;
  out << YAML::Key << "sensors" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "lidar" << YAML::Value;
  EmitSensor(out, s.lidar);
  out << YAML::Key << "radar" << YAML::Value;
  EmitSensor(out, s.radar);
  out << YAML::EndMap;
  out << YAML::Key << "objects" << YAML::Value << YAML::BeginSeq;
  for (const ObjectSpec& o : s.objects) {
    out << YAML::BeginMap;
    out << YAML::Key << "id" << YAML::Value << o.id;
    out << YAML::Key << "length" << YAML::Value << Num{o.length};
    out << YAML::Key << "width" << YAML::Value << Num{o.width};
    out << YAML::Key << "evaluate" << YAML::Value << o.evaluate;
    EmitMotion(out, o.motion);
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

void SaveScenarioFile(const Scenario& scenario, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write scenario file '" + path + "'");
  out << SerializeScenario(scenario);
  if (!out) throw Error(ErrorCode::kIo, "write failed for '" + path + "'");
}

}  // namespace gridfusion
