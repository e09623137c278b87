#pragma once

#include <string>

#include "json.hpp"

#include "bench.hpp"
#include "evaluation.hpp"
#include "transfer.hpp"

namespace screwxfer {

using nlohmann::json;

// Poses: {"q": [w, x, y, z], "t": [x, y, z]} or {"matrix": 4x4 row-major}.
json to_json(const Pose& g);
Pose pose_from_json(const json& j);

// Arm: {"l", "home_pose", "axes": [{"dir", "moment"}], "limits": [[min, max]]}.
json to_json(const ArmModel& arm);
ArmModel arm_from_json(const json& j);

// Container dimensions in centimeters: {"a", "b", "n", "h"}.
json to_json(const ContainerGeom& g);
ContainerGeom container_from_json(const json& j);

json to_json(const TaskInstance& inst);
TaskInstance instance_from_json(const json& j);

json to_json(const Demonstration& demo);
Demonstration demo_from_json(const json& j);

json to_json(const GuidingPoses& g);
json to_json(const MotionTransferFrame& f);
json to_json(const JointPath& path);
json to_json(const PlanEvaluation& ev);
json to_json(const BenchConfig& cfg);
BenchConfig bench_config_from_json(const json& j, BenchConfig base = {});
json to_json(const BenchReport& report);

// Parses text, mapping any syntax or schema problem to ParseError.
json parse_json(const std::string& text);

template <typename F>
auto parse_with(const std::string& text, F&& from_json) {
  return from_json(parse_json(text));
}

}  // namespace screwxfer
