#pragma once

#include <vector>

#include "arm.hpp"
#include "geometry.hpp"
#include "task.hpp"

namespace screwxfer {

// Side grasp with the tool z axis along the horizontal `approach` direction
// (container frame), tool x pointing down, tool center on the container axis
// at half height.
Pose side_grasp(const ContainerGeom& primary, const Vec3& approach = Vec3::UnitX());

// Approach perpendicular to the pour direction from `from` toward `to`
// (world xy), on the side facing the arm base at the world origin.
Vec3 pour_approach(const Vec3& from, const Vec3& to);

struct SyntheticDemoConfig {
  ContainerGeom primary{0.0325, 0.0325, 2.0, 0.10};
  ContainerGeom passive{0.08, 0.08, 2.0, 0.055};
  Vec3 primary_position{0.55, -0.125, 0.0};
  Vec3 passive_position{0.55, 0.125, 0.0};
  // Base height above the passive rim while carrying the primary upright.
  double carry_clearance = 0.12;
  // Pour lip height above the passive rim, and how far inside the opening.
  double lip_clearance = 0.025;
  double lip_inset = 0.02;
  double pour_tilt_deg = 115.0;
  double step = 0.05;
};

// Primary base poses at the key frames: start, lift, carry over the passive,
// tilt about the lip facing the passive, lower the lip to pouring height,
// raise it again.
std::vector<Pose> synthetic_key_poses(const SyntheticDemoConfig& cfg);

TaskInstance synthetic_instance(const SyntheticDemoConfig& cfg);

// Joint-space pour demonstration on `arm`, each key-to-key move a constant
// screw sampled at `cfg.step`.
Demonstration synthetic_pour_demo(const ArmModel& arm, const SyntheticDemoConfig& cfg = {});

// Inverse kinematics for a forward-facing tool pose: `preferred` first, then
// a fixed list of seeds.
JointConfig reach(const ArmModel& arm, const Pose& goal, const JointConfig* preferred = nullptr);

}  // namespace screwxfer
