#pragma once

#include <vector>

#include "arm.hpp"
#include "geometry.hpp"
#include "se3.hpp"

namespace screwxfer {

// One pouring task instance: primary (grasped) and passive (receiving)
// containers on the table, plus how the primary sits in the gripper.
struct TaskInstance {
  Pose primary_base;
  ContainerGeom primary;
  Pose passive_base;
  ContainerGeom passive;
  // Primary base frame expressed in the end-effector frame.
  Pose grasp;

  // Throws DomainError unless both base frames are upright.
  void validate() const;
};

struct Demonstration {
  TaskInstance instance;
  std::vector<JointConfig> joints;

  void validate(const ArmModel& arm) const;
};

// Angle in radians between the frame's +z axis and world +z.
double vertical_deviation(const Pose& g);

}  // namespace screwxfer
