#pragma once

#include <cstddef>
#include <vector>

#include "segmentation.hpp"
#include "task.hpp"

namespace screwxfer {

enum class FrameOwner { Primary, Passive };

const char* to_string(FrameOwner owner);

// Motion-transfer frame {C}: +z world-vertical at assignment, origin at a
// task-critical location on the container.
struct MotionTransferFrame {
  Pose pose;   // world
  FrameOwner owner = FrameOwner::Primary;
  Pose local;  // relative to the owner's base frame
  // Set when the +x rule was undefined and the base x-axis was used instead.
  bool fallback_direction = false;
};

// Number of poses sampled along the reconstructed demonstration.
inline constexpr int kReconstructionSamples = 200;

struct DemoPrimaryAssignment {
  MotionTransferFrame frame;
  // World pose of {C_r} at every reconstruction sample.
  std::vector<Pose> c_r_track;
  std::size_t critical_sample = 0;
};

// Lowest rim point of the demo primary over the ScLERP reconstruction of the
// world-frame guiding poses; +x along the outward rim normal there.
DemoPrimaryAssignment assign_demo_primary_frame(const GuidingPoses& world_guiding, const TaskInstance& demo_instance);
MotionTransferFrame assign_demo_primary_frame(const Demonstration& demo, const ArmModel& arm,
                                              double seg_tol = kDefaultSegTol);

// Where the {C_r} origin, at its lowest sample that projects into the passive
// opening, meets the passive rim plane; +x toward the initial {C_r}.
MotionTransferFrame assign_demo_passive_frame(const TaskInstance& demo_instance, const std::vector<Pose>& c_r_track);

// Nearest corner to the passive base, or for circular rims the rim point on
// the line joining the two base projections.
MotionTransferFrame assign_new_primary_frame(const TaskInstance& instance);

// Center of the passive opening, +x toward the primary's {C_r}.
MotionTransferFrame assign_new_passive_frame(const TaskInstance& instance, const Pose& primary_cframe_world);

}  // namespace screwxfer
