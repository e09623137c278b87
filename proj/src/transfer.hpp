#pragma once

#include <string>
#include <vector>

#include "frames.hpp"
#include "segmentation.hpp"

namespace screwxfer {

// Demo guiding poses re-expressed as poses of {C_r} relative to {C_s}.
struct RelativeGuidingPoses {
  std::vector<Pose> poses;
  std::vector<std::size_t> source_indices;
  std::string demo_id;
  Pose passive_cframe_local;  // g_BsCs used
  Pose primary_cframe_local;  // g_BrCr used
  Pose grasp;                 // g_EBr used
};

// g_CsCr(i) = g_BsCs^{-1} g_BsE(i) g_EBr g_BrCr.
RelativeGuidingPoses relativize(const GuidingPoses& demo_in_passive, const Pose& passive_cframe_local,
                                const Pose& grasp, const Pose& primary_cframe_local);

// g_Cr(i) = g_Cs g_CsCr(i), world frame.
std::vector<Pose> instantiate(const RelativeGuidingPoses& rel, const Pose& passive_cframe_world);

// g_E(i) = g_Cr(i) (g_EBr g_BrCr)^{-1}.
GuidingPoses to_end_effector(const std::vector<Pose>& primary_cframe_track, const Pose& grasp,
                             const Pose& primary_cframe_local, const std::vector<std::size_t>& source_indices = {});

// Geometry-agnostic transfer: g_E(i) = g_Bs^n g_BsE(i).
GuidingPoses baseline_transfer(const GuidingPoses& demo_in_passive, const Pose& new_passive_base);

// Everything extracted once from a demonstration and reused per instance.
struct DemoModel {
  TaskInstance instance;
  JointConfig start_config;
  GuidingPoses world;
  GuidingPoses in_passive;
  DemoPrimaryAssignment primary;
  MotionTransferFrame passive;
  RelativeGuidingPoses relative;
};

DemoModel prepare_demo(const Demonstration& demo, const ArmModel& arm, double seg_tol = kDefaultSegTol);

struct CFrameTransfer {
  MotionTransferFrame primary;
  MotionTransferFrame passive;
  std::vector<Pose> primary_cframe_track;
  GuidingPoses end_effector;
};

CFrameTransfer transfer_with_cframes(const DemoModel& demo, const TaskInstance& instance);

}  // namespace screwxfer
