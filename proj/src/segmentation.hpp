#pragma once

#include <cstddef>
#include <vector>

#include "arm.hpp"
#include "se3.hpp"

namespace screwxfer {

// Frame in which a guiding-pose sequence is expressed.
enum class FrameTag { World, PassiveBase, CFrameRelative };

const char* to_string(FrameTag tag);

// Endpoints of constant-screw segments. source_indices are 0-based sample
// indices into the pose sequence the guiding poses were extracted from.
struct GuidingPoses {
  std::vector<Pose> poses;
  std::vector<std::size_t> source_indices;
  FrameTag frame = FrameTag::World;

  std::size_t size() const { return poses.size(); }
};

inline constexpr double kDefaultSegTol = 5e-3;

std::vector<Pose> fk_path(const ArmModel& arm, const std::vector<JointConfig>& joints);

// Greedy farthest-reach segmentation: from anchor s the candidate end e is
// extended while every sample strictly between s and e stays within seg_tol
// (pose_distance) of sclerp(G[s], G[e], (j-s)/(e-s)).
GuidingPoses segment_constant_screws(const std::vector<Pose>& poses, double seg_tol);

// Re-expresses world-frame poses in the passive base frame.
GuidingPoses relativize_to_passive(const GuidingPoses& world, const Pose& passive_base);
std::vector<Pose> relativize_to_passive(const std::vector<Pose>& world, const Pose& passive_base);
// Inverse of relativize_to_passive.
GuidingPoses to_world(const GuidingPoses& in_passive, const Pose& passive_base);

// Samples the ScLERP reconstruction through the guiding poses at the given
// (fractional) source-index positions.
std::vector<Pose> reconstruct(const GuidingPoses& guiding, const std::vector<double>& positions);
// Reconstruction at every integer source index.
std::vector<Pose> reconstruct(const GuidingPoses& guiding);

}  // namespace screwxfer
