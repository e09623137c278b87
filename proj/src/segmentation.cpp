#include "segmentation.hpp"

#include <algorithm>

#include "errors.hpp"

namespace screwxfer {

const char* to_string(FrameTag tag) {
  switch (tag) {
    case FrameTag::World: return "world";
    case FrameTag::PassiveBase: return "passive_base";
    case FrameTag::CFrameRelative: return "cframe_relative";
  }
  return "unknown";
}

std::vector<Pose> fk_path(const ArmModel& arm, const std::vector<JointConfig>& joints) {
  if (joints.empty()) throw DomainError("joint path is empty");
  std::vector<Pose> out;
  out.reserve(joints.size());
  for (const auto& q : joints) out.push_back(forward_kinematics(arm, q));
  return out;
}

namespace {

bool segment_fits(const std::vector<Pose>& poses, std::size_t s, std::size_t e, double tol) {
  const ScrewParams screw = log_to_screw(relative(poses[s], poses[e]));
  const double span = static_cast<double>(e - s);
  for (std::size_t j = s + 1; j < e; ++j) {
    const Pose ref = poses[s] * screw_to_pose(screw, static_cast<double>(j - s) / span);
    if (pose_distance(ref, poses[j]) >= tol) return false;
  }
  return true;
}

}  // namespace

GuidingPoses segment_constant_screws(const std::vector<Pose>& poses, double seg_tol) {
  if (!(seg_tol > 0.0)) throw DomainError("segmentation tolerance must be positive");
  if (poses.size() < 2) throw DomainError("segmentation needs at least two poses");

  GuidingPoses out;
  out.frame = FrameTag::World;
  out.poses.push_back(poses.front());
  out.source_indices.push_back(0);

  const std::size_t last = poses.size() - 1;
  std::size_t anchor = 0;
  while (anchor < last) {
    std::size_t end = anchor + 1;
    while (end < last && segment_fits(poses, anchor, end + 1, seg_tol)) ++end;
    out.poses.push_back(poses[end]);
    out.source_indices.push_back(end);
    anchor = end;
  }
  return out;
}

std::vector<Pose> relativize_to_passive(const std::vector<Pose>& world, const Pose& passive_base) {
  const Pose inv = passive_base.inverse();
  std::vector<Pose> out;
  out.reserve(world.size());
  for (const auto& g : world) out.push_back(inv * g);
  return out;
}

GuidingPoses relativize_to_passive(const GuidingPoses& world, const Pose& passive_base) {
  if (world.frame != FrameTag::World) throw DomainError("guiding poses are not expressed in the world frame");
  GuidingPoses out = world;
  out.poses = relativize_to_passive(world.poses, passive_base);
  out.frame = FrameTag::PassiveBase;
  return out;
}

GuidingPoses to_world(const GuidingPoses& in_passive, const Pose& passive_base) {
  if (in_passive.frame != FrameTag::PassiveBase) throw DomainError("guiding poses are not in the passive base frame");
  GuidingPoses out = in_passive;
  for (auto& g : out.poses) g = passive_base * g;
  out.frame = FrameTag::World;
  return out;
}

std::vector<Pose> reconstruct(const GuidingPoses& guiding, const std::vector<double>& positions) {
  if (guiding.size() < 2) throw DomainError("reconstruction needs at least two guiding poses");
  const auto& idx = guiding.source_indices;
  std::vector<ScrewParams> screws;
  screws.reserve(guiding.size() - 1);
  for (std::size_t j = 0; j + 1 < guiding.size(); ++j) {
    screws.push_back(log_to_screw(relative(guiding.poses[j], guiding.poses[j + 1])));
  }
  std::vector<Pose> out;
  out.reserve(positions.size());
  for (double u : positions) {
    u = std::clamp(u, static_cast<double>(idx.front()), static_cast<double>(idx.back()));
    std::size_t seg = 0;
    while (seg + 2 < guiding.size() && u > static_cast<double>(idx[seg + 1])) ++seg;
    const double a = static_cast<double>(idx[seg]), b = static_cast<double>(idx[seg + 1]);
    const double tau = std::clamp((u - a) / (b - a), 0.0, 1.0);
    out.push_back(guiding.poses[seg] * screw_to_pose(screws[seg], tau));
  }
  return out;
}

std::vector<Pose> reconstruct(const GuidingPoses& guiding) {
  std::vector<double> pos;
  for (std::size_t i = guiding.source_indices.front(); i <= guiding.source_indices.back(); ++i) {
    pos.push_back(static_cast<double>(i));
  }
  return reconstruct(guiding, pos);
}

}  // namespace screwxfer
