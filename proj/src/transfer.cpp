#include "transfer.hpp"

#include "errors.hpp"

namespace screwxfer {

RelativeGuidingPoses relativize(const GuidingPoses& demo_in_passive, const Pose& passive_cframe_local,
                                const Pose& grasp, const Pose& primary_cframe_local) {
  if (demo_in_passive.frame != FrameTag::PassiveBase) {
    throw DomainError(std::string("relativize expects guiding poses in the passive base frame, got ") +
                      to_string(demo_in_passive.frame));
  }
  RelativeGuidingPoses out;
  out.passive_cframe_local = passive_cframe_local;
  out.primary_cframe_local = primary_cframe_local;
  out.grasp = grasp;
  out.source_indices = demo_in_passive.source_indices;
  const Pose left = passive_cframe_local.inverse();
  const Pose right = grasp * primary_cframe_local;
  out.poses.reserve(demo_in_passive.size());
  for (const Pose& g : demo_in_passive.poses) out.poses.push_back(left * g * right);
  return out;
}

std::vector<Pose> instantiate(const RelativeGuidingPoses& rel, const Pose& passive_cframe_world) {
  std::vector<Pose> out;
  out.reserve(rel.poses.size());
  for (const Pose& g : rel.poses) out.push_back(passive_cframe_world * g);
  return out;
}

GuidingPoses to_end_effector(const std::vector<Pose>& track, const Pose& grasp, const Pose& primary_cframe_local,
                             const std::vector<std::size_t>& source_indices) {
  GuidingPoses out;
  out.frame = FrameTag::World;
  const Pose ee_from_cr = (grasp * primary_cframe_local).inverse();
  out.poses.reserve(track.size());
  for (const Pose& g : track) out.poses.push_back(g * ee_from_cr);
  if (source_indices.size() == track.size()) {
    out.source_indices = source_indices;
  } else {
    for (std::size_t i = 0; i < track.size(); ++i) out.source_indices.push_back(i);
  }
  return out;
}

GuidingPoses baseline_transfer(const GuidingPoses& demo_in_passive, const Pose& new_passive_base) {
  if (demo_in_passive.frame != FrameTag::PassiveBase) {
    throw DomainError("baseline transfer expects guiding poses in the passive base frame");
  }
  GuidingPoses out = demo_in_passive;
  for (Pose& g : out.poses) g = new_passive_base * g;
  out.frame = FrameTag::World;
  return out;
}

DemoModel prepare_demo(const Demonstration& demo, const ArmModel& arm, double seg_tol) {
  demo.validate(arm);
  DemoModel m;
  m.instance = demo.instance;
  m.start_config = demo.joints.front();
  m.world = segment_constant_screws(fk_path(arm, demo.joints), seg_tol);
  m.in_passive = relativize_to_passive(m.world, demo.instance.passive_base);
  m.primary = assign_demo_primary_frame(m.world, demo.instance);
  m.passive = assign_demo_passive_frame(demo.instance, m.primary.c_r_track);
  m.relative = relativize(m.in_passive, m.passive.local, demo.instance.grasp, m.primary.frame.local);
  m.relative.demo_id = "demo";
  return m;
}

CFrameTransfer transfer_with_cframes(const DemoModel& demo, const TaskInstance& instance) {
  CFrameTransfer out;
  out.primary = assign_new_primary_frame(instance);
  out.passive = assign_new_passive_frame(instance, out.primary.pose);
  out.primary_cframe_track = instantiate(demo.relative, out.passive.pose);
  out.end_effector = to_end_effector(out.primary_cframe_track, instance.grasp, out.primary.local,
                                     demo.relative.source_indices);
  return out;
}

}  // namespace screwxfer
