#include "frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace screwxfer {

double vertical_deviation(const Pose& g) {
  const double c = std::clamp(g.transform_vector(Vec3::UnitZ()).z(), -1.0, 1.0);
  return std::acos(c);
}

void TaskInstance::validate() const {
  constexpr double kUpright = 1e-6;
  if (vertical_deviation(primary_base) > kUpright) throw DomainError("primary base frame is not upright");
  if (vertical_deviation(passive_base) > kUpright) throw DomainError("passive base frame is not upright");
}

void Demonstration::validate(const ArmModel& arm) const {
  instance.validate();
  if (joints.size() < 2) throw DomainError("demonstration needs at least two joint samples");
  for (std::size_t i = 0; i < joints.size(); ++i) {
    if (static_cast<std::size_t>(joints[i].size()) != arm.joint_count()) {
      throw DomainError("demonstration sample " + std::to_string(i) + " has the wrong joint count");
    }
    if (!arm.within_limits(joints[i], 1e-9)) {
      throw DomainError("demonstration sample " + std::to_string(i) + " violates joint limits");
    }
  }
}

const char* to_string(FrameOwner owner) { return owner == FrameOwner::Primary ? "primary" : "passive"; }

namespace {

// Frame at `origin` with +z = (0,0,1) and +x along the horizontal part of
// `x_hint`, all in the owner's base coordinates.
Pose upright_frame(const Vec3& origin, const Vec3& x_hint) {
  Vec3 x(x_hint.x(), x_hint.y(), 0.0);
  x.normalize();
  const Vec3 z = Vec3::UnitZ();
  Mat3 r;
  r.col(0) = x;
  r.col(1) = z.cross(x);
  r.col(2) = z;
  return {Rotation::from_matrix(r), origin};
}

}  // namespace

DemoPrimaryAssignment assign_demo_primary_frame(const GuidingPoses& world_guiding, const TaskInstance& inst) {
  if (world_guiding.frame != FrameTag::World) throw DomainError("demo guiding poses must be in the world frame");
  const auto& idx = world_guiding.source_indices;
  std::vector<double> positions(kReconstructionSamples);
  const double a = static_cast<double>(idx.front()), b = static_cast<double>(idx.back());
  for (int i = 0; i < kReconstructionSamples; ++i) positions[i] = a + (b - a) * i / (kReconstructionSamples - 1);
  const std::vector<Pose> ee = reconstruct(world_guiding, positions);

  double best_z = std::numeric_limits<double>::infinity();
  double best_t = 0.0;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < ee.size(); ++i) {
    const RimPoint low = lowest_rim_point(inst.primary, ee[i] * inst.grasp);
    if (low.position.z() < best_z - 1e-12) {
      best_z = low.position.z();
      best_t = low.t;
      best_i = i;
    }
  }

  const RimPoint rim = rim_point(inst.primary, best_t);
  DemoPrimaryAssignment out;
  out.frame.owner = FrameOwner::Primary;
  out.frame.local = upright_frame(rim.position, rim.normal);
  out.frame.pose = inst.primary_base * out.frame.local;
  out.critical_sample = best_i;
  out.c_r_track.reserve(ee.size());
  for (const Pose& e : ee) out.c_r_track.push_back(e * inst.grasp * out.frame.local);
  return out;
}

MotionTransferFrame assign_demo_primary_frame(const Demonstration& demo, const ArmModel& arm, double seg_tol) {
  demo.validate(arm);
  const GuidingPoses g = segment_constant_screws(fk_path(arm, demo.joints), seg_tol);
  return assign_demo_primary_frame(g, demo.instance).frame;
}

MotionTransferFrame assign_demo_passive_frame(const TaskInstance& inst, const std::vector<Pose>& c_r_track) {
  if (c_r_track.empty()) throw DomainError("C_r track is empty");
  const Pose to_local = inst.passive_base.inverse();
  double best_z = std::numeric_limits<double>::infinity();
  Vec3 best = Vec3::Zero();
  bool found = false;
  for (const Pose& c : c_r_track) {
    const Vec3 p = to_local.transform_point(c.translation());
    if (superellipse_value(inst.passive, p.head<2>()) >= 1.0) continue;
    if (p.z() < best_z - 1e-12) {
      best_z = p.z();
      best = p;
      found = true;
    }
  }
  if (!found) throw NoVerticalIntersection();

  const Vec3 origin(best.x(), best.y(), inst.passive.height);
  const Vec3 initial = to_local.transform_point(c_r_track.front().translation());
  Vec3 dir = initial - origin;
  dir.z() = 0.0;

  MotionTransferFrame f;
  f.owner = FrameOwner::Passive;
  if (dir.norm() < 1e-9) {
    dir = Vec3::UnitX();
    f.fallback_direction = true;
  }
  f.local = upright_frame(origin, dir);
  f.pose = inst.passive_base * f.local;
  return f;
}

MotionTransferFrame assign_new_primary_frame(const TaskInstance& inst) {
  inst.validate();
  const Vec3 target = inst.passive_base.translation();
  RimPoint chosen;
  if (!inst.primary.circular()) {
    double best = std::numeric_limits<double>::infinity();
    for (const RimPoint& c : corner_points(inst.primary)) {
      const Vec3 w = inst.primary_base.transform_point(c.position);
      const double d = (w - target).head<2>().norm();
      if (d < best - 1e-12) {
        best = d;
        chosen = c;
      }
    }
  } else {
    Vec3 dir = target - inst.primary_base.translation();
    dir.z() = 0.0;
    if (dir.norm() < 1e-9) throw DegenerateLine();
    const Vec3 local = inst.primary_base.rotation().inverse().rotate(dir);
    chosen = rim_point_toward(inst.primary, local.head<2>());
  }
  MotionTransferFrame f;
  f.owner = FrameOwner::Primary;
  f.local = upright_frame(chosen.position, chosen.normal);
  f.pose = inst.primary_base * f.local;
  return f;
}

MotionTransferFrame assign_new_passive_frame(const TaskInstance& inst, const Pose& primary_cframe_world) {
  inst.validate();
  const Vec3 origin(0.0, 0.0, inst.passive.height);
  Vec3 dir = inst.passive_base.inverse().transform_point(primary_cframe_world.translation()) - origin;
  dir.z() = 0.0;
  MotionTransferFrame f;
  f.owner = FrameOwner::Passive;
  if (dir.norm() < 1e-9) {
    dir = Vec3::UnitX();
    f.fallback_direction = true;
  }
  f.local = upright_frame(origin, dir);
  f.pose = inst.passive_base * f.local;
  return f;
}

}  // namespace screwxfer
