#include "evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace screwxfer {

namespace {

double bounding_radius(const ContainerGeom& g) {
  return std::sqrt(g.a * g.a + g.b * g.b + 0.25 * g.height * g.height);
}

}  // namespace

CollisionChecker::CollisionChecker(const TaskInstance& inst, const SurfaceDensity& density)
    : primary_(inst.primary),
      passive_(inst.passive),
      passive_base_(inst.passive_base),
      passive_inv_(inst.passive_base.inverse()),
      primary_samples_(surface_samples(inst.primary, density)),
      primary_center_local_(0.0, 0.0, 0.5 * inst.primary.height),
      passive_center_world_(inst.passive_base.transform_point(Vec3(0.0, 0.0, 0.5 * inst.passive.height))),
      primary_radius_(bounding_radius(inst.primary)),
      passive_radius_(bounding_radius(inst.passive)) {
  for (const Vec3& p : surface_samples(inst.passive, density)) {
    passive_samples_.push_back(passive_base_.transform_point(p));
  }
}

bool CollisionChecker::collides(const Pose& primary_base) const {
  const Vec3 c = primary_base.transform_point(primary_center_local_);
  if ((c - passive_center_world_).norm() > primary_radius_ + passive_radius_) return false;

  // Primary samples against the passive solid.
  const Pose to_passive = passive_inv_ * primary_base;
  const Mat3 r1 = to_passive.rotation().matrix();
  const Vec3 t1 = to_passive.translation();
  for (const Vec3& p : primary_samples_) {
    if (inside_solid(passive_, r1 * p + t1)) return true;
  }
  // Passive samples against the primary solid.
  const Pose to_primary = primary_base.inverse();
  const Mat3 r2 = to_primary.rotation().matrix();
  const Vec3 t2 = to_primary.translation();
  for (const Vec3& p : passive_samples_) {
    if (inside_solid(primary_, r2 * p + t2)) return true;
  }
  return false;
}

std::vector<Pose> primary_track(const std::vector<JointConfig>& plan, const ArmModel& arm, const TaskInstance& inst) {
  std::vector<Pose> out;
  out.reserve(plan.size());
  for (const auto& q : plan) out.push_back(forward_kinematics(arm, q) * inst.grasp);
  return out;
}

CollisionResult collision_check(const std::vector<JointConfig>& plan, const ArmModel& arm, const TaskInstance& inst,
                                const SurfaceDensity& density) {
  const CollisionChecker checker(inst, density);
  CollisionResult r;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (checker.collides(forward_kinematics(arm, plan[i]) * inst.grasp)) {
      r.collision_free = false;
      r.first_collision_index = i;
      break;
    }
  }
  return r;
}

double tilt_angle_deg(const Pose& primary_base_world) { return vertical_deviation(primary_base_world) * 180.0 / M_PI; }

bool pour_in(const Pose& primary_cframe_world, const TaskInstance& inst) {
  const Vec3 p = inst.passive_base.inverse().transform_point(primary_cframe_world.translation());
  return superellipse_value(inst.passive, p.head<2>()) < 1.0;
}

std::size_t compute_i0(const std::vector<JointConfig>& plan, const ArmModel& arm, const TaskInstance& inst,
                       double fill_tilt_deg) {
  if (!(fill_tilt_deg > 0.0 && fill_tilt_deg < 180.0)) throw DomainError("fill tilt must lie in (0, 180) degrees");
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (tilt_angle_deg(forward_kinematics(arm, plan[i]) * inst.grasp) > fill_tilt_deg) return i;
  }
  return plan.size();
}

PlanEvaluation evaluate(const std::vector<JointConfig>& plan, const ArmModel& arm, const TaskInstance& inst,
                        double fill_tilt_deg, const SurfaceDensity& density,
                        const std::optional<Pose>& primary_cframe_local) {
  if (!(fill_tilt_deg > 0.0 && fill_tilt_deg < 180.0)) throw DomainError("fill tilt must lie in (0, 180) degrees");
  const Pose cr_local = primary_cframe_local ? *primary_cframe_local : assign_new_primary_frame(inst).local;
  const CollisionChecker checker(inst, density);

  PlanEvaluation ev;
  ev.i0 = plan.size();
  ev.tilt_deg.reserve(plan.size());
  ev.pour_in.reserve(plan.size());
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const Pose base = forward_kinematics(arm, plan[i]) * inst.grasp;
    const double tilt = tilt_angle_deg(base);
    const bool inside = pour_in(base * cr_local, inst);
    ev.tilt_deg.push_back(tilt);
    ev.pour_in.push_back(inside);
    if (ev.collision_free && checker.collides(base)) {
      ev.collision_free = false;
      ev.first_collision_index = i;
    }
    if (ev.i0 == plan.size() && tilt > fill_tilt_deg) ev.i0 = i;
    if (!inside) ev.max_tilt_outside_deg = std::max(ev.max_tilt_outside_deg, tilt);
  }
  for (std::size_t i = ev.i0; i < plan.size(); ++i) {
    if (!ev.pour_in[i]) {
      ev.pour_success = false;
      break;
    }
  }
  return ev;
}

double spill_onset_tilt_deg(double radius, double height, double fill) {
  if (!(radius > 0.0 && height > 0.0)) throw DomainError("cylinder dimensions must be positive");
  if (!(fill > 0.0 && fill <= 1.0)) throw DomainError("fill fraction must lie in (0, 1]");
  // Free surface still spans the whole base: closed form.
  if (fill >= 0.5) return std::atan((1.0 - fill) * height / radius) * 180.0 / M_PI;

  // Otherwise bisect on the retained volume, integrated over chords
  // x = a cos(u) with Simpson's rule.
  const auto retained_fraction = [&](double alpha) {
    constexpr int kIntervals = 4000;
    const double ta = std::tan(alpha);
    const auto f = [&](double u) {
      const double s = std::sin(u);
      const double level = std::clamp(height - radius * (1.0 - std::cos(u)) * ta, 0.0, height);
      return 2.0 * radius * radius * s * s * level;
    };
    const double du = M_PI / kIntervals;
    double sum = f(0.0) + f(M_PI);
    for (int i = 1; i < kIntervals; ++i) sum += f(i * du) * (i % 2 ? 4.0 : 2.0);
    return sum * du / 3.0 / (M_PI * radius * radius * height);
  };
  double lo = std::atan(height / (2.0 * radius)), hi = 0.5 * M_PI;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (retained_fraction(mid) > fill) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi) * 180.0 / M_PI;
}

}  // namespace screwxfer
