#include "synthetic_demo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "errors.hpp"

namespace screwxfer {

Pose side_grasp(const ContainerGeom& primary, const Vec3& approach) {
  Vec3 z(approach.x(), approach.y(), 0.0);
  if (z.norm() < 1e-12) throw DomainError("grasp approach must have a horizontal component");
  z.normalize();
  Mat3 r;  // tool axes in the container frame
  r.col(0) = -Vec3::UnitZ();
  r.col(1) = z.cross(-Vec3::UnitZ());
  r.col(2) = z;
  const Pose tool(Rotation::from_matrix(r), Vec3(0.0, 0.0, 0.5 * primary.height));
  return tool.inverse();
}

Vec3 pour_approach(const Vec3& from, const Vec3& to) {
  Vec3 d = to - from;
  d.z() = 0.0;
  if (d.norm() < 1e-12) return Vec3::UnitX();
  Vec3 a = d.cross(Vec3::UnitZ()).normalized();
  if (a.head<2>().dot(from.head<2>()) < 0.0) a = -a;
  return a;
}

std::vector<Pose> synthetic_key_poses(const SyntheticDemoConfig& cfg) {
  Vec3 d = cfg.passive_position - cfg.primary_position;
  d.z() = 0.0;
  if (d.norm() < 1e-9) throw DomainError("primary and passive positions coincide");
  d.normalize();

  const Vec3 lip_local = rim_point_toward(cfg.primary, d.head<2>()).position;
  const double near_rim = rim_point_toward(cfg.passive, -d.head<2>()).position.head<2>().norm();
  Vec3 lip = cfg.passive_position - d * (near_rim - cfg.lip_inset);

  const double rim_z = cfg.passive_position.z() + cfg.passive.height;
  const double carry_z = rim_z + cfg.carry_clearance;
  const Pose start = Pose::from_translation(cfg.primary_position);
  const Pose lift = Pose::from_translation(Vec3(cfg.primary_position.x(), cfg.primary_position.y(), carry_z));
  Vec3 over = lip - lip_local;
  over.z() = carry_z;
  const Pose carry = Pose::from_translation(over);

  lip.z() = carry_z + lip_local.z();
  const Rotation tilt = Rotation::about_axis(Vec3::UnitZ().cross(d), cfg.pour_tilt_deg * M_PI / 180.0);
  const Pose tilted(tilt, lip - tilt.rotate(lip_local));
  lip.z() = rim_z + cfg.lip_clearance;
  const Pose pour(tilt, lip - tilt.rotate(lip_local));
  return {start, lift, carry, tilted, pour, tilted};
}

TaskInstance synthetic_instance(const SyntheticDemoConfig& cfg) {
  TaskInstance inst;
  inst.primary = cfg.primary;
  inst.passive = cfg.passive;
  inst.primary_base = Pose::from_translation(cfg.primary_position);
  inst.passive_base = Pose::from_translation(cfg.passive_position);
  inst.grasp = side_grasp(cfg.primary, pour_approach(cfg.primary_position, cfg.passive_position));
  return inst;
}

JointConfig reach(const ArmModel& arm, const Pose& goal, const JointConfig* preferred) {
  std::vector<JointConfig> seeds;
  if (preferred) seeds.push_back(*preferred);
  const Vec3 p = goal.translation();
  const double yaw = std::atan2(p.y(), p.x());
  const std::size_t dof = arm.joint_count();
  for (const double q2 : {0.9, 0.5, 1.3}) {
    for (const double q4 : {-1.6, -1.0, 1.6}) {
      JointConfig q = JointConfig::Zero(dof);
      if (dof == 7) {
        q << yaw, q2, 0.0, q4, 0.0, -(q2 + q4) + M_PI / 2 * (q4 < 0 ? 1.0 : -1.0), 0.0;
      }
      seeds.push_back(q);
    }
  }
  // Among converged solutions keep the one farthest from its joint limits.
  std::optional<JointConfig> best;
  double best_margin = -1.0;
  for (const JointConfig& seed : seeds) {
    try {
      const JointConfig q = solve_ik(arm, goal, seed);
      if (!arm.within_limits(q)) continue;
      double margin = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < dof; ++j) {
        margin = std::min({margin, q[j] - arm.limits()[j].min, arm.limits()[j].max - q[j]});
      }
      if (margin > best_margin + 1e-12) {
        best_margin = margin;
        best = q;
      }
    } catch (const NotConverged&) {
    }
  }
  if (!best) throw NotConverged(0, pose_distance(forward_kinematics(arm, seeds.back()), goal));
  return *best;
}

Demonstration synthetic_pour_demo(const ArmModel& arm, const SyntheticDemoConfig& cfg) {
  Demonstration demo;
  demo.instance = synthetic_instance(cfg);
  const Pose tool_from_base = demo.instance.grasp.inverse();
  const std::vector<Pose> keys = synthetic_key_poses(cfg);

  JointConfig q = reach(arm, keys.front() * tool_from_base);
  demo.joints.push_back(q);
  for (std::size_t k = 1; k < keys.size(); ++k) {
    const JointPath seg = plan_between(arm, q, keys[k] * tool_from_base, cfg.step);
    demo.joints.insert(demo.joints.end(), seg.configs.begin() + 1, seg.configs.end());
    q = seg.configs.back();
  }
  demo.validate(arm);
  return demo;
}

}  // namespace screwxfer
