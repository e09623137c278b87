#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <vector>

#include "se3.hpp"

namespace screwxfer {

using JointConfig = Eigen::VectorXd;
using Jacobian = Eigen::Matrix<double, 6, Eigen::Dynamic>;

// Revolute joint axis in the home configuration, base-frame Plücker coordinates.
struct JointAxis {
  Vec3 direction;
  Vec3 moment;
};

struct JointLimit {
  double min;
  double max;
};

// Serial revolute arm in product-of-exponentials form:
//   g_E(theta) = exp(xi_1 theta_1) ... exp(xi_l theta_l) g_E(0).
class ArmModel {
 public:
  ArmModel(std::vector<JointAxis> axes, Pose home, std::vector<JointLimit> limits);

  std::size_t joint_count() const { return axes_.size(); }
  const std::vector<JointAxis>& axes() const { return axes_; }
  const Pose& home_pose() const { return home_; }
  const std::vector<JointLimit>& limits() const { return limits_; }
  bool within_limits(const JointConfig& q, double slack = 0.0) const;

  Twist twist(std::size_t i) const { return {axes_[i].direction, axes_[i].moment}; }

 private:
  std::vector<JointAxis> axes_;
  Pose home_;
  std::vector<JointLimit> limits_;
};

// Bundled redundant 7-DoF arm (straight-up zero configuration, spherical
// shoulder and wrist, parallel-jaw tool 0.10 m beyond the flange).
ArmModel default_arm();

struct JointPath {
  std::vector<JointConfig> configs;
  // Waypoint index at which each guiding pose was reached.
  std::vector<std::size_t> arrivals;
  double max_tracking_error = 0.0;
  double max_final_error = 0.0;

  std::size_t size() const { return configs.size(); }
};

struct PlannerOptions {
  double track_tol = 1e-4;
  double final_tol = 1e-6;
  int max_iters = 50;
  double damping = 1e-4;
  // Singular values below this switch damping on.
  double damping_threshold = 1e-2;
  // Largest joint change allowed in one correction, radians.
  double max_joint_update = 0.5;
};

Pose forward_kinematics(const ArmModel& arm, const JointConfig& q);
// Spatial Jacobian: column i is the joint-i twist at configuration q.
Jacobian jacobian(const ArmModel& arm, const JointConfig& q);

// Tracks sclerp(FK(q_start), goal, tau) at tau = k*step with damped
// pseudo-inverse corrections. The returned path starts with q_start.
JointPath plan_between(const ArmModel& arm, const JointConfig& q_start, const Pose& goal, double step,
                       const PlannerOptions& opts = {});

JointPath plan_through_guiding_poses(const ArmModel& arm, const JointConfig& q_start, const std::vector<Pose>& guiding,
                                     double step, const PlannerOptions& opts = {});

// Point-to-pose inverse kinematics (no path tracking), seeded at `seed`.
JointConfig solve_ik(const ArmModel& arm, const Pose& goal, const JointConfig& seed, const PlannerOptions& opts = {},
                     int max_iters = 300);

}  // namespace screwxfer
