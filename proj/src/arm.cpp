#include "arm.hpp"

#include <Eigen/SVD>

#include <cmath>

#include "errors.hpp"

namespace screwxfer {

namespace {

constexpr double kDeg = M_PI / 180.0;

void check_length(const ArmModel& arm, const JointConfig& q) {
  if (static_cast<std::size_t>(q.size()) != arm.joint_count()) {
    throw DomainError("joint vector has " + std::to_string(q.size()) + " entries, arm has " +
                      std::to_string(arm.joint_count()) + " joints");
  }
}

Pose fk_with_jacobian(const ArmModel& arm, const JointConfig& q, Jacobian* jac) {
  Pose prefix;
  if (jac) jac->resize(6, static_cast<Eigen::Index>(arm.joint_count()));
  for (std::size_t i = 0; i < arm.joint_count(); ++i) {
    const Twist xi = arm.twist(i);
    if (jac) {
      // Ad_g applied to (w, v): (R w, R v + p x R w).
      const Vec3 w = prefix.transform_vector(xi.angular);
      const Vec3 v = prefix.transform_vector(xi.linear) + prefix.translation().cross(w);
      jac->col(static_cast<Eigen::Index>(i)) << w, v;
    }
    prefix = prefix * twist_exp(xi, q[static_cast<Eigen::Index>(i)]);
  }
  return prefix * arm.home_pose();
}

struct Step {
  Eigen::VectorXd dq;
  double sigma_min;
};

Step damped_step(const Jacobian& jac, const Vec6& twist, const PlannerOptions& opts) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  // Rank-deficient arms (fewer than 6 joints) have fewer singular values than
  // task dimensions; the smallest one present governs the damping.
  const double smin = sv.size() > 0 ? sv[sv.size() - 1] : 0.0;
  double lambda2 = 0.0;
  if (smin < opts.damping_threshold) {
    const double r = smin / opts.damping_threshold;
    lambda2 = opts.damping * opts.damping * (1.0 - r * r);
  }
  Eigen::VectorXd ut = svd.matrixU().transpose() * twist;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    const double s = sv[i];
    const double denom = s * s + lambda2;
    ut[i] = denom > 0.0 ? ut[i] * s / denom : 0.0;
  }
  Eigen::VectorXd dq = svd.matrixV() * ut;
  const double big = dq.cwiseAbs().maxCoeff();
  if (big > opts.max_joint_update) dq *= opts.max_joint_update / big;
  return {dq, smin};
}

// Newton-type correction of q toward target. Returns the residual pose
// distance; throws when the contract tolerance cannot be met.
double converge(const ArmModel& arm, JointConfig& q, const Pose& target, double goal_tol, double contract_tol,
                const PlannerOptions& opts, std::size_t waypoint) {
  Jacobian jac;
  double prev = std::numeric_limits<double>::infinity();
  int rising = 0;
  double smin = 1.0;
  for (int it = 0; it < opts.max_iters; ++it) {
    const Pose g = fk_with_jacobian(arm, q, &jac);
    const double err = pose_distance(g, target);
    if (err < goal_tol) return err;
    rising = err > prev ? rising + 1 : 0;
    if (rising >= 3 && smin < opts.damping_threshold) throw SingularityStall(waypoint, err);
    prev = err;
    const Vec6 body = twist_log(g.inverse() * target).stacked();
    const Step s = damped_step(jac, adjoint(g) * body, opts);
    smin = s.sigma_min;
    q += s.dq;
  }
  const double err = pose_distance(forward_kinematics(arm, q), target);
  if (err < contract_tol) return err;
  throw NotConverged(waypoint, err);
}

void check_limits(const ArmModel& arm, const JointConfig& q, std::size_t waypoint) {
  for (std::size_t j = 0; j < arm.joint_count(); ++j) {
    const double v = q[static_cast<Eigen::Index>(j)];
    if (v < arm.limits()[j].min || v > arm.limits()[j].max) throw JointLimitViolation(j, waypoint, v);
  }
}

}  // namespace

ArmModel::ArmModel(std::vector<JointAxis> axes, Pose home, std::vector<JointLimit> limits)
    : axes_(std::move(axes)), home_(home), limits_(std::move(limits)) {
  if (axes_.empty()) throw DomainError("arm needs at least one joint");
  if (limits_.size() != axes_.size()) throw DomainError("joint limit count does not match joint count");
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    const double n = axes_[i].direction.norm();
    if (!(n > 0.0)) throw DomainError("joint " + std::to_string(i) + " has a zero direction");
    axes_[i].direction /= n;
    axes_[i].moment /= n;
    // Keep the moment a valid Plücker moment for the normalized direction.
    axes_[i].moment -= axes_[i].direction * axes_[i].direction.dot(axes_[i].moment);
    if (!(limits_[i].min < limits_[i].max)) throw DomainError("joint " + std::to_string(i) + " has min >= max");
  }
}

bool ArmModel::within_limits(const JointConfig& q, double slack) const {
  for (std::size_t j = 0; j < joint_count(); ++j) {
    const double v = q[static_cast<Eigen::Index>(j)];
    if (v < limits_[j].min - slack || v > limits_[j].max + slack) return false;
  }
  return true;
}

ArmModel default_arm() {
  const auto revolute = [](const Vec3& dir, const Vec3& point) { return JointAxis{dir, point.cross(dir)}; };
  const double shoulder = 0.36, elbow = 0.78, wrist = 1.18, flange = 1.306, tool = 0.10;
  std::vector<JointAxis> axes{
      revolute(Vec3::UnitZ(), Vec3::Zero()),
      revolute(Vec3::UnitY(), Vec3(0, 0, shoulder)),
      revolute(Vec3::UnitZ(), Vec3(0, 0, shoulder)),
      revolute(-Vec3::UnitY(), Vec3(0, 0, elbow)),
      revolute(Vec3::UnitZ(), Vec3(0, 0, elbow)),
      revolute(Vec3::UnitY(), Vec3(0, 0, wrist)),
      revolute(Vec3::UnitZ(), Vec3(0, 0, wrist)),
  };
  std::vector<JointLimit> limits(6, JointLimit{-170 * kDeg, 170 * kDeg});
  limits.push_back({-175 * kDeg, 175 * kDeg});
  return ArmModel(std::move(axes), Pose::from_translation(Vec3(0, 0, flange + tool)), std::move(limits));
}

Pose forward_kinematics(const ArmModel& arm, const JointConfig& q) {
  check_length(arm, q);
  return fk_with_jacobian(arm, q, nullptr);
}

Jacobian jacobian(const ArmModel& arm, const JointConfig& q) {
  check_length(arm, q);
  Jacobian jac;
  fk_with_jacobian(arm, q, &jac);
  return jac;
}

JointPath plan_between(const ArmModel& arm, const JointConfig& q_start, const Pose& goal, double step,
                       const PlannerOptions& opts) {
  check_length(arm, q_start);
  if (!(step > 0.0 && step <= 0.05)) throw DomainError("planner step must lie in (0, 0.05]");

  JointPath path;
  path.configs.push_back(q_start);
  const Pose start = forward_kinematics(arm, q_start);
  const double gap = pose_distance(start, goal);
  if (gap <= opts.final_tol) {
    path.max_final_error = gap;
    path.arrivals.push_back(0);
    return path;
  }

  const ScrewParams screw = log_to_screw(relative(start, goal));
  const auto count = static_cast<std::size_t>(std::ceil(1.0 / step - 1e-9));
  JointConfig q = q_start;
  for (std::size_t k = 1; k <= count; ++k) {
    const bool last = k == count;
    const Pose target = last ? goal : start * screw_to_pose(screw, static_cast<double>(k) / count);
    const double contract = last ? opts.final_tol : opts.track_tol;
    const double err = converge(arm, q, target, contract * 1e-3, contract, opts, k);
    check_limits(arm, q, k);
    path.configs.push_back(q);
    if (last) {
      path.max_final_error = err;
    } else {
      path.max_tracking_error = std::max(path.max_tracking_error, err);
    }
  }
  path.arrivals.push_back(path.configs.size() - 1);
  return path;
}

JointPath plan_through_guiding_poses(const ArmModel& arm, const JointConfig& q_start, const std::vector<Pose>& guiding,
                                     double step, const PlannerOptions& opts) {
  if (guiding.empty()) throw DomainError("guiding pose sequence is empty");
  JointPath path;
  path.configs.push_back(q_start);
  for (std::size_t s = 0; s < guiding.size(); ++s) {
    JointPath seg;
    try {
      seg = plan_between(arm, path.configs.back(), guiding[s], step, opts);
    } catch (PlanError& e) {
      e.set_segment(static_cast<long>(s));
      throw;
    }
    path.configs.insert(path.configs.end(), seg.configs.begin() + 1, seg.configs.end());
    path.arrivals.push_back(path.configs.size() - 1);
    path.max_tracking_error = std::max(path.max_tracking_error, seg.max_tracking_error);
    path.max_final_error = std::max(path.max_final_error, seg.max_final_error);
  }
  return path;
}

JointConfig solve_ik(const ArmModel& arm, const Pose& goal, const JointConfig& seed, const PlannerOptions& opts,
                     int max_iters) {
  check_length(arm, seed);
  JointConfig q = seed;
  Jacobian jac;
  PlannerOptions o = opts;
  o.max_joint_update = std::min(o.max_joint_update, 0.2);
  double err = 0.0;
  for (int it = 0; it < max_iters; ++it) {
    const Pose g = fk_with_jacobian(arm, q, &jac);
    err = pose_distance(g, goal);
    if (err < opts.final_tol * 1e-3) break;
    const Vec6 body = twist_log(g.inverse() * goal).stacked();
    q += damped_step(jac, adjoint(g) * body, o).dq;
    for (std::size_t j = 0; j < arm.joint_count(); ++j) {
      const auto i = static_cast<Eigen::Index>(j);
      q[i] = std::clamp(q[i], arm.limits()[j].min, arm.limits()[j].max);
    }
  }
  err = pose_distance(forward_kinematics(arm, q), goal);
  if (err >= opts.final_tol) throw NotConverged(0, err);
  return q;
}

}  // namespace screwxfer
