#pragma once

// Rigid-body pose algebra for the pipeline.
//
// Convention: a Pose g = (R, p) maps coordinates in its own frame to
// coordinates in the reference frame, x_ref = R x + p. Composition is the
// homogeneous-matrix product, so compose(a, b) applies b first and then a,
// and g_AC = g_AB * g_BC. The relative pose of B seen from A is
// relative(g_A, g_B) = g_A^{-1} g_B.
//
// Twists are stacked angular-first, (omega, v), matching Plücker
// (direction, moment) for zero-pitch joint axes.

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <limits>

namespace screwxfer {

using Vec3 = Eigen::Vector3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat6 = Eigen::Matrix<double, 6, 6>;

// Rotations smaller than this are treated as pure translations.
inline constexpr double kAngleEpsilon = 1e-8;

class Rotation {
 public:
  Rotation() : q_(Eigen::Quaterniond::Identity()) {}
  Rotation(double w, double x, double y, double z);
  explicit Rotation(const Eigen::Quaterniond& q);

  static Rotation identity() { return {}; }
  static Rotation about_axis(const Vec3& axis, double angle);
  static Rotation from_matrix(const Mat3& m);

  double w() const { return q_.w(); }
  double x() const { return q_.x(); }
  double y() const { return q_.y(); }
  double z() const { return q_.z(); }
  const Eigen::Quaterniond& quaternion() const { return q_; }

  Mat3 matrix() const { return q_.toRotationMatrix(); }
  Vec3 rotate(const Vec3& v) const { return q_ * v; }
  Rotation inverse() const { return Rotation(q_.conjugate()); }
  Rotation operator*(const Rotation& o) const { return Rotation(q_ * o.q_); }

  // Same rotation with w >= 0.
  Rotation canonicalized() const;
  // Rotation angle in [0, pi].
  double angle() const;

 private:
  Eigen::Quaterniond q_;
};

class Pose {
 public:
  Pose() : translation_(Vec3::Zero()) {}
  Pose(const Rotation& r, const Vec3& t) : rotation_(r), translation_(t) {}

  static Pose identity() { return {}; }
  static Pose from_translation(const Vec3& t) { return {Rotation(), t}; }
  static Pose from_rotation(const Rotation& r) { return {r, Vec3::Zero()}; }
  static Pose from_matrix(const Mat4& m);

  const Rotation& rotation() const { return rotation_; }
  const Vec3& translation() const { return translation_; }

  Mat4 matrix() const;
  Vec3 transform_point(const Vec3& p) const { return rotation_.rotate(p) + translation_; }
  Vec3 transform_vector(const Vec3& v) const { return rotation_.rotate(v); }
  Pose inverse() const;

 private:
  Rotation rotation_;
  Vec3 translation_;
};

Pose compose(const Pose& a, const Pose& b);
inline Pose operator*(const Pose& a, const Pose& b) { return compose(a, b); }

// g_a^{-1} g_b: pose of b expressed in frame a.
Pose relative(const Pose& a, const Pose& b);

// Rotation angle of a^{-1} b plus Euclidean distance between origins.
double pose_distance(const Pose& a, const Pose& b);

struct Twist {
  Vec3 angular = Vec3::Zero();
  Vec3 linear = Vec3::Zero();

  Vec6 stacked() const;
  static Twist from_stacked(const Vec6& v);
};

// exp([xi] * theta) for an arbitrary twist (angular part unit or zero).
Pose twist_exp(const Twist& xi, double theta);
// Exponential coordinates of g, i.e. xi*theta with exp(xi*theta) = g.
Twist twist_log(const Pose& g);
// Adjoint map, angular-first ordering.
Mat6 adjoint(const Pose& g);

// Constant-screw displacement (l, m, h, theta). For theta < kAngleEpsilon the
// motion is a pure translation of length `translation` along `axis`, the
// pitch is +inf and the moment is zero.
struct ScrewParams {
  Vec3 axis = Vec3::UnitZ();
  Vec3 moment = Vec3::Zero();
  double pitch = 0.0;
  double angle = 0.0;
  double translation = 0.0;

  bool pure_translation() const { return angle < kAngleEpsilon; }
  // Point on the axis closest to the origin.
  Vec3 point_on_axis() const { return axis.cross(moment); }
};

ScrewParams log_to_screw(const Pose& g);
Pose screw_to_pose(const ScrewParams& s, double tau);
Pose sclerp(const Pose& g0, const Pose& g1, double tau);

class UnitDualQuaternion {
 public:
  UnitDualQuaternion() : real_(Eigen::Quaterniond::Identity()), dual_(0, 0, 0, 0) {}
  UnitDualQuaternion(const Eigen::Quaterniond& real, const Eigen::Quaterniond& dual) : real_(real), dual_(dual) {}

  static UnitDualQuaternion from_pose(const Pose& g);
  Pose to_pose() const;

  const Eigen::Quaterniond& real() const { return real_; }
  const Eigen::Quaterniond& dual() const { return dual_; }

  UnitDualQuaternion operator*(const UnitDualQuaternion& o) const;
  UnitDualQuaternion conjugate() const;
  // Flips both parts when needed so the real part has w >= 0.
  UnitDualQuaternion canonicalized() const;
  // Screw power D^tau computed directly from the dual-quaternion components.
  UnitDualQuaternion pow(double tau) const;

 private:
  Eigen::Quaterniond real_;
  Eigen::Quaterniond dual_;
};

// ScLERP through dual-quaternion powers: D0 (D0* D1)^tau.
Pose sclerp_dual_quaternion(const Pose& g0, const Pose& g1, double tau);

Mat3 skew(const Vec3& v);

}  // namespace screwxfer
