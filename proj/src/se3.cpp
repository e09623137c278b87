#include "se3.hpp"

#include <cmath>

#include "errors.hpp"

namespace screwxfer {

namespace {

void require_unit_interval(double tau) {
  if (!(tau >= 0.0 && tau <= 1.0)) {
    throw DomainError("interpolation parameter " + std::to_string(tau) + " outside [0, 1]");
  }
}

Eigen::Quaterniond pure(const Vec3& v) { return {0.0, v.x(), v.y(), v.z()}; }

// Sign convention for half-turns: the axis points into the half-space of this
// reference, falling back to the coordinate axes on exact ties.
Vec3 orient_half_turn_axis(Vec3 axis) {
  const Vec3 refs[] = {Vec3(1, 1, 1), Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
  for (const Vec3& r : refs) {
    const double d = axis.dot(r);
    if (std::abs(d) > 1e-12) return d < 0 ? Vec3(-axis) : axis;
  }
  return axis;
}

}  // namespace

Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return m;
}

Rotation::Rotation(double w, double x, double y, double z) : q_(w, x, y, z) {
  const double n = q_.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("rotation quaternion has zero or non-finite norm");
  q_.coeffs() /= n;
}

Rotation::Rotation(const Eigen::Quaterniond& q) : Rotation(q.w(), q.x(), q.y(), q.z()) {}

Rotation Rotation::about_axis(const Vec3& axis, double angle) {
  const double n = axis.norm();
  if (!(n > 0.0)) throw DomainError("rotation axis has zero length");
  return Rotation(Eigen::Quaterniond(Eigen::AngleAxisd(angle, axis / n)));
}

Rotation Rotation::from_matrix(const Mat3& m) { return Rotation(Eigen::Quaterniond(m)); }

Rotation Rotation::canonicalized() const {
  if (q_.w() >= 0.0) return *this;
  Eigen::Quaterniond n = q_;
  n.coeffs() = -n.coeffs();
  return Rotation(n);
}

double Rotation::angle() const { return 2.0 * std::atan2(q_.vec().norm(), std::abs(q_.w())); }

Pose Pose::from_matrix(const Mat4& m) {
  return {Rotation::from_matrix(m.topLeftCorner<3, 3>()), m.topRightCorner<3, 1>()};
}

Mat4 Pose::matrix() const {
  Mat4 m = Mat4::Identity();
  m.topLeftCorner<3, 3>() = rotation_.matrix();
  m.topRightCorner<3, 1>() = translation_;
  return m;
}

Pose Pose::inverse() const {
  const Rotation ri = rotation_.inverse();
  return {ri, -ri.rotate(translation_)};
}

Pose compose(const Pose& a, const Pose& b) {
  return {a.rotation() * b.rotation(), a.translation() + a.rotation().rotate(b.translation())};
}

Pose relative(const Pose& a, const Pose& b) { return a.inverse() * b; }

double pose_distance(const Pose& a, const Pose& b) {
  const double ang = (a.rotation().inverse() * b.rotation()).angle();
  return ang + (a.translation() - b.translation()).norm();
}

Vec6 Twist::stacked() const {
  Vec6 v;
  v << angular, linear;
  return v;
}

Twist Twist::from_stacked(const Vec6& v) { return {v.head<3>(), v.tail<3>()}; }

Pose twist_exp(const Twist& xi, double theta) {
  const double wn = xi.angular.norm();
  if (wn < 1e-15) return Pose::from_translation(xi.linear * theta);
  const Vec3 w = xi.angular / wn;
  const double ang = theta * wn;
  const Vec3 v = xi.linear / wn;
  const Rotation r = Rotation::about_axis(w, ang);
  const Vec3 p = (Mat3::Identity() - r.matrix()) * w.cross(v) + w * w.dot(v) * ang;
  return {r, p};
}

Twist twist_log(const Pose& g) {
  const Rotation r = g.rotation().canonicalized();
  const double s = r.quaternion().vec().norm();
  const double theta = 2.0 * std::atan2(s, r.w());
  if (theta < kAngleEpsilon) return {Vec3::Zero(), g.translation()};
  const Vec3 w = r.quaternion().vec() / s;
  const Mat3 wh = skew(w);
  // Inverse of the left Jacobian of SO(3) applied to the translation.
  const double half = 0.5 * theta;
  const double coef = (1.0 - half * std::cos(half) / std::sin(half)) / theta;
  const Vec3 rho = g.translation() - half * wh * g.translation() + theta * coef * (wh * (wh * g.translation()));
  return {w * theta, rho};
}

Mat6 adjoint(const Pose& g) {
  const Mat3 r = g.rotation().matrix();
  Mat6 ad = Mat6::Zero();
  ad.topLeftCorner<3, 3>() = r;
  ad.bottomRightCorner<3, 3>() = r;
  ad.bottomLeftCorner<3, 3>() = skew(g.translation()) * r;
  return ad;
}

ScrewParams log_to_screw(const Pose& g) {
  ScrewParams s;
  const Rotation r = g.rotation().canonicalized();
  const Vec3& t = g.translation();
  const double sn = r.quaternion().vec().norm();
  double theta = 2.0 * std::atan2(sn, r.w());

  if (theta < kAngleEpsilon) {
    const double n = t.norm();
    s.axis = n > 0.0 ? Vec3(t / n) : Vec3(Vec3::UnitZ());
    s.translation = n;
    s.angle = 0.0;
    s.pitch = std::numeric_limits<double>::infinity();
    s.moment = Vec3::Zero();
    return s;
  }

  Vec3 axis = r.quaternion().vec() / sn;
  if (r.w() < 1e-13) {
    theta = M_PI;
    axis = orient_half_turn_axis(axis);
  }
  const double d = axis.dot(t);
  const Vec3 tp = t - d * axis;
  const double half = 0.5 * theta;
  const Vec3 q = 0.5 * (tp + (std::cos(half) / std::sin(half)) * axis.cross(tp));

  s.axis = axis;
  s.angle = theta;
  s.translation = d;
  s.pitch = d / theta;
  s.moment = q.cross(axis);
  return s;
}

Pose screw_to_pose(const ScrewParams& s, double tau) {
  require_unit_interval(tau);
  if (s.pure_translation()) return Pose::from_translation(tau * s.translation * s.axis);
  const Rotation r = Rotation::about_axis(s.axis, tau * s.angle);
  const Vec3 q = s.point_on_axis();
  const Vec3 p = q - r.rotate(q) + tau * s.pitch * s.angle * s.axis;
  return {r, p};
}

Pose sclerp(const Pose& g0, const Pose& g1, double tau) {
  require_unit_interval(tau);
  return g0 * screw_to_pose(log_to_screw(relative(g0, g1)), tau);
}

UnitDualQuaternion UnitDualQuaternion::from_pose(const Pose& g) {
  const Eigen::Quaterniond& r = g.rotation().quaternion();
  Eigen::Quaterniond d = pure(g.translation()) * r;
  d.coeffs() *= 0.5;
  return {r, d};
}

Pose UnitDualQuaternion::to_pose() const {
  const Eigen::Quaterniond t = dual_ * real_.conjugate();
  return {Rotation(real_), 2.0 * t.vec()};
}

UnitDualQuaternion UnitDualQuaternion::operator*(const UnitDualQuaternion& o) const {
  Eigen::Quaterniond d = real_ * o.dual_;
  d.coeffs() += (dual_ * o.real_).coeffs();
  return {real_ * o.real_, d};
}

UnitDualQuaternion UnitDualQuaternion::conjugate() const { return {real_.conjugate(), dual_.conjugate()}; }

UnitDualQuaternion UnitDualQuaternion::canonicalized() const {
  if (real_.w() >= 0.0) return *this;
  Eigen::Quaterniond r = real_, d = dual_;
  r.coeffs() = -r.coeffs();
  d.coeffs() = -d.coeffs();
  return {r, d};
}

UnitDualQuaternion UnitDualQuaternion::pow(double tau) const {
  const UnitDualQuaternion c = canonicalized();
  const Vec3 v = c.real_.vec();
  const double s = v.norm();
  const double theta = 2.0 * std::atan2(s, c.real_.w());
  if (theta < kAngleEpsilon) {
    const Vec3 t = 2.0 * (c.dual_ * c.real_.conjugate()).vec();
    return {Eigen::Quaterniond::Identity(), pure(0.5 * tau * t)};
  }
  const Vec3 l = v / s;
  const double sh = std::sin(0.5 * theta);
  const double ch = std::cos(0.5 * theta);
  const double d = -2.0 * c.dual_.w() / sh;
  const Vec3 m = (c.dual_.vec() - l * (0.5 * d * ch)) / sh;

  const double th = tau * theta, dt = tau * d;
  const double s2 = std::sin(0.5 * th), c2 = std::cos(0.5 * th);
  const Eigen::Quaterniond real(c2, s2 * l.x(), s2 * l.y(), s2 * l.z());
  const Vec3 dv = s2 * m + 0.5 * dt * c2 * l;
  const Eigen::Quaterniond dual(-0.5 * dt * s2, dv.x(), dv.y(), dv.z());
  return {real, dual};
}

Pose sclerp_dual_quaternion(const Pose& g0, const Pose& g1, double tau) {
  require_unit_interval(tau);
  const UnitDualQuaternion d0 = UnitDualQuaternion::from_pose(g0);
  const UnitDualQuaternion d1 = UnitDualQuaternion::from_pose(g1);
  return (d0 * (d0.conjugate() * d1).pow(tau)).to_pose();
}

}  // namespace screwxfer
