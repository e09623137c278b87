#pragma once

// Independent reference implementations used by the unit and acceptance
// tests. Nothing here calls into the library's numerics except for data
// types, so agreement is meaningful.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "arm.hpp"
#include "geometry.hpp"
#include "se3.hpp"
#include "task.hpp"

namespace sxtest {

using namespace screwxfer;

inline double unit(std::mt19937_64& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }
inline double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit(rng); }

inline Rotation random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Quaterniond q(n(rng), n(rng), n(rng), n(rng));
  q.normalize();
  return Rotation(q);
}

inline Pose random_pose(std::mt19937_64& rng, double extent = 1.0) {
  return {random_rotation(rng), Vec3(uniform(rng, -extent, extent), uniform(rng, -extent, extent),
                                     uniform(rng, -extent, extent))};
}

inline double matrix_gap(const Mat4& a, const Mat4& b) { return (a - b).cwiseAbs().maxCoeff(); }

// 4x4 helpers -------------------------------------------------------------

inline Mat4 hat(const Vec6& xi) {
  Mat4 m = Mat4::Zero();
  m(0, 1) = -xi(2);
  m(0, 2) = xi(1);
  m(1, 0) = xi(2);
  m(1, 2) = -xi(0);
  m(2, 0) = -xi(1);
  m(2, 1) = xi(0);
  m.block<3, 1>(0, 3) = xi.tail<3>();
  return m;
}

inline Vec6 vee(const Mat4& m) {
  Vec6 xi;
  xi << 0.5 * (m(2, 1) - m(1, 2)), 0.5 * (m(0, 2) - m(2, 0)), 0.5 * (m(1, 0) - m(0, 1)), m(0, 3), m(1, 3), m(2, 3);
  return xi;
}

// Taylor series with scaling and squaring.
inline Mat4 expm_series(const Mat4& a) {
  int s = 0;
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.25) {
    norm *= 0.5;
    ++s;
  }
  const Mat4 x = a / std::ldexp(1.0, s);
  Mat4 sum = Mat4::Identity(), term = Mat4::Identity();
  for (int k = 1; k < 30; ++k) {
    term = term * x / k;
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

// Inverse scaling and squaring: Denman-Beavers square roots until close to
// the identity, then the Mercator series for log(I + X).
inline Mat4 logm_series(const Mat4& g) {
  Mat4 y = g;
  int s = 0;
  while ((y - Mat4::Identity()).cwiseAbs().rowwise().sum().maxCoeff() > 0.1 && s < 60) {
    Mat4 yk = y, zk = Mat4::Identity();
    for (int it = 0; it < 100; ++it) {
      const Mat4 yn = 0.5 * (yk + zk.inverse());
      const Mat4 zn = 0.5 * (zk + yk.inverse());
      const double change = (yn - yk).cwiseAbs().maxCoeff();
      yk = yn;
      zk = zn;
      if (change < 1e-16) break;
    }
    y = yk;
    ++s;
  }
  const Mat4 x = y - Mat4::Identity();
  Mat4 sum = Mat4::Zero(), power = Mat4::Identity();
  for (int k = 1; k < 60; ++k) {
    power = power * x;
    sum += ((k % 2) ? 1.0 : -1.0) * power / k;
  }
  return sum * std::ldexp(1.0, s);
}

// Forward kinematics as a literal product of per-joint matrix exponentials.
inline Mat4 fk_oracle(const ArmModel& arm, const JointConfig& q) {
  Mat4 g = Mat4::Identity();
  for (std::size_t i = 0; i < arm.joint_count(); ++i) {
    Vec6 xi;
    xi << arm.axes()[i].direction, arm.axes()[i].moment;
    g = g * expm_series(hat(xi) * q(static_cast<Eigen::Index>(i)));
  }
  return g * arm.home_pose().matrix();
}

// Spatial Jacobian by central differences of FK: column i = vee(dg g^-1).
inline Jacobian jacobian_fd(const ArmModel& arm, const JointConfig& q, double h = 1e-6) {
  const std::size_t n = arm.joint_count();
  Jacobian j(6, static_cast<Eigen::Index>(n));
  const Mat4 g_inv = forward_kinematics(arm, q).matrix().inverse();
  for (std::size_t i = 0; i < n; ++i) {
    JointConfig qp = q, qm = q;
    qp(static_cast<Eigen::Index>(i)) += h;
    qm(static_cast<Eigen::Index>(i)) -= h;
    const Mat4 d = (forward_kinematics(arm, qp).matrix() - forward_kinematics(arm, qm).matrix()) / (2.0 * h);
    j.col(static_cast<Eigen::Index>(i)) = vee(d * g_inv);
  }
  return j;
}

// Planar 2R arm in the world xy plane, links l1 and l2, tool at the tip.
inline ArmModel planar_2r(double l1, double l2) {
  std::vector<JointAxis> axes{{Vec3::UnitZ(), Vec3::Zero()}, {Vec3::UnitZ(), Vec3(l1, 0, 0).cross(Vec3::UnitZ())}};
  return ArmModel(axes, Pose::from_translation(Vec3(l1 + l2, 0, 0)), {{-M_PI, M_PI}, {-M_PI, M_PI}});
}

// Damped least squares on the planar chain written out by hand: task is
// (x, y, heading).
inline Eigen::Vector2d dls_2r(double l1, double l2, Eigen::Vector2d q, const Eigen::Vector3d& goal, int iters = 200) {
  for (int it = 0; it < iters; ++it) {
    const double c1 = std::cos(q(0)), s1 = std::sin(q(0));
    const double c12 = std::cos(q(0) + q(1)), s12 = std::sin(q(0) + q(1));
    Eigen::Vector3d f(l1 * c1 + l2 * c12, l1 * s1 + l2 * s12, q(0) + q(1));
    Eigen::Vector3d e = goal - f;
    e(2) = std::remainder(e(2), 2.0 * M_PI);
    Eigen::Matrix<double, 3, 2> j;
    j << -l1 * s1 - l2 * s12, -l2 * s12, l1 * c1 + l2 * c12, l2 * c12, 1.0, 1.0;
    const Eigen::Matrix2d a = j.transpose() * j + 1e-8 * Eigen::Matrix2d::Identity();
    q += a.ldlt().solve(j.transpose() * e);
  }
  return q;
}

// Superellipse rim and solids ----------------------------------------------

inline double sgnpow(double v, double e) { return (v < 0 ? -1.0 : 1.0) * std::pow(std::abs(v), e); }

// Rim point parametrized by the signed-power map, container frame.
inline Vec3 rim_oracle(const ContainerGeom& g, double t, double z) {
  return {g.a * sgnpow(std::cos(t), 2.0 / g.n), g.b * sgnpow(std::sin(t), 2.0 / g.n), z};
}

inline bool inside_oracle(const ContainerGeom& g, const Vec3& p) {
  if (p.z() < 0.0 || p.z() > g.height) return false;
  return std::pow(std::abs(p.x() / g.a), g.n) + std::pow(std::abs(p.y() / g.b), g.n) < 1.0;
}

// Lowest rim point by brute-force argmin over `samples` parameters.
inline Vec3 lowest_rim_oracle(const ContainerGeom& g, const Pose& pose, int samples = 10000) {
  Vec3 best;
  double best_z = INFINITY;
  for (int i = 0; i < samples; ++i) {
    const Vec3 w = pose.transform_point(rim_oracle(g, 2.0 * M_PI * i / samples, g.height));
    if (w.z() < best_z) {
      best_z = w.z();
      best = w;
    }
  }
  return best;
}

struct LowestRimCheck {
  bool agree = false;
  double z_gap = 0.0;
  double distance = 0.0;
};

// Compares a library lowest rim point against the 10,000-sample argmin. The
// heights must agree to within the height change across one oracle sample
// spacing, and the points must coincide to within two sample chords unless
// both heights are tied to 1e-9.
inline LowestRimCheck compare_lowest_rim(const ContainerGeom& g, const Pose& pose, const Vec3& got,
                                         int samples = 10000) {
  int best = 0;
  double best_z = INFINITY;
  std::vector<Vec3> world(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    world[static_cast<std::size_t>(i)] = pose.transform_point(rim_oracle(g, 2.0 * M_PI * i / samples, g.height));
    if (world[static_cast<std::size_t>(i)].z() < best_z) {
      best_z = world[static_cast<std::size_t>(i)].z();
      best = i;
    }
  }
  const Vec3& lo = world[static_cast<std::size_t>(best)];
  const Vec3& prev = world[static_cast<std::size_t>((best + samples - 1) % samples)];
  const Vec3& next = world[static_cast<std::size_t>((best + 1) % samples)];
  const double z_res = std::max(prev.z() - lo.z(), next.z() - lo.z()) + 1e-12;
  const double chord = std::max((prev - lo).norm(), (next - lo).norm());
  LowestRimCheck c;
  c.z_gap = lo.z() - got.z();
  c.distance = (got - lo).norm();
  const bool z_ok = got.z() <= lo.z() + 1e-12 && c.z_gap <= z_res;
  const bool tied = std::abs(c.z_gap) <= 1e-9;
  c.agree = z_ok && (c.distance <= 2.0 * chord + 1e-12 || tied);
  return c;
}

inline ContainerGeom random_container(std::mt19937_64& rng) {
  static const double exps[] = {0.5, 0.7, 1.0, 1.5, 2.0, 2.5, 4.0, 5.0, 7.0, 8.0};
  return ContainerGeom(uniform(rng, 0.015, 0.12), uniform(rng, 0.015, 0.12),
                       exps[std::uniform_int_distribution<int>(0, 9)(rng)], uniform(rng, 0.02, 0.2));
}

// Wall and bottom samples on a grid of `angular` x `rows`, plus cap rings.
inline std::vector<Vec3> dense_surface(const ContainerGeom& g, int angular, int rows, int rings) {
  std::vector<Vec3> pts;
  for (int i = 0; i < angular; ++i) {
    const double t = 2.0 * M_PI * i / angular;
    for (int r = 0; r <= rows; ++r) pts.push_back(rim_oracle(g, t, g.height * r / rows));
    for (int k = 1; k < rings; ++k) {
      Vec3 p = rim_oracle(g, t, 0.0) * (static_cast<double>(k) / rings);
      pts.push_back(p);
    }
  }
  pts.emplace_back(0, 0, 0);
  return pts;
}

// Dense point-sampled interference verdict between the primary at `primary`
// and the passive of `inst`.
inline bool collides_oracle(const TaskInstance& inst, const Pose& primary, int angular, int rows, int rings) {
  const Pose to_passive = inst.passive_base.inverse() * primary;
  for (const Vec3& p : dense_surface(inst.primary, angular, rows, rings))
    if (inside_oracle(inst.passive, to_passive.transform_point(p))) return true;
  const Pose to_primary = to_passive.inverse();
  for (const Vec3& p : dense_surface(inst.passive, angular, rows, rings))
    if (inside_oracle(inst.primary, to_primary.transform_point(p))) return true;
  return false;
}

struct CollisionCase {
  TaskInstance inst;
  Pose primary;
};

// Random container pair with the primary placed anywhere within reach of the
// passive, in any orientation.
inline CollisionCase random_collision_case(std::mt19937_64& rng) {
  CollisionCase c;
  c.inst.primary = random_container(rng);
  c.inst.passive = random_container(rng);
  c.inst.passive_base = Pose::from_translation(Vec3(uniform(rng, -0.2, 0.2), uniform(rng, -0.2, 0.2), 0.0));
  const double reach = std::max(c.inst.passive.a, c.inst.passive.b) + std::max(c.inst.primary.a, c.inst.primary.b) +
                       0.5 * c.inst.primary.height;
  const Vec3 offset(uniform(rng, -reach, reach), uniform(rng, -reach, reach),
                    uniform(rng, -0.5 * c.inst.primary.height, c.inst.passive.height + 0.5 * c.inst.primary.height));
  c.primary = Pose(random_rotation(rng), c.inst.passive_base.translation() + offset);
  return c;
}

// 100x the library's default sample count: ten times the angular and
// vertical resolution.
inline bool collides_dense(const CollisionCase& c) {
  const int rows = 10 * std::max(8, static_cast<int>(std::ceil(std::max(c.inst.primary.height,
                                                                         c.inst.passive.height) / 0.01)));
  return collides_oracle(c.inst, c.primary, 1280, rows, 40);
}

// Retained liquid fraction of a cylinder tilted by `alpha` with the free
// surface through the lowest rim point, by midpoint quadrature over a square
// grid covering the base disk.
inline double retained_fraction_grid(double a, double h, double alpha, int grid = 800) {
  const double cell = 2.0 * a / grid, ta = std::tan(alpha);
  double vol = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double x = -a + (i + 0.5) * cell;
    for (int j = 0; j < grid; ++j) {
      const double y = -a + (j + 0.5) * cell;
      if (x * x + y * y > a * a) continue;
      vol += std::clamp(h - (a + x) * ta, 0.0, h) * cell * cell;
    }
  }
  return vol / (M_PI * a * a * h);
}

inline double spill_onset_oracle_deg(double a, double h, double fill) {
  double lo = 0.0, hi = 0.5 * M_PI - 1e-9;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (retained_fraction_grid(a, h, mid) > fill)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi) * 180.0 / M_PI;
}

// Three concatenated constant screws, 20 samples each: rotation about a
// vertical axis, pure translation along x, rotation about a y-parallel axis.
// Junctions fall on samples 0, 19, 39, 59.
inline std::vector<Pose> three_screw_path() {
  const Pose g0(Rotation::about_axis(Vec3(0.2, -0.3, 1.0).normalized(), 0.4), Vec3(0.4, 0.1, 0.3));
  const Pose g1 = Pose(Rotation::about_axis(Vec3::UnitZ(), 1.0), Vec3(0.0, 0.0, 0.0)) * g0;
  const Pose g2 = Pose::from_translation(Vec3(0.3, 0.0, 0.0)) * g1;
  const Vec3 c(0.5, 0.2, 0.1);
  const Pose about_y = Pose::from_translation(c) * Pose::from_rotation(Rotation::about_axis(Vec3::UnitY(), 0.9)) *
                       Pose::from_translation(-c);
  const Pose g3 = about_y * g2;
  std::vector<Pose> path;
  for (int k = 0; k <= 19; ++k) path.push_back(sclerp(g0, g1, k / 19.0));
  for (int k = 1; k <= 20; ++k) path.push_back(sclerp(g1, g2, k / 20.0));
  for (int k = 1; k <= 20; ++k) path.push_back(sclerp(g2, g3, k / 20.0));
  return path;
}

}  // namespace sxtest
