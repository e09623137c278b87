#include "geometry.hpp"

#include <cmath>

#include "errors.hpp"

namespace screwxfer {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kSnap = 1e-12;

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

double wrap(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

// Outward normal direction of the rim at parameter t, proportional to the
// implicit-function gradient. Computed in log space because for n < 1 the
// gradient blows up near the axis vertices.
Vec2 rim_normal(const ContainerGeom& g, double c, double s) {
  if (std::abs(c) < kSnap) return {0.0, sgn(s)};
  if (std::abs(s) < kSnap) return {sgn(c), 0.0};
  const double e = 2.0 - 2.0 / g.n;
  const double lx = e * std::log(std::abs(c)) - std::log(g.a);
  const double ly = e * std::log(std::abs(s)) - std::log(g.b);
  const double m = std::max(lx, ly);
  Vec2 v(sgn(c) * std::exp(lx - m), sgn(s) * std::exp(ly - m));
  return v.normalized();
}

}  // namespace

ContainerGeom::ContainerGeom(double a_, double b_, double n_, double height_) : a(a_), b(b_), n(n_), height(height_) {
  if (!(a > 0.0 && b > 0.0 && n > 0.0 && height > 0.0) || !std::isfinite(a + b + n + height)) {
    throw DomainError("container parameters a, b, n, h must be positive and finite");
  }
}

bool ContainerGeom::circular() const { return std::abs(n - 2.0) < 1e-12 && std::abs(a - b) < 1e-12; }

RimPoint rim_point(const ContainerGeom& g, double t) {
  t = wrap(t);
  double c = std::cos(t), s = std::sin(t);
  if (std::abs(c) < kSnap) c = 0.0;
  if (std::abs(s) < kSnap) s = 0.0;
  const double p = 2.0 / g.n;
  RimPoint r;
  r.t = t;
  r.position = Vec3(g.a * sgn(c) * std::pow(std::abs(c), p), g.b * sgn(s) * std::pow(std::abs(s), p), g.height);
  const Vec2 nrm = rim_normal(g, c, s);
  r.normal = Vec3(nrm.x(), nrm.y(), 0.0);
  return r;
}

RimPoint rim_point_toward(const ContainerGeom& g, const Vec2& d) {
  const double len = d.norm();
  if (!(len > 0.0)) throw DomainError("rim direction has zero length");
  const Vec2 u = d / len;
  const double scale = std::pow(std::pow(std::abs(u.x() / g.a), g.n) + std::pow(std::abs(u.y() / g.b), g.n), -1.0 / g.n);
  const Vec2 p = scale * u;
  const double h = g.n / 2.0;
  const double ct = sgn(p.x()) * std::pow(std::abs(p.x() / g.a), h);
  const double st = sgn(p.y()) * std::pow(std::abs(p.y() / g.b), h);
  return rim_point(g, std::atan2(st, ct));
}

double superellipse_value(const ContainerGeom& g, const Vec2& p) {
  return std::pow(std::abs(p.x() / g.a), g.n) + std::pow(std::abs(p.y() / g.b), g.n);
}

RimPoint lowest_rim_point(const ContainerGeom& g, const Pose& pose) {
  const Mat3 r = pose.rotation().matrix();
  const double rx = r(2, 0), ry = r(2, 1);
  const auto height_of = [&](double t) {
    const RimPoint p = rim_point(g, t);
    return rx * p.position.x() + ry * p.position.y();
  };

  constexpr int kSeeds = 256;
  constexpr double kTie = 1e-12;
  double best_t = 0.0, best = height_of(0.0);
  double worst = best;
  for (int i = 1; i < kSeeds; ++i) {
    const double t = kTwoPi * i / kSeeds;
    const double f = height_of(t);
    worst = std::max(worst, f);
    if (f < best - kTie) {
      best = f;
      best_t = t;
    }
  }

  if (worst - best > kTie) {
    // Golden-section refinement within one seed spacing on either side.
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = best_t - kTwoPi / kSeeds, hi = best_t + kTwoPi / kSeeds;
    double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
    double f1 = height_of(x1), f2 = height_of(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
      if (f1 < f2) {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - invphi * (hi - lo);
        f1 = height_of(x1);
      } else {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + invphi * (hi - lo);
        f2 = height_of(x2);
      }
    }
    const double tm = 0.5 * (lo + hi);
    const double fm = height_of(tm);
    if (fm < best) {
      best = fm;
      best_t = tm;
    }
  }

  RimPoint out = rim_point(g, best_t);
  out.position = pose.transform_point(out.position);
  out.normal = pose.transform_vector(out.normal);
  return out;
}

std::vector<RimPoint> corner_points(const ContainerGeom& g) {
  std::vector<double> ts;
  if (std::abs(g.n - 2.0) < 1e-12) {
    if (std::abs(g.a - g.b) < 1e-12) throw CornerUndefined();
    ts = g.a > g.b ? std::vector<double>{0.0, M_PI} : std::vector<double>{M_PI / 2, 3 * M_PI / 2};
  } else if (g.n > 2.0) {
    ts = {M_PI / 4, 3 * M_PI / 4, 5 * M_PI / 4, 7 * M_PI / 4};
  } else {
    ts = {0.0, M_PI / 2, M_PI, 3 * M_PI / 2};
  }
  std::vector<RimPoint> out;
  out.reserve(ts.size());
  for (double t : ts) out.push_back(rim_point(g, t));
  return out;
}

bool inside_solid(const ContainerGeom& g, const Vec3& p) {
  if (p.z() < 0.0 || p.z() > g.height) return false;
  if (std::abs(p.x()) >= g.a || std::abs(p.y()) >= g.b) return false;
  return superellipse_value(g, p.head<2>()) < 1.0;
}

SurfaceDensity SurfaceDensity::densified(int factor) const {
  SurfaceDensity d = *this;
  d.angular *= factor;
  d.min_rows *= factor;
  d.row_spacing /= factor;
  d.cap_rings *= factor;
  return d;
}

std::vector<Vec3> surface_samples(const ContainerGeom& g, const SurfaceDensity& d) {
  const int rows = std::max(d.min_rows, static_cast<int>(std::ceil(g.height / d.row_spacing - 1e-9)));
  std::vector<Vec2> ring;
  ring.reserve(static_cast<std::size_t>(d.angular));
  for (int i = 0; i < d.angular; ++i) ring.push_back(rim_point(g, kTwoPi * i / d.angular).position.head<2>());

  std::vector<Vec3> out;
  out.reserve(ring.size() * static_cast<std::size_t>(rows + d.cap_rings) + 1);
  for (int k = 0; k <= rows; ++k) {
    const double z = g.height * k / rows;
    for (const Vec2& p : ring) out.emplace_back(p.x(), p.y(), z);
  }
  for (int k = 1; k < d.cap_rings; ++k) {
    const double f = static_cast<double>(k) / d.cap_rings;
    for (const Vec2& p : ring) out.emplace_back(f * p.x(), f * p.y(), 0.0);
  }
  out.emplace_back(0.0, 0.0, 0.0);
  return out;
}

}  // namespace screwxfer
