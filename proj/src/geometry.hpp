#pragma once

#include <Eigen/Core>

#include <vector>

#include "se3.hpp"

namespace screwxfer {

using Vec2 = Eigen::Vector2d;

// Container modeled as a straight extrusion of the superellipse
// |x/a|^n + |y/b|^n <= 1 from z = 0 (base frame origin) up to the rim at
// z = height. Lengths in meters.
struct ContainerGeom {
  double a = 0.0;
  double b = 0.0;
  double n = 2.0;
  double height = 0.0;

  ContainerGeom() = default;
  ContainerGeom(double a_, double b_, double n_, double height_);

  bool circular() const;
};

struct RimPoint {
  Vec3 position;
  Vec3 normal;  // outward, horizontal in the container frame
  double t = 0.0;
};

// Rim point at parameter t (container base frame).
RimPoint rim_point(const ContainerGeom& geom, double t);
// Rim point where the ray from the axis along `direction` meets the rim.
RimPoint rim_point_toward(const ContainerGeom& geom, const Vec2& direction);

double superellipse_value(const ContainerGeom& geom, const Vec2& p);

// Rim point of minimum world z with the container placed at `pose`; ties go
// to the smallest t. Position and normal are returned in world coordinates.
RimPoint lowest_rim_point(const ContainerGeom& geom, const Pose& pose);

// Corners used for motion-transfer frame placement (base frame):
// n > 2 diagonal corners, n < 2 axis vertices, ellipse major-axis vertices.
std::vector<RimPoint> corner_points(const ContainerGeom& geom);

// Closed solid test in the container base frame.
bool inside_solid(const ContainerGeom& geom, const Vec3& local);

struct SurfaceDensity {
  int angular = 128;
  // Vertical rows are max(min_rows, ceil(height / row_spacing)) intervals.
  int min_rows = 8;
  double row_spacing = 0.01;
  // Bottom cap rings at fractions k / cap_rings, k = 1..cap_rings-1.
  int cap_rings = 4;

  SurfaceDensity densified(int factor) const;
};

// Wall grid plus bottom cap samples, base frame.
std::vector<Vec3> surface_samples(const ContainerGeom& geom, const SurfaceDensity& density = {});

}  // namespace screwxfer
