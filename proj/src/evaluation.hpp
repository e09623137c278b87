#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "arm.hpp"
#include "frames.hpp"
#include "geometry.hpp"
#include "task.hpp"

namespace screwxfer {

inline constexpr double kDefaultFillTiltDeg = 60.0;

struct CollisionResult {
  bool collision_free = true;
  std::optional<std::size_t> first_collision_index;
};

struct PlanEvaluation {
  bool collision_free = true;
  std::optional<std::size_t> first_collision_index;
  bool pour_success = true;
  std::size_t i0 = 0;
  double max_tilt_outside_deg = 0.0;
  std::vector<double> tilt_deg;
  std::vector<bool> pour_in;
};

// Point-sampled container/container interference test with both containers
// treated as closed solids. Samples of each surface are tested against the
// other solid.
class CollisionChecker {
 public:
  explicit CollisionChecker(const TaskInstance& instance, const SurfaceDensity& density = {});

  bool collides(const Pose& primary_base_world) const;

 private:
  ContainerGeom primary_, passive_;
  Pose passive_base_, passive_inv_;
  std::vector<Vec3> primary_samples_;  // primary base frame
  std::vector<Vec3> passive_samples_;  // world
  Vec3 primary_center_local_, passive_center_world_;
  double primary_radius_, passive_radius_;
};

// World pose of the primary base at each waypoint.
std::vector<Pose> primary_track(const std::vector<JointConfig>& plan, const ArmModel& arm, const TaskInstance& inst);

CollisionResult collision_check(const std::vector<JointConfig>& plan, const ArmModel& arm, const TaskInstance& inst,
                                const SurfaceDensity& density = {});

// Angle between the container's +z axis and world +z, degrees.
double tilt_angle_deg(const Pose& primary_base_world);

// Vertical projection of the {C_r} origin onto the passive rim plane lies
// strictly inside the passive superellipse.
bool pour_in(const Pose& primary_cframe_world, const TaskInstance& inst);

// First waypoint whose tilt exceeds fill_tilt_deg, or the path length.
std::size_t compute_i0(const std::vector<JointConfig>& plan, const ArmModel& arm, const TaskInstance& inst,
                       double fill_tilt_deg);

// Evaluates collision, pour success and tilt metrics. {C_r} defaults to the
// new-instance assignment for `inst`.
PlanEvaluation evaluate(const std::vector<JointConfig>& plan, const ArmModel& arm, const TaskInstance& inst,
                        double fill_tilt_deg, const SurfaceDensity& density = {},
                        const std::optional<Pose>& primary_cframe_local = std::nullopt);

// Tilt at which liquid filling `fill_fraction` of an upright cylinder of
// radius a and height h starts to spill over the rim.
double spill_onset_tilt_deg(double radius, double height, double fill_fraction);

}  // namespace screwxfer
