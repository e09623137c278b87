#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evaluation.hpp"
#include "transfer.hpp"

namespace screwxfer {

enum class Role { Primary, Passive };
enum class Girth { Thin, Fat };
enum class Stature { Short, Tall };

struct CategorySpec {
  Role role = Role::Primary;
  Girth girth = Girth::Thin;
  Stature height = Stature::Short;
};

// Two-letter code, e.g. "FT" for fat and tall.
std::string category_code(const CategorySpec& c);

inline constexpr std::array<double, 10> kShapeExponents{0.5, 0.7, 1.0, 1.5, 2.0, 2.5, 4.0, 5.0, 7.0, 8.0};

struct SizeBounds {
  double girth_threshold;  // a,b below: thin
  double height_threshold;  // h below: short
  double min_ab, max_ab;
  double min_h, max_h;
};

struct BenchConfig {
  std::uint64_t seed = 1;
  int per_cell = 50;
  double seg_tol = kDefaultSegTol;
  double step = 0.01;
  double fill_tilt_deg = kDefaultFillTiltDeg;
  SizeBounds primary{0.0325, 0.10, 0.015, 0.12, 0.04, 0.20};
  SizeBounds passive{0.08, 0.055, 0.03, 0.12, 0.02, 0.20};
  // Table region for base positions, world xy, and table surface height.
  double table_x_min = 0.35, table_x_max = 0.75;
  double table_y_min = -0.30, table_y_max = 0.30;
  double table_z = 0.0;
  SurfaceDensity density;
};

struct CellSpec {
  CategorySpec primary;
  CategorySpec passive;
  std::string id() const;
};

// The 4x4 grid in a fixed order: primary category major, passive minor, each
// over (Thin,Short), (Thin,Tall), (Fat,Short), (Fat,Tall).
std::vector<CellSpec> all_cells();

// `count` instances for one cell; count must be a multiple of 10.
std::vector<TaskInstance> sample_instances(const CellSpec& cell, int count, std::uint64_t seed,
                                           const BenchConfig& cfg = {});

// Axis-aligned footprint boxes of the two containers do not intersect.
bool footprints_disjoint(const TaskInstance& inst);

enum class Method { CFrame, Baseline };
const char* to_string(Method m);

// One transferred plan: guiding poses for the method, the joint path from
// inverse kinematics of the first guiding pose, and its evaluation against
// the new-instance {C_r}.
struct TransferPlan {
  Method method = Method::CFrame;
  CFrameTransfer frames;
  GuidingPoses guiding;
  JointPath path;
  // Primary base pose at every waypoint.
  std::vector<Pose> primary_track;
  PlanEvaluation evaluation;
};

TransferPlan plan_transfer(const DemoModel& demo, const TaskInstance& inst, const ArmModel& arm, Method method,
                           const BenchConfig& cfg);

struct MethodOutcome {
  bool collision_free = false;
  bool pour_success = false;
  double max_tilt_outside_deg = 0.0;
  double max_tracking_error = 0.0;
  double max_final_error = 0.0;
  std::size_t waypoints = 0;
  bool limits_ok = true;
};

struct InstanceOutcome {
  std::size_t cell = 0;
  std::size_t index = 0;
  TaskInstance instance;
  bool processed = false;
  std::string skip_reason;
  MethodOutcome cframe;
  MethodOutcome baseline;
};

struct MethodCellStats {
  std::size_t collision_free = 0;
  // Range of max tilt outside over collision-free plans.
  std::optional<double> tilt_min, tilt_max;
  double collision_free_pct(std::size_t processed) const;
};

struct CellReport {
  CellSpec spec;
  std::size_t sampled = 0, processed = 0, skipped = 0;
  MethodCellStats cframe, baseline;
};

struct BenchReport {
  BenchConfig config;
  std::vector<CellReport> cells;
  std::vector<InstanceOutcome> instances;
};

// Worker count from SCREWXFER_THREADS (default: hardware concurrency).
unsigned bench_threads();

// Plans and evaluates one instance with both methods.
InstanceOutcome run_instance(const DemoModel& demo, const TaskInstance& inst, const ArmModel& arm,
                             const BenchConfig& cfg);

// Runs every instance on up to `threads` workers; outcomes come back in input
// order whatever the worker count.
std::vector<InstanceOutcome> run_comparison(const DemoModel& demo, const std::vector<TaskInstance>& instances,
                                            const ArmModel& arm, const BenchConfig& cfg, unsigned threads = 0);

BenchReport run_bench(const Demonstration& demo, const ArmModel& arm, const BenchConfig& cfg, unsigned threads = 0);

std::string bench_csv(const BenchReport& report);

}  // namespace screwxfer
