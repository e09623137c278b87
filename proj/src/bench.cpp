#include "bench.hpp"

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>
#include <thread>

#include "errors.hpp"
#include "synthetic_demo.hpp"

namespace screwxfer {

namespace {

constexpr std::array<std::pair<Girth, Stature>, 4> kCategoryOrder{{
    {Girth::Thin, Stature::Short},
    {Girth::Thin, Stature::Tall},
    {Girth::Fat, Stature::Short},
    {Girth::Fat, Stature::Tall},
}};

std::size_t category_index(const CategorySpec& c) {
  for (std::size_t i = 0; i < kCategoryOrder.size(); ++i) {
    if (kCategoryOrder[i].first == c.girth && kCategoryOrder[i].second == c.height) return i;
  }
  return 0;
}

// Uniform double in [0, 1) from the top 53 bits.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * unit(rng); }

std::pair<double, double> girth_range(const CategorySpec& c, const SizeBounds& b) {
  return c.girth == Girth::Thin ? std::pair{b.min_ab, b.girth_threshold} : std::pair{b.girth_threshold, b.max_ab};
}

std::pair<double, double> height_range(const CategorySpec& c, const SizeBounds& b) {
  return c.height == Stature::Short ? std::pair{b.min_h, b.height_threshold} : std::pair{b.height_threshold, b.max_h};
}

void require_range(const std::pair<double, double>& r, const char* what) {
  if (!(r.first > 0.0 && r.first < r.second)) throw DomainError(std::string("infeasible ") + what + " bounds");
}

MethodOutcome outcome(const TransferPlan& plan, const ArmModel& arm) {
  MethodOutcome m;
  m.collision_free = plan.evaluation.collision_free;
  m.pour_success = plan.evaluation.pour_success;
  m.max_tilt_outside_deg = plan.evaluation.max_tilt_outside_deg;
  m.max_tracking_error = plan.path.max_tracking_error;
  m.max_final_error = plan.path.max_final_error;
  m.waypoints = plan.path.size();
  for (const auto& q : plan.path.configs) m.limits_ok = m.limits_ok && arm.within_limits(q);
  return m;
}

void accumulate(MethodCellStats& s, const MethodOutcome& m) {
  if (!m.collision_free) return;
  ++s.collision_free;
  const double t = m.max_tilt_outside_deg;
  s.tilt_min = s.tilt_min ? std::min(*s.tilt_min, t) : t;
  s.tilt_max = s.tilt_max ? std::max(*s.tilt_max, t) : t;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

}  // namespace

std::string category_code(const CategorySpec& c) {
  return std::string(c.girth == Girth::Thin ? "T" : "F") + (c.height == Stature::Short ? "S" : "T");
}

std::string CellSpec::id() const { return category_code(primary) + "-" + category_code(passive); }

std::vector<CellSpec> all_cells() {
  std::vector<CellSpec> out;
  for (const auto& [pg, ph] : kCategoryOrder) {
    for (const auto& [sg, sh] : kCategoryOrder) {
      out.push_back({{Role::Primary, pg, ph}, {Role::Passive, sg, sh}});
    }
  }
  return out;
}

bool footprints_disjoint(const TaskInstance& inst) {
  const Vec3 p = inst.primary_base.translation(), s = inst.passive_base.translation();
  return std::abs(p.x() - s.x()) >= inst.primary.a + inst.passive.a ||
         std::abs(p.y() - s.y()) >= inst.primary.b + inst.passive.b;
}

std::vector<TaskInstance> sample_instances(const CellSpec& cell, int count, std::uint64_t seed,
                                           const BenchConfig& cfg) {
  if (count < 0 || count % static_cast<int>(kShapeExponents.size()) != 0) {
    throw DomainError("instance count must be a non-negative multiple of 10");
  }
  const auto pa = girth_range(cell.primary, cfg.primary), ph = height_range(cell.primary, cfg.primary);
  const auto sa = girth_range(cell.passive, cfg.passive), sh = height_range(cell.passive, cfg.passive);
  require_range(pa, "primary girth");
  require_range(ph, "primary height");
  require_range(sa, "passive girth");
  require_range(sh, "passive height");
  if (!(cfg.table_x_min < cfg.table_x_max && cfg.table_y_min < cfg.table_y_max)) {
    throw DomainError("empty table region");
  }

  const std::size_t cell_index = category_index(cell.primary) * 4 + category_index(cell.passive);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(cell_index)};
  std::mt19937_64 rng(seq);

  std::vector<TaskInstance> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double n = kShapeExponents[i % kShapeExponents.size()];
    TaskInstance inst;
    inst.primary = ContainerGeom(uniform(rng, pa.first, pa.second), uniform(rng, pa.first, pa.second), n,
                                 uniform(rng, ph.first, ph.second));
    inst.passive = ContainerGeom(uniform(rng, sa.first, sa.second), uniform(rng, sa.first, sa.second), n,
                                 uniform(rng, sh.first, sh.second));
    bool placed = false;
    for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
      inst.primary_base = Pose::from_translation(Vec3(uniform(rng, cfg.table_x_min, cfg.table_x_max),
                                                      uniform(rng, cfg.table_y_min, cfg.table_y_max), cfg.table_z));
      inst.passive_base = Pose::from_translation(Vec3(uniform(rng, cfg.table_x_min, cfg.table_x_max),
                                                      uniform(rng, cfg.table_y_min, cfg.table_y_max), cfg.table_z));
      placed = footprints_disjoint(inst);
    }
    if (!placed) throw DomainError("could not place non-overlapping footprints in the table region");
    inst.grasp = side_grasp(inst.primary, pour_approach(inst.primary_base.translation(), inst.passive_base.translation()));
    out.push_back(inst);
  }
  return out;
}

const char* to_string(Method m) { return m == Method::CFrame ? "cframe" : "baseline"; }

TransferPlan plan_transfer(const DemoModel& demo, const TaskInstance& inst, const ArmModel& arm, Method method,
                           const BenchConfig& cfg) {
  TransferPlan plan;
  plan.method = method;
  plan.frames = transfer_with_cframes(demo, inst);
  plan.guiding = method == Method::CFrame ? plan.frames.end_effector : baseline_transfer(demo.in_passive, inst.passive_base);
  const JointConfig q0 = reach(arm, plan.guiding.poses.front(), &demo.start_config);
  plan.path = plan_through_guiding_poses(arm, q0, plan.guiding.poses, cfg.step);
  plan.primary_track = primary_track(plan.path.configs, arm, inst);
  plan.evaluation = evaluate(plan.path.configs, arm, inst, cfg.fill_tilt_deg, cfg.density, plan.frames.primary.local);
  return plan;
}

double MethodCellStats::collision_free_pct(std::size_t processed) const {
  return processed == 0 ? 0.0 : 100.0 * static_cast<double>(collision_free) / static_cast<double>(processed);
}

unsigned bench_threads() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SCREWXFER_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return hw;
}

InstanceOutcome run_instance(const DemoModel& demo, const TaskInstance& inst, const ArmModel& arm,
                             const BenchConfig& cfg) {
  InstanceOutcome out;
  out.instance = inst;
  Method stage = Method::CFrame;
  try {
    out.cframe = outcome(plan_transfer(demo, inst, arm, Method::CFrame, cfg), arm);
    stage = Method::Baseline;
    out.baseline = outcome(plan_transfer(demo, inst, arm, Method::Baseline, cfg), arm);
    out.processed = true;
  } catch (const Error& e) {
    out.skip_reason = std::string(to_string(stage)) + ": " + e.what();
  }
  return out;
}

std::vector<InstanceOutcome> run_comparison(const DemoModel& demo, const std::vector<TaskInstance>& instances,
                                            const ArmModel& arm, const BenchConfig& cfg, unsigned threads) {
  std::vector<InstanceOutcome> out(instances.size());
  if (threads == 0) threads = bench_threads();
  threads = std::min<unsigned>(threads, std::max<std::size_t>(1, instances.size()));
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++) {
      out[i] = run_instance(demo, instances[i], arm, cfg);
      out[i].index = i;
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return out;
}

BenchReport run_bench(const Demonstration& demo, const ArmModel& arm, const BenchConfig& cfg, unsigned threads) {
  const DemoModel model = prepare_demo(demo, arm, cfg.seg_tol);
  const std::vector<CellSpec> cells = all_cells();

  std::vector<TaskInstance> instances;
  std::vector<std::size_t> cell_of;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (const auto& inst : sample_instances(cells[c], cfg.per_cell, cfg.seed, cfg)) {
      instances.push_back(inst);
      cell_of.push_back(c);
    }
  }

  BenchReport report;
  report.config = cfg;
  report.instances = run_comparison(model, instances, arm, cfg, threads);
  report.cells.resize(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) report.cells[c].spec = cells[c];
  for (std::size_t i = 0; i < report.instances.size(); ++i) {
    InstanceOutcome& o = report.instances[i];
    o.cell = cell_of[i];
    o.index = i;
    CellReport& cell = report.cells[o.cell];
    ++cell.sampled;
    if (!o.processed) {
      ++cell.skipped;
      continue;
    }
    ++cell.processed;
    accumulate(cell.cframe, o.cframe);
    accumulate(cell.baseline, o.baseline);
  }
  return report;
}

std::string bench_csv(const BenchReport& report) {
  std::ostringstream os;
  os << "cell_id,n_sampled,n_processed,n_skipped,cf_cframe_pct,cf_baseline_pct,"
        "tilt_cframe_min,tilt_cframe_max,tilt_baseline_min,tilt_baseline_max\n";
  for (const CellReport& c : report.cells) {
    os << c.spec.id() << ',' << c.sampled << ',' << c.processed << ',' << c.skipped << ','
       << fmt(c.cframe.collision_free_pct(c.processed)) << ',' << fmt(c.baseline.collision_free_pct(c.processed))
       << ',' << fmt(c.cframe.tilt_min) << ',' << fmt(c.cframe.tilt_max) << ',' << fmt(c.baseline.tilt_min) << ','
       << fmt(c.baseline.tilt_max) << '\n';
  }
  return os.str();
}

}  // namespace screwxfer
