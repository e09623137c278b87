#include "screwxfer/screwxfer.h"

#include <cstring>
#include <new>
#include <sstream>

#include "bench.hpp"
#include "errors.hpp"
#include "io_json.hpp"
#include "plot.hpp"
#include "synthetic_demo.hpp"

using namespace screwxfer;

struct sx_arm {
  ArmModel model;
};

struct sx_demo {
  Demonstration demo;
};

struct sx_instance {
  TaskInstance inst;
};

struct sx_plan_result {
  TaskInstance inst;
  TransferPlan plan;
};

namespace {

thread_local std::string g_last_error;

sx_status code_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::Domain: return SX_ERR_DOMAIN;
    case ErrorCode::Parse: return SX_ERR_PARSE;
    case ErrorCode::JointLimit: return SX_ERR_JOINT_LIMIT;
    case ErrorCode::SingularityStall: return SX_ERR_SINGULARITY_STALL;
    case ErrorCode::NotConverged: return SX_ERR_NOT_CONVERGED;
    case ErrorCode::CornerUndefined: return SX_ERR_CORNER_UNDEFINED;
    case ErrorCode::DegenerateLine: return SX_ERR_DEGENERATE_LINE;
    case ErrorCode::NoVerticalIntersection: return SX_ERR_NO_VERTICAL_INTERSECTION;
    case ErrorCode::Io: return SX_ERR_IO;
  }
  return SX_ERR_INTERNAL;
}

struct InvalidArgument {
  const char* what;
};

template <typename F>
sx_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return SX_OK;
  } catch (const InvalidArgument& e) {
    g_last_error = e.what;
    return SX_ERR_INVALID_ARGUMENT;
  } catch (const Error& e) {
    g_last_error = e.what();
    return code_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return SX_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SX_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw InvalidArgument{what};
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

Pose read_pose(const double v[7]) { return {Rotation(v[0], v[1], v[2], v[3]), Vec3(v[4], v[5], v[6])}; }

void write_pose(const Pose& g, double out[7]) {
  const Rotation r = g.rotation().canonicalized();
  out[0] = r.w();
  out[1] = r.x();
  out[2] = r.y();
  out[3] = r.z();
  for (int k = 0; k < 3; ++k) out[4 + k] = g.translation()[k];
}

BenchConfig config_from(const sx_options* opts) {
  BenchConfig cfg;
  if (opts) {
    cfg.seg_tol = opts->seg_tol;
    cfg.step = opts->step;
    cfg.fill_tilt_deg = opts->fill_tilt_deg;
  }
  if (!(cfg.seg_tol > 0.0 && cfg.step > 0.0 && cfg.fill_tilt_deg > 0.0)) {
    throw DomainError("tolerances must be positive");
  }
  return cfg;
}

Method method_from(const sx_options* opts) {
  if (!opts || opts->method == SX_METHOD_CFRAME) return Method::CFrame;
  if (opts->method == SX_METHOD_BASELINE) return Method::Baseline;
  throw InvalidArgument{"unknown method"};
}

std::vector<Pose> primary_poses(const GuidingPoses& ee, const TaskInstance& inst) {
  std::vector<Pose> out;
  for (const Pose& g : ee.poses) out.push_back(g * inst.grasp);
  return out;
}

}  // namespace

extern "C" {

const char* sx_last_error(void) { return g_last_error.c_str(); }

const char* sx_status_name(sx_status status) {
  switch (status) {
    case SX_OK: return "ok";
    case SX_ERR_DOMAIN: return "domain_error";
    case SX_ERR_PARSE: return "parse_error";
    case SX_ERR_JOINT_LIMIT: return "joint_limit_violation";
    case SX_ERR_SINGULARITY_STALL: return "singularity_stall";
    case SX_ERR_NOT_CONVERGED: return "not_converged";
    case SX_ERR_CORNER_UNDEFINED: return "corner_undefined";
    case SX_ERR_DEGENERATE_LINE: return "degenerate_line";
    case SX_ERR_NO_VERTICAL_INTERSECTION: return "no_vertical_intersection";
    case SX_ERR_IO: return "io_error";
    case SX_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SX_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* sx_version(void) { return "0.1.0"; }

void sx_string_free(char* s) { std::free(s); }

sx_status sx_pose_compose(const double a[7], const double b[7], double out[7]) {
  return guard([&] {
    require(a, "a is null");
    require(b, "b is null");
    require(out, "out is null");
    write_pose(read_pose(a) * read_pose(b), out);
  });
}

sx_status sx_pose_sclerp(const double g0[7], const double g1[7], double tau, double out[7]) {
  return guard([&] {
    require(g0, "g0 is null");
    require(g1, "g1 is null");
    require(out, "out is null");
    write_pose(sclerp(read_pose(g0), read_pose(g1), tau), out);
  });
}

sx_status sx_arm_default(sx_arm** out) {
  return guard([&] {
    require(out, "out is null");
    *out = new sx_arm{default_arm()};
  });
}

sx_status sx_arm_from_json(const char* text, sx_arm** out) {
  return guard([&] {
    require(text, "json is null");
    require(out, "out is null");
    *out = new sx_arm{arm_from_json(parse_json(text))};
  });
}

sx_status sx_arm_to_json(const sx_arm* arm, char** json_out) {
  return guard([&] {
    require(arm, "arm is null");
    require(json_out, "json_out is null");
    *json_out = dup(to_json(arm->model).dump(2));
  });
}

size_t sx_arm_joint_count(const sx_arm* arm) { return arm ? arm->model.joint_count() : 0; }

sx_status sx_arm_forward_kinematics(const sx_arm* arm, const double* q, size_t n, double pose_out[7]) {
  return guard([&] {
    require(arm, "arm is null");
    require(q, "q is null");
    require(pose_out, "pose_out is null");
    const JointConfig qv = Eigen::Map<const Eigen::VectorXd>(q, static_cast<Eigen::Index>(n));
    write_pose(forward_kinematics(arm->model, qv), pose_out);
  });
}

void sx_arm_free(sx_arm* arm) { delete arm; }

sx_status sx_demo_from_json(const char* text, sx_demo** out) {
  return guard([&] {
    require(text, "json is null");
    require(out, "out is null");
    *out = new sx_demo{demo_from_json(parse_json(text))};
  });
}

sx_status sx_demo_synthetic(const sx_arm* arm, sx_demo** out) {
  return guard([&] {
    require(arm, "arm is null");
    require(out, "out is null");
    *out = new sx_demo{synthetic_pour_demo(arm->model)};
  });
}

sx_status sx_demo_to_json(const sx_demo* demo, char** json_out) {
  return guard([&] {
    require(demo, "demo is null");
    require(json_out, "json_out is null");
    *json_out = dup(to_json(demo->demo).dump(2));
  });
}

void sx_demo_free(sx_demo* demo) { delete demo; }

sx_status sx_instance_from_json(const char* text, sx_instance** out) {
  return guard([&] {
    require(text, "json is null");
    require(out, "out is null");
    *out = new sx_instance{instance_from_json(parse_json(text))};
  });
}

sx_status sx_instance_to_json(const sx_instance* inst, char** json_out) {
  return guard([&] {
    require(inst, "instance is null");
    require(json_out, "json_out is null");
    *json_out = dup(to_json(inst->inst).dump(2));
  });
}

void sx_instance_free(sx_instance* inst) { delete inst; }

void sx_options_default(sx_options* opts) {
  if (!opts) return;
  const BenchConfig cfg;
  opts->seg_tol = cfg.seg_tol;
  opts->step = cfg.step;
  opts->fill_tilt_deg = cfg.fill_tilt_deg;
  opts->method = SX_METHOD_CFRAME;
}

sx_status sx_segment(const sx_arm* arm, const sx_demo* demo, double seg_tol, char** json_out) {
  return guard([&] {
    require(arm, "arm is null");
    require(demo, "demo is null");
    require(json_out, "json_out is null");
    demo->demo.validate(arm->model);
    const GuidingPoses g = segment_constant_screws(fk_path(arm->model, demo->demo.joints), seg_tol);
    *json_out = dup(to_json(g).dump(2));
  });
}

sx_status sx_assign_frames(const sx_arm* arm, const sx_demo* demo, const sx_instance* inst, const sx_options* opts,
                           char** json_out) {
  return guard([&] {
    require(arm, "arm is null");
    require(demo, "demo is null");
    require(json_out, "json_out is null");
    const BenchConfig cfg = config_from(opts);
    const DemoModel m = prepare_demo(demo->demo, arm->model, cfg.seg_tol);
    json out = {{"demo",
                 {{"primary", to_json(m.primary.frame)},
                  {"passive", to_json(m.passive)},
                  {"critical_sample", m.primary.critical_sample}}}};
    if (inst) {
      const MotionTransferFrame p = assign_new_primary_frame(inst->inst);
      out["new"] = {{"primary", to_json(p)}, {"passive", to_json(assign_new_passive_frame(inst->inst, p.pose))}};
    }
    *json_out = dup(out.dump(2));
  });
}

sx_status sx_transfer(const sx_arm* arm, const sx_demo* demo, const sx_instance* inst, const sx_options* opts,
                      char** json_out) {
  return guard([&] {
    require(arm, "arm is null");
    require(demo, "demo is null");
    require(inst, "instance is null");
    require(json_out, "json_out is null");
    const BenchConfig cfg = config_from(opts);
    const DemoModel m = prepare_demo(demo->demo, arm->model, cfg.seg_tol);
    const CFrameTransfer cf = transfer_with_cframes(m, inst->inst);
    json relative = json::array();
    for (const Pose& g : m.relative.poses) relative.push_back(to_json(g));
    const json out = {
        {"demo_guiding_poses", to_json(m.world)},
        {"relative_guiding_poses", {{"frame", to_string(FrameTag::CFrameRelative)}, {"poses", relative}}},
        {"cframe",
         {{"primary_frame", to_json(cf.primary)}, {"passive_frame", to_json(cf.passive)},
          {"guiding_poses", to_json(cf.end_effector)}}},
        {"baseline", {{"guiding_poses", to_json(baseline_transfer(m.in_passive, inst->inst.passive_base))}}}};
    *json_out = dup(out.dump(2));
  });
}

sx_status sx_plan(const sx_arm* arm, const sx_demo* demo, const sx_instance* inst, const sx_options* opts,
                  sx_plan_result** out) {
  return guard([&] {
    require(arm, "arm is null");
    require(demo, "demo is null");
    require(inst, "instance is null");
    require(out, "out is null");
    const BenchConfig cfg = config_from(opts);
    const Method method = method_from(opts);
    const DemoModel m = prepare_demo(demo->demo, arm->model, cfg.seg_tol);
    *out = new sx_plan_result{inst->inst, plan_transfer(m, inst->inst, arm->model, method, cfg)};
  });
}

int sx_plan_result_collision_free(const sx_plan_result* r) { return r && r->plan.evaluation.collision_free ? 1 : 0; }

sx_status sx_plan_result_json(const sx_plan_result* r, char** json_out) {
  return guard([&] {
    require(r, "result is null");
    require(json_out, "json_out is null");
    const json out = {{"method", to_string(r->plan.method)},
                      {"frames", {{"primary", to_json(r->plan.frames.primary)},
                                  {"passive", to_json(r->plan.frames.passive)}}},
                      {"guiding_poses", to_json(r->plan.guiding)},
                      {"plan", to_json(r->plan.path)},
                      {"evaluation", to_json(r->plan.evaluation)}};
    *json_out = dup(out.dump(2));
  });
}

sx_status sx_plan_result_svg(const sx_plan_result* r, char** svg_out) {
  return guard([&] {
    require(r, "result is null");
    require(svg_out, "svg_out is null");
    PlotData d;
    d.instance = r->inst;
    d.primary_poses = primary_poses(r->plan.guiding, r->inst);
    const Pose cr = r->plan.frames.primary.local;
    for (const Pose& base : r->plan.primary_track) d.c_r_track.push_back((base * cr).translation());
    d.pour_in = r->plan.evaluation.pour_in;
    d.title = std::string(to_string(r->plan.method)) + (r->plan.evaluation.collision_free ? "" : " (collision)");
    *svg_out = dup(plot_svg(d));
  });
}

sx_status sx_plan_result_tilt_csv(const sx_plan_result* r, char** csv_out) {
  return guard([&] {
    require(r, "result is null");
    require(csv_out, "csv_out is null");
    std::ostringstream os;
    os << "waypoint,tilt_deg,pour_in\n";
    const PlanEvaluation& ev = r->plan.evaluation;
    for (std::size_t i = 0; i < ev.tilt_deg.size(); ++i) {
      os << i << ',' << ev.tilt_deg[i] << ',' << (ev.pour_in[i] ? 1 : 0) << '\n';
    }
    *csv_out = dup(os.str());
  });
}

void sx_plan_result_free(sx_plan_result* r) { delete r; }

sx_status sx_plot_svg(const sx_arm* arm, const sx_demo* demo, const sx_instance* inst, const sx_options* opts,
                      char** svg_out) {
  return guard([&] {
    require(arm, "arm is null");
    require(demo, "demo is null");
    require(inst, "instance is null");
    require(svg_out, "svg_out is null");
    const BenchConfig cfg = config_from(opts);
    const Method method = method_from(opts);
    const DemoModel m = prepare_demo(demo->demo, arm->model, cfg.seg_tol);
    const CFrameTransfer cf = transfer_with_cframes(m, inst->inst);
    const GuidingPoses g = method == Method::CFrame ? cf.end_effector : baseline_transfer(m.in_passive, inst->inst.passive_base);
    PlotData d;
    d.instance = inst->inst;
    d.primary_poses = primary_poses(g, inst->inst);
    const Pose cr_from_ee = inst->inst.grasp * cf.primary.local;
    for (const Pose& e : reconstruct(g, [&] {
           std::vector<double> pos;
           const double a = static_cast<double>(g.source_indices.front());
           const double b = static_cast<double>(g.source_indices.back());
           for (int i = 0; i < kReconstructionSamples; ++i) pos.push_back(a + (b - a) * i / (kReconstructionSamples - 1));
           return pos;
         }())) {
      const Pose c = e * cr_from_ee;
      d.c_r_track.push_back(c.translation());
      d.pour_in.push_back(pour_in(c, inst->inst));
    }
    d.title = std::string(to_string(method)) + " guiding poses";
    *svg_out = dup(plot_svg(d));
  });
}

sx_status sx_bench_run(const sx_arm* arm, const sx_demo* demo, const char* config_json, uint64_t seed, int per_cell,
                       const sx_options* opts, unsigned threads, char** json_out, char** csv_out) {
  return guard([&] {
    require(arm, "arm is null");
    require(demo, "demo is null");
    BenchConfig cfg;
    if (config_json) cfg = bench_config_from_json(parse_json(config_json), cfg);
    if (opts) {
      if (opts->seg_tol > 0.0) cfg.seg_tol = opts->seg_tol;
      if (opts->step > 0.0) cfg.step = opts->step;
      if (opts->fill_tilt_deg > 0.0) cfg.fill_tilt_deg = opts->fill_tilt_deg;
    }
    if (seed != 0) cfg.seed = seed;
    if (per_cell != 0) cfg.per_cell = per_cell;
    const BenchReport report = run_bench(demo->demo, arm->model, cfg, threads);
    if (json_out) *json_out = dup(to_json(report).dump(2));
    if (csv_out) *csv_out = dup(bench_csv(report));
  });
}

}  // extern "C"
