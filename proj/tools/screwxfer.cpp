// screwxfer command-line front end. Links only the C API.

#include <screwxfer/screwxfer.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

namespace {

enum Exit { kOk = 0, kInternal = 1, kBadInput = 2, kPlannerFailure = 3, kCollision = 4 };

struct InputError {
  std::string msg;
};

struct ApiError {
  sx_status status;
  std::string msg;
};

void check(sx_status s) {
  if (s != SX_OK) throw ApiError{s, sx_last_error()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{"cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError{"cannot write " + path};
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

// Takes ownership of a string returned by the library.
std::string take(char* s) {
  std::string out = s ? s : "";
  sx_string_free(s);
  return out;
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p); }
};

using Arm = Handle<sx_arm, sx_arm_free>;
using Demo = Handle<sx_demo, sx_demo_free>;
using Instance = Handle<sx_instance, sx_instance_free>;
using PlanResult = Handle<sx_plan_result, sx_plan_result_free>;

struct Args {
  std::string arm, demo, instance, out, svg, csv, config, tilt_csv;
  double seg_tol = 0, step = 0, fill_tilt_deg = 0;
  std::uint64_t seed = 0;
  int per_cell = 0;
  unsigned threads = 0;
  bool baseline = false;
};

void load_arm(const Args& a, Arm& arm) {
  if (a.arm.empty())
    check(sx_arm_default(&arm.p));
  else
    check(sx_arm_from_json(read_file(a.arm).c_str(), &arm.p));
}

void load_demo(const Args& a, const Arm& arm, Demo& demo) {
  if (a.demo.empty())
    check(sx_demo_synthetic(arm.p, &demo.p));
  else
    check(sx_demo_from_json(read_file(a.demo).c_str(), &demo.p));
}

void load_instance(const Args& a, Instance& inst) {
  if (a.instance.empty()) throw InputError{"--instance is required"};
  check(sx_instance_from_json(read_file(a.instance).c_str(), &inst.p));
}

sx_options options(const Args& a) {
  sx_options o;
  sx_options_default(&o);
  if (a.seg_tol > 0) o.seg_tol = a.seg_tol;
  if (a.step > 0) o.step = a.step;
  if (a.fill_tilt_deg > 0) o.fill_tilt_deg = a.fill_tilt_deg;
  o.method = a.baseline ? SX_METHOD_BASELINE : SX_METHOD_CFRAME;
  return o;
}

int cmd_segment(const Args& a) {
  Arm arm;
  Demo demo;
  load_arm(a, arm);
  load_demo(a, arm, demo);
  char* json = nullptr;
  check(sx_segment(arm.p, demo.p, options(a).seg_tol, &json));
  write_output(a.out, take(json));
  return kOk;
}

int cmd_assign_frames(const Args& a) {
  Arm arm;
  Demo demo;
  Instance inst;
  load_arm(a, arm);
  load_demo(a, arm, demo);
  if (!a.instance.empty()) load_instance(a, inst);
  const sx_options o = options(a);
  char* json = nullptr;
  check(sx_assign_frames(arm.p, demo.p, inst.p, &o, &json));
  write_output(a.out, take(json));
  return kOk;
}

int cmd_transfer(const Args& a) {
  Arm arm;
  Demo demo;
  Instance inst;
  load_arm(a, arm);
  load_demo(a, arm, demo);
  load_instance(a, inst);
  const sx_options o = options(a);
  char* json = nullptr;
  check(sx_transfer(arm.p, demo.p, inst.p, &o, &json));
  write_output(a.out, take(json));
  return kOk;
}

int cmd_plan(const Args& a) {
  Arm arm;
  Demo demo;
  Instance inst;
  load_arm(a, arm);
  load_demo(a, arm, demo);
  load_instance(a, inst);
  const sx_options o = options(a);
  PlanResult r;
  check(sx_plan(arm.p, demo.p, inst.p, &o, &r.p));
  char* json = nullptr;
  check(sx_plan_result_json(r.p, &json));
  write_output(a.out, take(json));
  if (!a.svg.empty()) {
    char* svg = nullptr;
    check(sx_plan_result_svg(r.p, &svg));
    write_output(a.svg, take(svg));
  }
  if (!a.tilt_csv.empty()) {
    char* csv = nullptr;
    check(sx_plan_result_tilt_csv(r.p, &csv));
    write_output(a.tilt_csv, take(csv));
  }
  return sx_plan_result_collision_free(r.p) ? kOk : kCollision;
}

int cmd_plot(const Args& a) {
  Arm arm;
  Demo demo;
  Instance inst;
  load_arm(a, arm);
  load_demo(a, arm, demo);
  load_instance(a, inst);
  const sx_options o = options(a);
  char* svg = nullptr;
  check(sx_plot_svg(arm.p, demo.p, inst.p, &o, &svg));
  write_output(a.svg.empty() ? a.out : a.svg, take(svg));
  return kOk;
}

int cmd_bench(const Args& a) {
  Arm arm;
  Demo demo;
  load_arm(a, arm);
  load_demo(a, arm, demo);
  std::string config;
  if (!a.config.empty()) config = read_file(a.config);
  // Zero fields leave the config file or library defaults in place.
  const sx_options o{a.seg_tol, a.step, a.fill_tilt_deg, SX_METHOD_CFRAME};
  char* json = nullptr;
  char* csv = nullptr;
  check(sx_bench_run(arm.p, demo.p, a.config.empty() ? nullptr : config.c_str(), a.seed, a.per_cell, &o, a.threads,
                     &json, &csv));
  std::string report = take(json), table = take(csv);
  std::string json_path = a.out, csv_path = a.csv;
  if (!a.out.empty() && std::filesystem::is_directory(a.out)) {
    json_path = (std::filesystem::path(a.out) / "bench_report.json").string();
    if (csv_path.empty()) csv_path = (std::filesystem::path(a.out) / "bench_report.csv").string();
  }
  write_output(json_path, report);
  if (!csv_path.empty()) write_output(csv_path, table);
  return kOk;
}

int cmd_synth_demo(const Args& a) {
  Arm arm;
  Demo demo;
  load_arm(a, arm);
  check(sx_demo_synthetic(arm.p, &demo.p));
  char* json = nullptr;
  check(sx_demo_to_json(demo.p, &json));
  write_output(a.out, take(json));
  return kOk;
}

int cmd_arm_export(const Args& a) {
  Arm arm;
  load_arm(a, arm);
  char* json = nullptr;
  check(sx_arm_to_json(arm.p, &json));
  write_output(a.out, take(json));
  return kOk;
}

int exit_for(sx_status s) {
  switch (s) {
    case SX_ERR_JOINT_LIMIT:
    case SX_ERR_SINGULARITY_STALL:
    case SX_ERR_NOT_CONVERGED:
      return kPlannerFailure;
    case SX_ERR_INTERNAL:
      return kInternal;
    default:
      return kBadInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Screw-based motion transfer for pouring tasks"};
  app.set_version_flag("--version", std::string(sx_version()));
  app.require_subcommand(1);
  app.footer(
      "Exit codes: 0 success, 1 internal error, 2 malformed input or missing file,\n"
      "3 planner failure, 4 plan evaluated as colliding.");

  Args a;
  const auto common = [&](CLI::App* c) {
    c->add_option("--arm", a.arm, "Arm model JSON (default: built-in 7-DoF arm)");
    c->add_option("--demo", a.demo, "Demonstration JSON (default: synthetic pour)");
    c->add_option("--seg-tol", a.seg_tol, "Segmentation tolerance")->check(CLI::PositiveNumber);
    c->add_option("--out", a.out, "Output path ('-' or omitted: stdout)");
  };
  const auto planning = [&](CLI::App* c) {
    c->add_option("--instance", a.instance, "Task instance JSON");
    c->add_option("--step", a.step, "ScLERP step")->check(CLI::PositiveNumber);
    c->add_option("--fill-tilt-deg", a.fill_tilt_deg, "Tilt at which pouring starts")->check(CLI::PositiveNumber);
    c->add_flag("--baseline", a.baseline, "Use base-frame transfer instead of motion-transfer frames");
  };

  CLI::App* segment = app.add_subcommand("segment", "Extract constant-screw guiding poses");
  common(segment);
  CLI::App* frames = app.add_subcommand("assign-frames", "Motion-transfer frames of demo and instance");
  common(frames);
  planning(frames);
  CLI::App* transfer = app.add_subcommand("transfer", "Transfer guiding poses to a new instance");
  common(transfer);
  planning(transfer);
  CLI::App* plan = app.add_subcommand("plan", "Plan and evaluate a transferred pour");
  common(plan);
  planning(plan);
  plan->add_option("--svg", a.svg, "Top-down SVG output");
  plan->add_option("--tilt-csv", a.tilt_csv, "Per-waypoint tilt CSV output");
  CLI::App* plot = app.add_subcommand("plot", "Top-down SVG of transferred guiding poses");
  common(plot);
  planning(plot);
  plot->add_option("--svg", a.svg, "SVG output (overrides --out)");
  CLI::App* bench = app.add_subcommand("bench", "Category benchmark of both methods");
  common(bench);
  bench->add_option("--step", a.step, "ScLERP step")->check(CLI::PositiveNumber);
  bench->add_option("--fill-tilt-deg", a.fill_tilt_deg, "Tilt at which pouring starts")->check(CLI::PositiveNumber);
  bench->add_option("--seed", a.seed, "RNG seed");
  bench->add_option("--per-cell", a.per_cell, "Instances per category cell")->check(CLI::PositiveNumber);
  bench->add_option("--threads", a.threads, "Worker threads (0: SCREWXFER_THREADS or hardware)");
  bench->add_option("--config", a.config, "Bench config JSON");
  bench->add_option("--csv", a.csv, "CSV summary output");
  CLI::App* synth = app.add_subcommand("synth-demo", "Write the synthetic demonstration");
  synth->add_option("--arm", a.arm, "Arm model JSON");
  synth->add_option("--out", a.out, "Output path");
  CLI::App* arm_export = app.add_subcommand("arm-export", "Write the arm model JSON");
  arm_export->add_option("--arm", a.arm, "Arm model JSON");
  arm_export->add_option("--out", a.out, "Output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    if (*segment) return cmd_segment(a);
    if (*frames) return cmd_assign_frames(a);
    if (*transfer) return cmd_transfer(a);
    if (*plan) return cmd_plan(a);
    if (*plot) return cmd_plot(a);
    if (*bench) return cmd_bench(a);
    if (*synth) return cmd_synth_demo(a);
    if (*arm_export) return cmd_arm_export(a);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.msg << '\n';
    return kBadInput;
  } catch (const ApiError& e) {
    std::cerr << "error: " << sx_status_name(e.status) << ": " << e.msg << '\n';
    return exit_for(e.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
