#include "io_json.hpp"

#include "errors.hpp"

namespace screwxfer {

namespace {

constexpr double kCm = 0.01;

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed ") + what + ": " + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid ") + what + ": " + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object holding \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const json& j) {
  if (!j.is_number()) throw ParseError("expected a number, got " + j.dump());
  return j.get<double>();
}

Vec3 vec3(const json& j) {
  if (!j.is_array() || j.size() != 3) throw ParseError("expected a 3-vector, got " + j.dump());
  return {number(j[0]), number(j[1]), number(j[2])};
}

json array(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

json array(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

const char* role_name(Role r) { return r == Role::Primary ? "primary" : "passive"; }

json bounds_json(const SizeBounds& b) {
  return {{"girth_threshold", b.girth_threshold}, {"height_threshold", b.height_threshold},
          {"min_ab", b.min_ab},
          {"max_ab", b.max_ab},
          {"min_h", b.min_h},
          {"max_h", b.max_h}};
}

SizeBounds bounds_from_json(const json& j, SizeBounds b) {
  if (j.contains("girth_threshold")) b.girth_threshold = number(j["girth_threshold"]);
  if (j.contains("height_threshold")) b.height_threshold = number(j["height_threshold"]);
  if (j.contains("min_ab")) b.min_ab = number(j["min_ab"]);
  if (j.contains("max_ab")) b.max_ab = number(j["max_ab"]);
  if (j.contains("min_h")) b.min_h = number(j["min_h"]);
  if (j.contains("max_h")) b.max_h = number(j["max_h"]);
  return b;
}

json method_json(const MethodCellStats& s, std::size_t processed) {
  return {{"collision_free", s.collision_free},
          {"collision_free_pct", s.collision_free_pct(processed)},
          {"tilt_min_deg", optional_number(s.tilt_min)},
          {"tilt_max_deg", optional_number(s.tilt_max)}};
}

}  // namespace

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

json to_json(const Pose& g) {
  const Eigen::Quaterniond q = g.rotation().canonicalized().quaternion();
  return {{"q", {q.w(), q.x(), q.y(), q.z()}}, {"t", array(g.translation())}};
}

Pose pose_from_json(const json& j) {
  return guarded("pose", [&] {
    if (j.is_object() && j.contains("matrix")) {
      const json& m = j["matrix"];
      if (!m.is_array() || m.size() != 4) throw ParseError("pose matrix must have 4 rows");
      Mat4 out;
      for (int r = 0; r < 4; ++r) {
        if (!m[r].is_array() || m[r].size() != 4) throw ParseError("pose matrix rows must have 4 entries");
        for (int c = 0; c < 4; ++c) out(r, c) = number(m[r][c]);
      }
      return Pose::from_matrix(out);
    }
    const json& q = field(j, "q");
    if (!q.is_array() || q.size() != 4) throw ParseError("pose quaternion must have 4 entries [w, x, y, z]");
    const Rotation r(Eigen::Quaterniond(number(q[0]), number(q[1]), number(q[2]), number(q[3])));
    return Pose(r, vec3(field(j, "t")));
  });
}

json to_json(const ArmModel& arm) {
  json axes = json::array(), limits = json::array();
  for (const JointAxis& a : arm.axes()) axes.push_back({{"dir", array(a.direction)}, {"moment", array(a.moment)}});
  for (const JointLimit& l : arm.limits()) limits.push_back({l.min, l.max});
  return {{"l", arm.joint_count()}, {"home_pose", to_json(arm.home_pose())}, {"axes", axes}, {"limits", limits}};
}

ArmModel arm_from_json(const json& j) {
  return guarded("arm", [&] {
    const json& axes_j = field(j, "axes");
    const json& limits_j = field(j, "limits");
    if (!axes_j.is_array() || !limits_j.is_array()) throw ParseError("arm axes and limits must be arrays");
    std::vector<JointAxis> axes;
    for (const json& a : axes_j) axes.push_back({vec3(field(a, "dir")), vec3(field(a, "moment"))});
    std::vector<JointLimit> limits;
    for (const json& l : limits_j) {
      if (!l.is_array() || l.size() != 2) throw ParseError("joint limit must be [min, max]");
      limits.push_back({number(l[0]), number(l[1])});
    }
    if (j.contains("l") && field(j, "l").get<std::size_t>() != axes.size()) {
      throw ParseError("arm \"l\" does not match the number of axes");
    }
    return ArmModel(std::move(axes), pose_from_json(field(j, "home_pose")), std::move(limits));
  });
}

json to_json(const ContainerGeom& g) {
  return {{"a", g.a / kCm}, {"b", g.b / kCm}, {"n", g.n}, {"h", g.height / kCm}};
}

ContainerGeom container_from_json(const json& j) {
  return guarded("container", [&] {
    return ContainerGeom(number(field(j, "a")) * kCm, number(field(j, "b")) * kCm, number(field(j, "n")),
                         number(field(j, "h")) * kCm);
  });
}

json to_json(const TaskInstance& inst) {
  return {{"primary", {{"base_pose", to_json(inst.primary_base)}, {"geometry", to_json(inst.primary)}}},
          {"passive", {{"base_pose", to_json(inst.passive_base)}, {"geometry", to_json(inst.passive)}}},
          {"grasp", to_json(inst.grasp)}};
}

TaskInstance instance_from_json(const json& j) {
  return guarded("task instance", [&] {
    TaskInstance inst;
    const json& p = field(j, "primary");
    const json& s = field(j, "passive");
    inst.primary_base = pose_from_json(field(p, "base_pose"));
    inst.primary = container_from_json(field(p, "geometry"));
    inst.passive_base = pose_from_json(field(s, "base_pose"));
    inst.passive = container_from_json(field(s, "geometry"));
    inst.grasp = pose_from_json(field(j, "grasp"));
    inst.validate();
    return inst;
  });
}

json to_json(const Demonstration& demo) {
  json joints = json::array();
  for (const auto& q : demo.joints) joints.push_back(array(q));
  return {{"task_instance", to_json(demo.instance)}, {"joints", joints}};
}

Demonstration demo_from_json(const json& j) {
  return guarded("demonstration", [&] {
    Demonstration demo;
    demo.instance = instance_from_json(field(j, "task_instance"));
    const json& joints = field(j, "joints");
    if (!joints.is_array()) throw ParseError("\"joints\" must be an array of joint vectors");
    for (const json& row : joints) {
      if (!row.is_array()) throw ParseError("joint sample must be an array");
      JointConfig q(static_cast<Eigen::Index>(row.size()));
      for (std::size_t k = 0; k < row.size(); ++k) q[static_cast<Eigen::Index>(k)] = number(row[k]);
      demo.joints.push_back(q);
    }
    return demo;
  });
}

json to_json(const GuidingPoses& g) {
  json poses = json::array();
  for (const Pose& p : g.poses) poses.push_back(to_json(p));
  return {{"frame", to_string(g.frame)}, {"source_indices", g.source_indices}, {"poses", poses}};
}

json to_json(const MotionTransferFrame& f) {
  return {{"owner", to_string(f.owner)},
          {"local_pose", to_json(f.local)},
          {"world_pose", to_json(f.pose)},
          {"fallback_direction", f.fallback_direction}};
}

json to_json(const JointPath& path) {
  json configs = json::array();
  for (const auto& q : path.configs) configs.push_back(array(q));
  return {{"configs", configs},
          {"arrivals", path.arrivals},
          {"max_tracking_error", path.max_tracking_error},
          {"max_final_error", path.max_final_error}};
}

json to_json(const PlanEvaluation& ev) {
  return {{"collision_free", ev.collision_free},
          {"first_collision_index",
           ev.first_collision_index ? json(*ev.first_collision_index) : json(nullptr)},
          {"pour_success", ev.pour_success},
          {"i0", ev.i0},
          {"max_tilt_outside_deg", ev.max_tilt_outside_deg},
          {"per_waypoint_tilt_deg", ev.tilt_deg},
          {"pour_in", ev.pour_in}};
}

json to_json(const BenchConfig& cfg) {
  return {{"seed", cfg.seed},
          {"per_cell", cfg.per_cell},
          {"seg_tol", cfg.seg_tol},
          {"step", cfg.step},
          {"fill_tilt_deg", cfg.fill_tilt_deg},
          {"primary_bounds", bounds_json(cfg.primary)},
          {"passive_bounds", bounds_json(cfg.passive)},
          {"table", {{"x", {cfg.table_x_min, cfg.table_x_max}}, {"y", {cfg.table_y_min, cfg.table_y_max}},
                     {"z", cfg.table_z}}},
          {"surface_density", {{"angular", cfg.density.angular}, {"min_rows", cfg.density.min_rows},
                               {"row_spacing", cfg.density.row_spacing}, {"cap_rings", cfg.density.cap_rings}}}};
}

BenchConfig bench_config_from_json(const json& j, BenchConfig cfg) {
  return guarded("bench config", [&] {
    if (!j.is_object()) throw ParseError("bench config must be an object");
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("per_cell")) cfg.per_cell = j["per_cell"].get<int>();
    if (j.contains("seg_tol")) cfg.seg_tol = number(j["seg_tol"]);
    if (j.contains("step")) cfg.step = number(j["step"]);
    if (j.contains("fill_tilt_deg")) cfg.fill_tilt_deg = number(j["fill_tilt_deg"]);
    if (j.contains("primary_bounds")) cfg.primary = bounds_from_json(j["primary_bounds"], cfg.primary);
    if (j.contains("passive_bounds")) cfg.passive = bounds_from_json(j["passive_bounds"], cfg.passive);
    if (j.contains("table")) {
      const json& t = j["table"];
      if (t.contains("x")) {
        cfg.table_x_min = number(t["x"].at(0));
        cfg.table_x_max = number(t["x"].at(1));
      }
      if (t.contains("y")) {
        cfg.table_y_min = number(t["y"].at(0));
        cfg.table_y_max = number(t["y"].at(1));
      }
      if (t.contains("z")) cfg.table_z = number(t["z"]);
    }
    if (j.contains("surface_density")) {
      const json& d = j["surface_density"];
      if (d.contains("angular")) cfg.density.angular = d["angular"].get<int>();
      if (d.contains("min_rows")) cfg.density.min_rows = d["min_rows"].get<int>();
      if (d.contains("row_spacing")) cfg.density.row_spacing = number(d["row_spacing"]);
      if (d.contains("cap_rings")) cfg.density.cap_rings = d["cap_rings"].get<int>();
    }
    if (!(cfg.seg_tol > 0.0 && cfg.step > 0.0 && cfg.fill_tilt_deg > 0.0)) {
      throw DomainError("tolerances must be positive");
    }
    if (cfg.per_cell <= 0 || cfg.per_cell % 10 != 0) throw DomainError("per_cell must be a positive multiple of 10");
    if (cfg.density.angular < 3 || cfg.density.min_rows < 1 || cfg.density.cap_rings < 1 ||
        !(cfg.density.row_spacing > 0.0)) {
      throw DomainError("surface density must be positive");
    }
    return cfg;
  });
}

json to_json(const BenchReport& report) {
  json cells = json::array();
  for (const CellReport& c : report.cells) {
    cells.push_back({{"id", c.spec.id()},
                     {"primary", {{"role", role_name(c.spec.primary.role)}, {"category", category_code(c.spec.primary)}}},
                     {"passive", {{"role", role_name(c.spec.passive.role)}, {"category", category_code(c.spec.passive)}}},
                     {"sampled", c.sampled},
                     {"processed", c.processed},
                     {"skipped", c.skipped},
                     {"cframe", method_json(c.cframe, c.processed)},
                     {"baseline", method_json(c.baseline, c.processed)}});
  }
  json skipped = json::array();
  for (const InstanceOutcome& o : report.instances) {
    if (!o.processed) skipped.push_back({{"cell", report.cells[o.cell].spec.id()}, {"index", o.index}, {"reason", o.skip_reason}});
  }
  return {{"seed", report.config.seed}, {"config", to_json(report.config)}, {"cells", cells}, {"skipped", skipped}};
}

}  // namespace screwxfer
