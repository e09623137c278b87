#pragma once

#include <string>
#include <vector>

#include "task.hpp"

namespace screwxfer {

struct PlotData {
  TaskInstance instance;
  // Primary base poses whose rim footprints are drawn (guiding poses).
  std::vector<Pose> primary_poses;
  // {C_r} track and per-sample pour_in status.
  std::vector<Vec3> c_r_track;
  std::vector<bool> pour_in;
  std::string title;
};

// Top-down SVG (world xy, +y up): passive rim, primary table footprint,
// primary rim at each pose, {C_r} track colored by pour_in.
std::string plot_svg(const PlotData& data);

}  // namespace screwxfer
