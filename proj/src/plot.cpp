#include "plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "geometry.hpp"

namespace screwxfer {

namespace {

constexpr int kRimSamples = 128;
constexpr double kCanvas = 640.0, kMargin = 30.0;

std::vector<Vec3> rim_world(const ContainerGeom& g, const Pose& base, bool top) {
  std::vector<Vec3> pts;
  for (int i = 0; i < kRimSamples; ++i) {
    Vec3 p = rim_point(g, 2.0 * M_PI * i / kRimSamples).position;
    if (!top) p.z() = 0.0;
    pts.push_back(base.transform_point(p));
  }
  return pts;
}

struct View {
  double min_x, min_y, scale;
  double px(double x) const { return kMargin + (x - min_x) * scale; }
  double py(double y) const { return kCanvas - kMargin - (y - min_y) * scale; }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string polyline(const View& v, const std::vector<Vec3>& pts, bool closed, const std::string& style) {
  std::ostringstream os;
  os << (closed ? "<polygon" : "<polyline") << " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) os << ' ';
    os << num(v.px(pts[i].x())) << ',' << num(v.py(pts[i].y()));
  }
  os << "\" " << style << "/>\n";
  return os.str();
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string plot_svg(const PlotData& d) {
  const std::vector<Vec3> passive = rim_world(d.instance.passive, d.instance.passive_base, true);
  const std::vector<Vec3> table = rim_world(d.instance.primary, d.instance.primary_base, false);
  std::vector<std::vector<Vec3>> footprints;
  for (const Pose& g : d.primary_poses) footprints.push_back(rim_world(d.instance.primary, g, true));

  double lo_x = std::numeric_limits<double>::infinity(), lo_y = lo_x, hi_x = -lo_x, hi_y = -lo_x;
  const auto grow = [&](const std::vector<Vec3>& pts) {
    for (const Vec3& p : pts) {
      lo_x = std::min(lo_x, p.x());
      hi_x = std::max(hi_x, p.x());
      lo_y = std::min(lo_y, p.y());
      hi_y = std::max(hi_y, p.y());
    }
  };
  grow(passive);
  grow(table);
  for (const auto& f : footprints) grow(f);
  grow(d.c_r_track);
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-3});
  const View v{lo_x, lo_y, (kCanvas - 2.0 * kMargin) / span};

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\"" << kCanvas
     << "\" viewBox=\"0 0 " << kCanvas << ' ' << kCanvas << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!d.title.empty()) os << "<text x=\"10\" y=\"20\" font-size=\"14\">" << escape(d.title) << "</text>\n";
  os << "<g id=\"passive-rim\">\n" << polyline(v, passive, true, "fill=\"#dde8ff\" stroke=\"#1f4fbf\" stroke-width=\"2\"")
     << "</g>\n";
  os << "<g id=\"primary-table\">\n"
     << polyline(v, table, true, "fill=\"none\" stroke=\"#888\" stroke-dasharray=\"4 3\"") << "</g>\n";
  os << "<g id=\"primary-guiding\">\n";
  for (const auto& f : footprints) os << polyline(v, f, true, "fill=\"none\" stroke=\"#b07000\" stroke-width=\"1\"");
  os << "</g>\n<g id=\"cr-track\">\n";
  for (std::size_t i = 0; i + 1 < d.c_r_track.size(); ++i) {
    const bool in = i < d.pour_in.size() && d.pour_in[i];
    os << polyline(v, {d.c_r_track[i], d.c_r_track[i + 1]}, false,
                   std::string("fill=\"none\" stroke-width=\"2\" stroke=\"") + (in ? "#1a9e3a" : "#d62728") + "\"");
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace screwxfer
