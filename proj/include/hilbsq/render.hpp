#pragma once

// Poincare disk rendering: a pinned orthogonal splitting of the intersection
// form maps the light cone to the standard hyperboloid, classes project to
// the unit disk, geodesics become circular arcs orthogonal to the boundary,
// and scenes serialize to byte-deterministic SVG.

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hilbsq/isometry.hpp"
#include "hilbsq/lattice.hpp"

namespace hilbsq {

struct DiskPoint {
  double x = 0, y = 0;

  double norm_sq() const { return x * x + y * y; }
};

// Orthogonal splitting of the form: u0 = (1,-1,0) with square 2,
// u1 = (1,-2,0) with square -4, u2 = (-1,0,2) with square -20. Pinned here
// and echoed in the SVG header so renders are reproducible bit for bit.
inline DiskPoint disk_project(double x, double lam, double y) {
  auto pairing = [](double ax, double alam, double ay, double bx, double blam, double by) {
    return 4 * ax * bx + 2 * (ax * by + ay * bx) - 4 * ay * by - 2 * alam * blam;
  };
  const double p0 = pairing(x, lam, y, 1, -1, 0);
  const double p1 = pairing(x, lam, y, 1, -2, 0);
  const double p2 = pairing(x, lam, y, -1, 0, 2);
  const double t = (p0 / 2.0) * std::sqrt(2.0);
  const double dx = (p1 / -4.0) * 2.0;
  const double dy = (p2 / -20.0) * std::sqrt(20.0);
  const double q = t * t - dx * dx - dy * dy;
  if (q > 1e-12) {
    const double s = std::sqrt(q);
    return DiskPoint{dx / (s + t), dy / (s + t)};
  }
  return DiskPoint{dx / t, dy / t};  // boundary class: lands on the unit circle
}

inline DiskPoint disk_project(const HilbClass& c) {
  return disk_project(to_double(c.x), to_double(c.lam), to_double(c.y));
}

// cosh of the hyperbolic distance between two disk points.
inline double disk_cosh_distance(const DiskPoint& p, const DiskPoint& q) {
  const double dx = p.x - q.x, dy = p.y - q.y;
  return 1.0 + 2.0 * (dx * dx + dy * dy) / ((1.0 - p.norm_sq()) * (1.0 - q.norm_sq()));
}

// Geodesic between two disk points: a diameter chord when collinear with
// the origin, otherwise the arc of the circle through both points that is
// orthogonal to the unit circle.
struct ArcSpec {
  bool is_line = false;
  DiskPoint from, to;
  double cx = 0, cy = 0, radius = 0;
  int sweep = 0;  // SVG sweep flag for the arc running inside the disk
};

inline ArcSpec geodesic_arc(const DiskPoint& a, const DiskPoint& b) {
  ArcSpec arc;
  arc.from = a;
  arc.to = b;
  const double det = 2.0 * (a.x * b.y - a.y * b.x);
  if (std::abs(det) < 1e-12) {
    arc.is_line = true;
    return arc;
  }
  // center solves 2(x*cx + y*cy) = |z|^2 + 1 for both endpoints
  const double ra = a.norm_sq() + 1.0, rb = b.norm_sq() + 1.0;
  arc.cx = (ra * b.y - rb * a.y) / det;
  arc.cy = (rb * a.x - ra * b.x) / det;
  arc.radius = std::sqrt(arc.cx * arc.cx + arc.cy * arc.cy - 1.0);
  const double cross = (a.x - arc.cx) * (b.y - arc.cy) - (a.y - arc.cy) * (b.x - arc.cx);
  arc.sweep = cross < 0 ? 1 : 0;
  return arc;
}

// Sample the arc from its start to its end along the orientation the sweep
// flag selects (counterclockwise when sweep == 0 in disk coordinates).
inline std::vector<DiskPoint> sample_arc(const ArcSpec& arc, int samples) {
  std::vector<DiskPoint> out;
  if (arc.is_line) {
    for (int i = 0; i <= samples; ++i) {
      const double t = static_cast<double>(i) / samples;
      out.push_back(DiskPoint{arc.from.x + t * (arc.to.x - arc.from.x),
                              arc.from.y + t * (arc.to.y - arc.from.y)});
    }
    return out;
  }
  double a0 = std::atan2(arc.from.y - arc.cy, arc.from.x - arc.cx);
  double a1 = std::atan2(arc.to.y - arc.cy, arc.to.x - arc.cx);
  const double two_pi = 2.0 * std::acos(-1.0);
  if (arc.sweep == 0) {  // counterclockwise: increase angle
    while (a1 < a0) a1 += two_pi;
  } else {
    while (a1 > a0) a1 -= two_pi;
  }
  for (int i = 0; i <= samples; ++i) {
    const double t = a0 + (a1 - a0) * static_cast<double>(i) / samples;
    out.push_back(DiskPoint{arc.cx + arc.radius * std::cos(t),
                            arc.cy + arc.radius * std::sin(t)});
  }
  return out;
}

struct LabeledPoint {
  std::string label;
  DiskPoint at;
};

struct DiskScene {
  std::vector<LabeledPoint> points;
  std::vector<std::pair<DiskPoint, DiskPoint>> geodesics;
  std::vector<std::vector<DiskPoint>> polylines;
};

// Scene with the three involution fixed points and their geodesic triangle.
inline DiskScene default_scene() {
  DiskScene scene;
  const auto gens = generators();
  const char* names[3] = {"iota0", "iota1", "iota2"};
  std::array<DiskPoint, 3> pts;
  for (int k = 0; k < 3; ++k) {
    const auto fp = fixed_points(gens[k]);
    const HilbClass p = std::get<InteriorFixedPoint>(fp).point;
    pts[k] = disk_project(p);
    scene.points.push_back({names[k], pts[k]});
  }
  scene.geodesics.push_back({pts[0], pts[1]});
  scene.geodesics.push_back({pts[1], pts[2]});
  scene.geodesics.push_back({pts[0], pts[2]});
  return scene;
}

// Forward orbit of a class under g*, as a polyline toward the expanding
// boundary fixed point.
inline std::vector<HilbClass> g_star_orbit(const HilbClass& start, int steps) {
  std::vector<HilbClass> orbit = {start};
  const Mat3 g = g_star_matrix();
  HilbClass cur = start;
  for (int i = 0; i < steps; ++i) {
    cur = g.apply(cur);
    orbit.push_back(cur);
  }
  return orbit;
}

inline DiskScene orbit_scene(const HilbClass& start, int steps) {
  DiskScene scene = default_scene();
  std::vector<DiskPoint> line;
  const auto orbit = g_star_orbit(start, steps);
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    line.push_back(disk_project(orbit[i]));
    scene.points.push_back({"o" + std::to_string(i), line.back()});
  }
  scene.polylines.push_back(line);
  return scene;
}

namespace detail {

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10f", v == 0.0 ? 0.0 : v);  // normalize -0
  return buf;
}

}  // namespace detail

// Deterministic SVG: fixed header, fixed precision, no timestamps. The
// vertical axis is flipped for display; distances are flip-invariant.
inline std::string render_svg(const DiskScene& scene) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
        "viewBox=\"-1.15 -1.15 2.30 2.30\">\n";
  os << "<!-- projection: orthogonal splitting u0=(1,-1,0), u1=(1,-2,0), u2=(-1,0,2); "
        "T=(v.u0)/sqrt(2), X=-(v.u1)/2, Y=-(v.u2)/sqrt(20); disk=(X,Y)/(sqrt(T^2-X^2-Y^2)+T); "
        "svg y axis points down -->\n";
  os << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#000\" "
        "stroke-width=\"0.008\"/>\n";
  for (const auto& [a, b] : scene.geodesics) {
    const ArcSpec arc = geodesic_arc(a, b);
    // emitted with y flipped; the sweep flag flips with it
    if (arc.is_line) {
      os << "<path class=\"geo\" d=\"M " << detail::fmt(a.x) << " " << detail::fmt(-a.y)
         << " L " << detail::fmt(b.x) << " " << detail::fmt(-b.y)
         << "\" fill=\"none\" stroke=\"#36c\" stroke-width=\"0.01\"/>\n";
    } else {
      os << "<path class=\"geo\" d=\"M " << detail::fmt(a.x) << " " << detail::fmt(-a.y)
         << " A " << detail::fmt(arc.radius) << " " << detail::fmt(arc.radius)
         << " 0 0 " << (arc.sweep == 1 ? 0 : 1) << " " << detail::fmt(b.x) << " "
         << detail::fmt(-b.y) << "\" fill=\"none\" stroke=\"#36c\" stroke-width=\"0.01\"/>\n";
    }
  }
  for (const auto& line : scene.polylines) {
    os << "<polyline class=\"orbit\" points=\"";
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) os << " ";
      os << detail::fmt(line[i].x) << "," << detail::fmt(-line[i].y);
    }
    os << "\" fill=\"none\" stroke=\"#888\" stroke-width=\"0.006\"/>\n";
  }
  for (const auto& p : scene.points) {
    os << "<circle class=\"pt\" cx=\"" << detail::fmt(p.at.x) << "\" cy=\""
       << detail::fmt(-p.at.y) << "\" r=\"0.018\" fill=\"#c22\"/>\n";
    os << "<text x=\"" << detail::fmt(p.at.x + 0.03) << "\" y=\""
       << detail::fmt(-p.at.y - 0.03) << "\" font-size=\"0.07\" "
          "font-family=\"monospace\">"
       << p.label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

// Write-then-rename so readers never observe a partial file.
inline void write_svg_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.good()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace hilbsq
