#pragma once

// Deterministic SVG 1.1 drawings of antenna configurations: translucent
// sectors (unbounded ones clipped to the viewport), communication edges,
// points and an optional grid overlay. All numbers use fixed "%.4f".

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sectorlink/geometry.hpp"

namespace sectorlink {

struct RenderGrid {
  Point origin;
  double side = 7.0;
};

struct RenderOptions {
  double canvas = 800.0;  // longer side in pixels
  double margin = 1.0;    // world units around the bounding box
  std::optional<RenderGrid> grid;
};

namespace svg_detail {

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v == 0.0 ? 0.0 : v);
  return buf;
}

struct Viewport {
  double min_x = 0, min_y = 0, max_x = 1, max_y = 1, scale = 1, pad = 10;

  [[nodiscard]] double sx(double x) const { return pad + (x - min_x) * scale; }
  [[nodiscard]] double sy(double y) const { return pad + (max_y - y) * scale; }
  [[nodiscard]] double width() const { return 2 * pad + (max_x - min_x) * scale; }
  [[nodiscard]] double height() const { return 2 * pad + (max_y - min_y) * scale; }
  [[nodiscard]] double diagonal_world() const { return std::hypot(max_x - min_x, max_y - min_y); }
};

inline Viewport fit(std::span<const Point> pts, const RenderOptions& opt) {
  Viewport v;
  if (!pts.empty()) {
    v.min_x = v.max_x = pts[0].x;
    v.min_y = v.max_y = pts[0].y;
    for (const auto& p : pts) {
      v.min_x = std::min(v.min_x, p.x);
      v.max_x = std::max(v.max_x, p.x);
      v.min_y = std::min(v.min_y, p.y);
      v.max_y = std::max(v.max_y, p.y);
    }
  }
  v.min_x -= opt.margin;
  v.min_y -= opt.margin;
  v.max_x += opt.margin;
  v.max_y += opt.margin;
  const double span = std::max(v.max_x - v.min_x, v.max_y - v.min_y);
  v.scale = opt.canvas / span;
  return v;
}

inline std::string sector_path(const Wedge& w, const Viewport& v) {
  const double r = w.unbounded() ? 2.0 * v.diagonal_world() : w.range;
  const double a0 = w.right.angle().radians();
  const double rad = r * v.scale;
  if (w.aperture >= kTwoPi) {
    return "<circle cx=\"" + fmt(v.sx(w.apex.x)) + "\" cy=\"" + fmt(v.sy(w.apex.y)) + "\" r=\"" + fmt(rad) +
           "\" class=\"sector\"/>\n";
  }
  const double a1 = a0 + w.aperture;
  const Point p0{w.apex.x + r * std::cos(a0), w.apex.y + r * std::sin(a0)};
  const Point p1{w.apex.x + r * std::cos(a1), w.apex.y + r * std::sin(a1)};
  // Counterclockwise in the world is clockwise on screen (y flipped).
  return "<path d=\"M " + fmt(v.sx(w.apex.x)) + " " + fmt(v.sy(w.apex.y)) + " L " + fmt(v.sx(p0.x)) + " " +
         fmt(v.sy(p0.y)) + " A " + fmt(rad) + " " + fmt(rad) + " 0 " + (w.aperture > kPi ? "1" : "0") + " 0 " +
         fmt(v.sx(p1.x)) + " " + fmt(v.sy(p1.y)) + " Z\" class=\"sector\"/>\n";
}

}  // namespace svg_detail

inline std::string render_svg(std::span<const Wedge> antennas,
                              std::span<const std::pair<std::size_t, std::size_t>> edges,
                              const RenderOptions& opt = {}) {
  using namespace svg_detail;
  std::vector<Point> pts;
  for (const auto& w : antennas) pts.push_back(w.apex);
  const Viewport v = fit(pts, opt);
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(v.width()) + "\" height=\"" +
         fmt(v.height()) + "\">\n";
  out += "<style>.sector{fill:#3b7dd8;fill-opacity:0.12;stroke:#3b7dd8;stroke-opacity:0.4;stroke-width:0.5}"
         ".edge{stroke:#c0392b;stroke-width:1}.grid{stroke:#999;stroke-width:0.5;stroke-dasharray:4 3}"
         ".point{fill:#111}</style>\n";
  out += "<defs><clipPath id=\"view\"><rect x=\"0\" y=\"0\" width=\"" + fmt(v.width()) + "\" height=\"" +
         fmt(v.height()) + "\"/></clipPath></defs>\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + fmt(v.width()) + "\" height=\"" + fmt(v.height()) + "\" fill=\"white\"/>\n";

  if (opt.grid) {
    const auto& g = *opt.grid;
    out += "<g id=\"grid\">\n";
    const double x_first = g.origin.x + std::floor((v.min_x - g.origin.x) / g.side) * g.side;
    for (double x = x_first; x <= v.max_x; x += g.side)
      if (x >= v.min_x)
        out += "<line x1=\"" + fmt(v.sx(x)) + "\" y1=\"" + fmt(v.sy(v.min_y)) + "\" x2=\"" + fmt(v.sx(x)) +
               "\" y2=\"" + fmt(v.sy(v.max_y)) + "\" class=\"grid\"/>\n";
    const double y_first = g.origin.y + std::floor((v.min_y - g.origin.y) / g.side) * g.side;
    for (double y = y_first; y <= v.max_y; y += g.side)
      if (y >= v.min_y)
        out += "<line x1=\"" + fmt(v.sx(v.min_x)) + "\" y1=\"" + fmt(v.sy(y)) + "\" x2=\"" + fmt(v.sx(v.max_x)) +
               "\" y2=\"" + fmt(v.sy(y)) + "\" class=\"grid\"/>\n";
    out += "</g>\n";
  }

  out += "<g id=\"sectors\" clip-path=\"url(#view)\">\n";
  for (const auto& w : antennas) out += sector_path(w, v);
  out += "</g>\n<g id=\"edges\">\n";
  for (const auto& [a, b] : edges)
    out += "<line x1=\"" + fmt(v.sx(pts[a].x)) + "\" y1=\"" + fmt(v.sy(pts[a].y)) + "\" x2=\"" + fmt(v.sx(pts[b].x)) +
           "\" y2=\"" + fmt(v.sy(pts[b].y)) + "\" class=\"edge\"/>\n";
  out += "</g>\n<g id=\"points\">\n";
  for (const auto& p : pts)
    out += "<circle cx=\"" + fmt(v.sx(p.x)) + "\" cy=\"" + fmt(v.sy(p.y)) + "\" r=\"3\" class=\"point\"/>\n";
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace sectorlink
