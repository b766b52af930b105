#pragma once

// JSON instance and configuration files.
//
// Instance: {"points": [{"x": .., "y": ..}, ...], "metadata": {...}}
// Config:   {"mode": "..", "antennas": [{"x", "y", "orientation_radians",
//            "aperture_radians", "range", "right_ray", "left_ray"}], ...}
//
// Doubles are written in shortest round-trip form. An unbounded range is the
// string "inf". The optional ray fields carry the exact bounding-ray terms so
// a written configuration reads back bit-identical; they are ignored when
// they disagree with the stated angles.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sectorlink/geometry.hpp"

namespace sectorlink {

using Json = nlohmann::ordered_json;

struct InstanceFile {
  std::vector<Point> points;
  Json metadata = Json::object();
};

struct ConfigFile {
  std::string mode;
  std::vector<Wedge> antennas;
  Json extras = Json::object();  // summary, grid, beta, tour, ...
};

namespace io_detail {

inline Json form_to_json(const exact::LinearForm& f) {
  Json out = Json::array();
  for (double v : f.values()) out.push_back(v);
  return out;
}

inline exact::LinearForm form_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || j.size() > 4) throw Error("malformed ray terms");
  exact::LinearForm f;
  for (const auto& v : j) f.push(v.get<double>());
  return f;
}

inline Json heading_to_json(const Heading& h) { return Json{{"x", form_to_json(h.x)}, {"y", form_to_json(h.y)}}; }

inline Heading heading_from_json(const Json& j) {
  return Heading{form_from_json(j.at("x")), form_from_json(j.at("y"))};
}

inline double number(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) throw Error(std::string("missing numeric field '") + key + "'");
  const double v = j.at(key).get<double>();
  if (!std::isfinite(v)) throw Error(std::string("non-finite field '") + key + "'");
  return v;
}

inline bool consistent(const Heading& h, double radians) {
  return angular_gap(h.angle(), Angle(radians)) < 1e-9;
}

}  // namespace io_detail

inline Json to_json(const InstanceFile& inst) {
  Json pts = Json::array();
  for (const auto& p : inst.points) pts.push_back(Json{{"x", p.x}, {"y", p.y}});
  Json out{{"points", pts}};
  if (!inst.metadata.empty()) out["metadata"] = inst.metadata;
  return out;
}

inline InstanceFile instance_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("points") || !j.at("points").is_array()) throw Error("instance needs a points array");
  InstanceFile out;
  for (const auto& p : j.at("points")) out.points.push_back({io_detail::number(p, "x"), io_detail::number(p, "y")});
  if (j.contains("metadata")) out.metadata = j.at("metadata");
  std::vector<Point> sorted = out.points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw Error("instance has duplicate points");
  return out;
}

inline Json antenna_to_json(const Wedge& w) {
  Json out{{"x", w.apex.x},
           {"y", w.apex.y},
           {"orientation_radians", w.orientation().radians()},
           {"aperture_radians", w.aperture}};
  if (w.unbounded())
    out["range"] = "inf";
  else
    out["range"] = w.range;
  out["right_ray"] = io_detail::heading_to_json(w.right);
  out["left_ray"] = io_detail::heading_to_json(w.left);
  return out;
}

inline Wedge antenna_from_json(const Json& j) {
  using namespace io_detail;
  const Point apex{number(j, "x"), number(j, "y")};
  const double orientation = number(j, "orientation_radians");
  const double aperture = number(j, "aperture_radians");
  double range = 0.0;
  if (!j.contains("range")) throw Error("missing field 'range'");
  if (j.at("range").is_string()) {
    if (j.at("range").get<std::string>() != "inf") throw Error("range must be a number or \"inf\"");
    range = kUnbounded;
  } else {
    range = number(j, "range");
  }
  if (orientation < 0.0 || orientation >= kTwoPi) throw Error("orientation must lie in [0, 2pi)");
  Wedge w = Wedge::from_orientation(apex, Angle(orientation), aperture, range);
  if (j.contains("right_ray") && j.contains("left_ray")) {
    const Heading r = heading_from_json(j.at("right_ray"));
    const Heading l = heading_from_json(j.at("left_ray"));
    const double half = aperture / 2.0;
    if (!r.is_zero() && !l.is_zero() && consistent(r, orientation - half) && consistent(l, orientation + half)) {
      w.right = r;
      w.left = l;
    }
  }
  return w;
}

inline Json to_json(const ConfigFile& cfg) {
  Json out{{"mode", cfg.mode}};
  Json ants = Json::array();
  for (const auto& w : cfg.antennas) ants.push_back(antenna_to_json(w));
  out["antennas"] = ants;
  for (const auto& [k, v] : cfg.extras.items()) out[k] = v;
  return out;
}

inline ConfigFile config_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("antennas") || !j.at("antennas").is_array())
    throw Error("config needs an antennas array");
  ConfigFile out;
  if (j.contains("mode")) out.mode = j.at("mode").get<std::string>();
  for (const auto& a : j.at("antennas")) out.antennas.push_back(antenna_from_json(a));
  for (const auto& [k, v] : j.items())
    if (k != "mode" && k != "antennas") out.extras[k] = v;
  return out;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::ios_base::failure(path + ": " + e.what());
  }
}

/// "-" means stdout.
inline void write_text_file(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  out << text;
  if (!out) throw std::ios_base::failure("write failed: " + path);
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace sectorlink
