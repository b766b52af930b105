#pragma once

// Seeded instance generators. Every family re-checks its guarantee after
// generation and never emits coincident points.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sectorlink/random.hpp"
#include "sectorlink/replacement.hpp"
#include "sectorlink/scg.hpp"

namespace sectorlink {

enum class Family { kRandomSquare, kConnectedUdg, kSeparatedQuads, kStratifiedQuads, kClustered, kCollinear };

inline constexpr std::array<std::pair<Family, std::string_view>, 6> kFamilyNames{{
    {Family::kRandomSquare, "random-square"},
    {Family::kConnectedUdg, "connected-udg"},
    {Family::kSeparatedQuads, "separated-quads"},
    {Family::kStratifiedQuads, "stratified-quads"},
    {Family::kClustered, "clustered"},
    {Family::kCollinear, "collinear"},
}};

inline std::string_view family_name(Family f) {
  for (const auto& [k, v] : kFamilyNames)
    if (k == f) return v;
  return "unknown";
}

inline std::optional<Family> parse_family(std::string_view name) {
  for (const auto& [k, v] : kFamilyNames)
    if (v == name) return k;
  return std::nullopt;
}

struct GenParams {
  double side = 10.0;     // square side (random-square, clustered centres)
  double reach = 1.0;     // max step for connected-udg growth, in (0, 1]
  std::size_t window = 0; // connected-udg: attach only to the last `window` points (0 = any)
  double drift = 0.0;     // connected-udg: in [0, 1); growth angles narrow around one heading
  double gap = 1.0;       // separated-quads: empty strip width around x = 0
  double width = 10.0;    // separated-quads: extent of each half
  bool rotate = false;    // separated-quads: rotate the pair by a random angle
  int stratum = 1;        // stratified-quads: proof case 1 or 2
  int clusters = 4;       // clustered
  double spread = 1.0;    // clustered: radius around each centre
  std::uint64_t max_attempts = 100000;
};

struct GenSpec {
  Family family = Family::kRandomSquare;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  GenParams params;
};

namespace gen_detail {

class Collector {
 public:
  bool add(const Point& p) {
    if (!seen_.insert({p.x, p.y}).second) return false;
    points_.push_back(p);
    return true;
  }
  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] const std::vector<Point>& points() const { return points_; }
  std::vector<Point> take() { return std::move(points_); }

 private:
  std::set<std::pair<double, double>> seen_;
  std::vector<Point> points_;
};

inline void require(bool ok, const char* message) {
  if (!ok) throw Error(message);
}

inline std::vector<Point> random_square(const GenSpec& spec, SplitMix64& rng) {
  require(spec.params.side > 0.0, "side must be positive");
  Collector c;
  for (std::uint64_t t = 0; c.size() < spec.n; ++t) {
    require(t < spec.params.max_attempts + spec.n, "could not place distinct points");
    c.add({rng.uniform(0.0, spec.params.side), rng.uniform(0.0, spec.params.side)});
  }
  return c.take();
}

/// Each new point lands within `reach` of a uniformly chosen earlier point.
inline std::vector<Point> connected_udg(const GenSpec& spec, SplitMix64& rng) {
  const double reach = spec.params.reach;
  require(reach > 0.0 && reach <= 1.0, "reach must lie in (0, 1]");
  const double drift = spec.params.drift;
  require(drift >= 0.0 && drift < 1.0, "drift must lie in [0, 1)");
  const double heading = drift > 0.0 ? rng.uniform(0.0, kTwoPi) : 0.0;
  Collector c;
  c.add({0.0, 0.0});
  for (std::uint64_t t = 0; c.size() < spec.n; ++t) {
    require(t < spec.params.max_attempts + spec.n, "could not place distinct points");
    const std::size_t pool = spec.params.window ? std::min(spec.params.window, c.size()) : c.size();
    const Point& base = c.points()[c.size() - pool + rng.below(pool)];
    const double angle = drift > 0.0 ? heading + (1.0 - drift) * rng.uniform(-kPi, kPi) : rng.uniform(0.0, kTwoPi);
    const double radius = reach * std::sqrt(rng.uniform());
    const Point p{base.x + radius * std::cos(angle), base.y + radius * std::sin(angle)};
    if (compare_distance(base, p, 1.0) > 0) continue;
    c.add(p);
  }
  return c.take();
}

inline Point rotate(const Point& p, double angle) {
  const double cs = std::cos(angle), sn = std::sin(angle);
  return {cs * p.x - sn * p.y, sn * p.x + cs * p.y};
}

inline std::vector<Point> separated_quads(const GenSpec& spec, SplitMix64& rng) {
  const auto& prm = spec.params;
  require(prm.gap > 0.0 && prm.width > 0.0, "gap and width must be positive");
  for (std::uint64_t t = 0; t < prm.max_attempts; ++t) {
    Collector c;
    for (int side = 0; side < 2; ++side)
      while (c.size() < static_cast<std::size_t>(4 * (side + 1))) {
        const double off = prm.gap / 2.0 + rng.uniform() * prm.width;
        const double x = side == 0 ? -off : off;
        c.add({x, rng.uniform(-prm.width, prm.width)});
      }
    auto pts = c.take();
    if (prm.rotate) {
      const double angle = rng.uniform(0.0, kTwoPi);
      for (auto& p : pts) p = rotate(p, angle);
    }
    const std::span<const Point> all(pts);
    std::vector<Point> sorted(pts);
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
    if (!strictly_separable(all.subspan(0, 4), all.subspan(4, 4))) continue;
    if (convex_hull(all.subspan(0, 4)).size() < 2 || convex_hull(all.subspan(4, 4)).size() < 2) continue;
    return pts;
  }
  throw Error("could not generate a separated pair");
}

}  // namespace gen_detail

/// Proof case (1 or 2) of an 8-point pair over all separating lines.
inline int separated_proof_case(std::span<const Point> pts) {
  return separated_proof_case(pts.subspan(0, 4), pts.subspan(4, 4)).value;
}

inline std::vector<Point> generate(const GenSpec& spec) {
  using namespace gen_detail;
  SplitMix64 rng(spec.seed);
  switch (spec.family) {
    case Family::kRandomSquare: {
      require(spec.n >= 1, "n must be at least 1");
      return random_square(spec, rng);
    }
    case Family::kConnectedUdg: {
      require(spec.n >= 1, "n must be at least 1");
      auto pts = connected_udg(spec, rng);
      require(is_connected(build_udg(pts)), "generated unit disk graph is disconnected");
      return pts;
    }
    case Family::kSeparatedQuads: {
      require(spec.n == 8 || spec.n == 0, "separated-quads always has 8 points");
      return separated_quads(spec, rng);
    }
    case Family::kStratifiedQuads: {
      require(spec.n == 8 || spec.n == 0, "stratified-quads always has 8 points");
      require(spec.params.stratum == 1 || spec.params.stratum == 2, "stratum must be 1 or 2");
      for (std::uint64_t t = 0; t < spec.params.max_attempts; ++t) {
        auto pts = separated_quads(spec, rng);
        if (separated_proof_case(pts) == spec.params.stratum) return pts;
      }
      throw Error("stratum not reached within the attempt budget");
    }
    case Family::kClustered: {
      require(spec.n >= 1, "n must be at least 1");
      require(spec.params.clusters >= 1 && spec.params.spread > 0.0, "clusters and spread must be positive");
      std::vector<Point> centres;
      for (int k = 0; k < spec.params.clusters; ++k)
        centres.push_back({rng.uniform(0.0, spec.params.side), rng.uniform(0.0, spec.params.side)});
      Collector c;
      for (std::uint64_t t = 0; c.size() < spec.n; ++t) {
        require(t < spec.params.max_attempts + spec.n, "could not place distinct points");
        const Point& ctr = centres[rng.below(centres.size())];
        const double angle = rng.uniform(0.0, kTwoPi);
        const double radius = spec.params.spread * std::sqrt(rng.uniform());
        c.add({ctr.x + radius * std::cos(angle), ctr.y + radius * std::sin(angle)});
      }
      return c.take();
    }
    case Family::kCollinear: {
      require(spec.n >= 1, "n must be at least 1");
      // Dyadic base point, direction and parameters keep the points exactly
      // collinear: x = x0 + k dx with every product exact.
      auto dyadic = [&](double scale) { return std::ldexp(static_cast<double>(rng.below(1u << 10)), -10) * scale; };
      const Point base{dyadic(8.0), dyadic(8.0)};
      double dx = 0.0, dy = 0.0;
      while (dx == 0.0 && dy == 0.0) {
        dx = dyadic(2.0) - 1.0;
        dy = dyadic(2.0) - 1.0;
      }
      std::set<std::uint64_t> used;
      std::vector<Point> pts;
      while (pts.size() < spec.n) {
        const std::uint64_t k = rng.below(std::max<std::uint64_t>(4 * spec.n, 16));
        if (!used.insert(k).second) continue;
        const double t = static_cast<double>(k) / 4.0;
        pts.push_back({base.x + t * dx, base.y + t * dy});
      }
      for (std::size_t i = 2; i < pts.size(); ++i)
        require(orientation_sign(pts[0], pts[1], pts[i]) == 0, "collinear family lost exactness");
      return pts;
    }
  }
  throw Error("unknown family");
}

}  // namespace sectorlink
