#pragma once

// Orienting four quarter antennas so that their symmetric communication graph
// is connected and their unbounded wedges cover the plane.
//
// Construction: pick two points a, b adjacent on the convex hull such that
// the hull lies within a quarter turn of segment ab at both ends. Let u be
// the direction a -> b and n its left normal (toward the hull). Then
//
//   W_a spans {u, n}    W_b spans {n, -u}     (together: the half-plane n >= 0)
//   W_c spans {-u, -n}  W_d spans {-n, u}     (together: the half-plane n <= 0)
//
// where c is the remaining point with the larger u-coordinate. Every heading
// is a quarter-turn rotation of b - a, so all bounding rays are exact and the
// edges a-b, a-c and b-d hold under the closed-sector convention.

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "sectorlink/geometry.hpp"

namespace sectorlink {

enum class QuadrupletShape { kConvex, kTriangle, kCollinear };

struct OrientedPoint {
  Point location;
  Heading right;  // clockwise bounding ray of the quarter sector

  [[nodiscard]] Wedge wedge(double range = kUnbounded) const { return Wedge::quarter(location, right, range); }
  [[nodiscard]] Angle orientation() const { return wedge().orientation(); }
};

struct OrientationAssignment {
  std::array<OrientedPoint, 4> entries;
  QuadrupletShape shape = QuadrupletShape::kConvex;
  /// Indices into `entries` of the base pair (a, b) and of the points set
  /// opposite to a and to b respectively.
  std::size_t a = 0, b = 1, opposite_a = 2, opposite_b = 3;

  [[nodiscard]] std::array<Wedge, 4> wedges(double range = kUnbounded) const {
    return {entries[0].wedge(range), entries[1].wedge(range), entries[2].wedge(range), entries[3].wedge(range)};
  }
  [[nodiscard]] std::optional<std::size_t> find(const Point& p) const {
    for (std::size_t i = 0; i < 4; ++i)
      if (entries[i].location == p) return i;
    return std::nullopt;
  }
};

namespace orientation_detail {

inline bool lex_pair_less(const Point& a1, const Point& b1, const Point& a2, const Point& b2) {
  auto lo1 = std::min(a1, b1), hi1 = std::max(a1, b1);
  auto lo2 = std::min(a2, b2), hi2 = std::max(a2, b2);
  if (lo1 != lo2) return lo1 < lo2;
  return hi1 < hi2;
}

inline OrientationAssignment assemble(const Point& a, const Point& b, const Point& p, const Point& q,
                                      QuadrupletShape shape) {
  const Heading u = Heading::between(a, b);
  // The remaining point further along u is set opposite W_a.
  const int cmp = dot_sign(u, q, p);  // sign of (p - q) . u
  const Point& c = cmp >= 0 ? p : q;
  const Point& d = cmp >= 0 ? q : p;
  OrientationAssignment out;
  out.entries = {OrientedPoint{a, u}, OrientedPoint{b, u.rotated90()}, OrientedPoint{c, u.reversed()},
                 OrientedPoint{d, u.rotated_minus90()}};
  out.shape = shape;
  return out;
}

}  // namespace orientation_detail

/// Orients four distinct points. Throws Error("degenerate quadruplet") when
/// fewer than four distinct points are given.
inline OrientationAssignment orient_quadruplet(std::span<const Point> points) {
  using orientation_detail::assemble;
  using orientation_detail::lex_pair_less;
  if (points.size() != 4) throw Error("degenerate quadruplet");
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (points[i] == points[j]) throw Error("degenerate quadruplet");

  const std::vector<Point> hull = convex_hull(points);
  auto others = [&](const Point& a, const Point& b) {
    std::vector<Point> rest;
    for (const auto& p : points)
      if (p != a && p != b) rest.push_back(p);
    return rest;
  };

  if (hull.size() == 2) {
    const auto rest = others(hull[0], hull[1]);
    return assemble(hull[0], hull[1], rest[0], rest[1], QuadrupletShape::kCollinear);
  }

  const std::size_t h = hull.size();
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < h; ++i) {
    const Point& a = hull[i];
    const Point& b = hull[(i + 1) % h];
    // In a quadrilateral the diagonal from a ends at the vertex after b and
    // the diagonal from b at the vertex before a; in a triangle both end at
    // the third vertex.
    const Point& from_a = hull[(i + 2) % h];
    const Point& from_b = hull[(i + h - 1) % h];
    if (dot_sign(a, b, from_a) < 0 || dot_sign(b, a, from_b) < 0) continue;
    if (!best || lex_pair_less(a, b, hull[*best], hull[(*best + 1) % h])) best = i;
  }
  if (!best) throw Error("no admissible hull edge (numerical failure)");

  const Point& a = hull[*best];
  const Point& b = hull[(*best + 1) % h];
  const auto rest = others(a, b);
  auto out = assemble(a, b, rest[0], rest[1], h == 4 ? QuadrupletShape::kConvex : QuadrupletShape::kTriangle);
  return out;
}

/// Two antennas whose orientations differ by a quarter turn, `second`
/// counterclockwise of `first`.
struct CouplePair {
  std::size_t first = 0;
  std::size_t second = 0;
};

/// The four couples of a quadruplet assignment. Pairing is derived from the
/// orientation angles alone, so it is invariant under a common rotation.
/// Throws if the orientations do not form {t, t + pi/2, t + pi, t + 3pi/2}.
inline std::array<CouplePair, 4> couples(std::span<const Angle, 4> orientations) {
  constexpr double kTol = 1e-9;
  std::array<CouplePair, 4> out{};
  std::array<int, 4> used_as_second{};
  for (std::size_t i = 0; i < 4; ++i) {
    std::optional<std::size_t> partner;
    for (std::size_t j = 0; j < 4; ++j) {
      if (j == i) continue;
      if (angular_gap(orientations[i] + kQuarterTurn, orientations[j]) < kTol) {
        if (partner) throw Error("malformed quadruplet assignment");
        partner = j;
      }
    }
    if (!partner) throw Error("malformed quadruplet assignment");
    out[i] = {i, *partner};
    ++used_as_second[*partner];
  }
  for (int c : used_as_second)
    if (c != 1) throw Error("malformed quadruplet assignment");
  return out;
}

inline std::array<CouplePair, 4> couples(const OrientationAssignment& assignment) {
  std::array<Angle, 4> angles;
  for (std::size_t i = 0; i < 4; ++i) angles[i] = assignment.entries[i].orientation();
  return couples(std::span<const Angle, 4>(angles));
}

/// Closed half-plane {x : (x - anchor) . normal >= 0} covered by a couple.
struct HalfPlane {
  Point anchor;
  Heading normal;

  [[nodiscard]] bool contains(const Point& p) const { return dot_sign(normal, anchor, p) >= 0; }
};

/// The half-plane jointly covered by a couple. Its boundary is parallel to
/// the clockwise ray of `first` and passes through whichever apex lies
/// further along the shared ray, so the two quarters abut along it.
inline HalfPlane couple_half_plane(const OrientedPoint& first, const OrientedPoint& second) {
  const Heading shared = first.right.rotated90();
  const int s = dot_sign(shared, first.location, second.location);
  return HalfPlane{s >= 0 ? second.location : first.location, shared};
}

/// Bisector-aimed quarter sector for a point that must reach one of `hubs`.
struct AimedWedge {
  Wedge wedge;
  std::size_t hub = 0;  // index into the hub list
};

/// Aims p at the first hub (in input order) whose wedge contains p. Hubs
/// located at p itself are skipped. Throws Error("uncovered point").
inline AimedWedge orient_toward(const Point& p, std::span<const Wedge> hubs, double range = kUnbounded) {
  for (std::size_t i = 0; i < hubs.size(); ++i) {
    if (hubs[i].apex == p) continue;
    if (wedge_contains(hubs[i], p)) return {Wedge::quarter_toward(p, hubs[i].apex, range), i};
  }
  throw Error("uncovered point");
}

}  // namespace sectorlink
