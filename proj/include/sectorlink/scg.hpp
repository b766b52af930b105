#pragma once

// Symmetric communication graphs and the separated-quadruplet machinery.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sectorlink/coverage.hpp"
#include "sectorlink/geometry.hpp"
#include "sectorlink/graph.hpp"
#include "sectorlink/orientation4.hpp"
#include "sectorlink/random.hpp"

namespace sectorlink {

/// One transceiver: its location is the wedge apex.
using AntennaConfig = Wedge;

/// Edge (u, v) iff each antenna's sector contains the other's location.
/// Throws on coincident locations.
inline CommGraph build_scg(std::span<const AntennaConfig> configs) {
  std::vector<Point> pts;
  pts.reserve(configs.size());
  for (const auto& c : configs) pts.push_back(c.apex);
  {
    std::vector<Point> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error("duplicate antenna locations");
  }
  CommGraph g(pts);
  for (std::size_t u = 0; u < configs.size(); ++u) {
    for (std::size_t v = u + 1; v < configs.size(); ++v) {
      // Cheap rejection on the range before the exact tests.
      const double reach = std::min(configs[u].range, configs[v].range);
      if (!std::isinf(reach)) {
        const double d2 = squared_distance(pts[u], pts[v]);
        if (d2 > reach * reach * (1.0 + 1e-12) + 1e-300) continue;
      }
      if (wedge_contains(configs[u], pts[v]) && wedge_contains(configs[v], pts[u])) g.add_edge(u, v);
    }
  }
  return g;
}

/// Some a in A and b in B covering each other (exhaustive scan, first pair in
/// index order), or nullopt.
inline std::optional<std::pair<std::size_t, std::size_t>> find_mutual_cover_pair(std::span<const Wedge> a,
                                                                                 std::span<const Wedge> b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (wedge_contains(a[i], b[j].apex) && wedge_contains(b[j], a[i].apex)) return std::make_pair(i, j);
  return std::nullopt;
}

namespace scg_detail {

inline bool on_segment(const Point& p, const Point& a, const Point& b) {
  return orientation_sign(a, b, p) == 0 && dot_sign(a, b, p) >= 0 && dot_sign(b, a, p) >= 0;
}

inline bool segments_touch(const Point& a, const Point& b, const Point& c, const Point& d) {
  const int o1 = orientation_sign(a, b, c), o2 = orientation_sign(a, b, d);
  const int o3 = orientation_sign(c, d, a), o4 = orientation_sign(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  return on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d);
}

/// Point inside or on a convex hull given counterclockwise (possibly a
/// single point or a segment).
inline bool in_hull(const Point& p, const std::vector<Point>& hull) {
  if (hull.size() == 1) return p == hull[0];
  if (hull.size() == 2) return on_segment(p, hull[0], hull[1]);
  for (std::size_t i = 0; i < hull.size(); ++i)
    if (orientation_sign(hull[i], hull[(i + 1) % hull.size()], p) < 0) return false;
  return true;
}

}  // namespace scg_detail

/// True iff some line strictly separates the two point sets, i.e. their
/// convex hulls are disjoint. Decided with exact predicates.
inline bool strictly_separable(std::span<const Point> a, std::span<const Point> b) {
  using namespace scg_detail;
  const auto ha = convex_hull(a);
  const auto hb = convex_hull(b);
  for (const auto& p : ha)
    if (in_hull(p, hb)) return false;
  for (const auto& p : hb)
    if (in_hull(p, ha)) return false;
  auto edges = [](const std::vector<Point>& h) {
    std::vector<std::pair<Point, Point>> out;
    if (h.size() == 2) out.emplace_back(h[0], h[1]);
    if (h.size() >= 3)
      for (std::size_t i = 0; i < h.size(); ++i) out.emplace_back(h[i], h[(i + 1) % h.size()]);
    return out;
  };
  for (const auto& [p, q] : edges(ha))
    for (const auto& [r, s] : edges(hb))
      if (segments_touch(p, q, r, s)) return false;
  return true;
}

/// Closed half-plane to the left of the directed line through `origin`
/// along `direction`.
struct LeftHalfPlane {
  Point origin;
  Heading direction;
};

/// Whether the given wedges (unbounded) jointly cover a closed half-plane.
inline bool covers_half_plane(std::span<const Wedge> wedges, const LeftHalfPlane& h) {
  std::vector<Wedge> all(wedges.begin(), wedges.end());
  // The opposite closed half-plane as an extra wedge: the plane is covered
  // iff the wedges cover the open half-plane, hence (closedness) its closure.
  all.push_back(Wedge{h.origin, h.direction.reversed(), h.direction, kPi, kUnbounded});
  return plane_coverage_verify(all).covered;
}

/// Smallest number of the given wedges that together cover the half-plane
/// (0 if none of the subsets does).
inline std::size_t min_cover_count(std::span<const Wedge> wedges, const LeftHalfPlane& h) {
  const std::size_t n = wedges.size();
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::vector<Wedge> subset;
      for (std::size_t i = 0; i < n; ++i)
        if (pick[i]) subset.push_back(wedges[i]);
      if (covers_half_plane(subset, h)) return k;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return 0;
}

/// Proof-case classification of an oriented, separated pair of quadruplets.
struct SeparatedCase {
  std::size_t cover_a = 0;  // points of A needed to cover B's side
  std::size_t cover_b = 0;  // points of B needed to cover A's side
  [[nodiscard]] int proof_case() const { return (cover_a == 2 || cover_b == 2) ? 1 : 2; }
};

/// `line_origin`, `line_direction` describe a separating line with A on its
/// left and B on its right.
inline SeparatedCase classify_separated(std::span<const Wedge> a, std::span<const Wedge> b, const Point& line_origin,
                                        const Heading& line_direction) {
  const LeftHalfPlane b_side{line_origin, line_direction.reversed()};
  const LeftHalfPlane a_side{line_origin, line_direction};
  return {min_cover_count(a, b_side), min_cover_count(b, a_side)};
}

inline std::array<Wedge, 4> oriented_wedges(std::span<const Point> quad) {
  return orient_quadruplet(quad).wedges();
}

/// A directed line with the first set strictly on its left.
struct SeparatingLine {
  Point origin;
  Heading direction;
};

struct ProofCase {
  int value = 2;
  std::optional<SeparatingLine> line;  // a line realising case 1
  SeparatedCase counts;                 // cover counts for that line
};

/// Proof case of a strictly separated pair over all separating lines. Two
/// quarters cover a half-plane only as a couple whose boundary is parallel
/// to it, so case 1 holds iff for some couple of one set the other set lies
/// strictly beyond the first along the couple's normal. Each such line is
/// confirmed by an exact cover count.
inline ProofCase separated_proof_case(std::span<const Point> a, std::span<const Point> b) {
  const auto oa = orient_quadruplet(a);
  const auto ob = orient_quadruplet(b);
  const auto wa = oa.wedges();
  const auto wb = ob.wedges();
  auto try_side = [&](const OrientationAssignment& own, std::span<const Point> near,
                      std::span<const Point> far, bool own_is_a) -> std::optional<ProofCase> {
    for (const auto& c : couples(own)) {
      const Heading n = couple_half_plane(own.entries[c.first], own.entries[c.second]).normal;
      bool beyond = true;
      for (const auto& p : near)
        for (const auto& q : far) beyond = beyond && dot_sign(n, p, q) > 0;
      if (!beyond) continue;
      const Point* top = &near[0];
      const Point* bottom = &far[0];
      for (const auto& p : near)
        if (dot_sign(n, *top, p) > 0) top = &p;
      for (const auto& q : far)
        if (dot_sign(n, *bottom, q) < 0) bottom = &q;
      const Point mid{(top->x + bottom->x) / 2, (top->y + bottom->y) / 2};
      const Heading dir = own_is_a ? n.rotated90() : n.rotated_minus90();
      bool strict = true;
      for (const auto& p : a) strict = strict && cross_sign(dir, mid, p) > 0;
      for (const auto& q : b) strict = strict && cross_sign(dir, mid, q) < 0;
      if (!strict) continue;
      const auto counts = classify_separated(wa, wb, mid, dir);
      if ((own_is_a ? counts.cover_a : counts.cover_b) == 2) return ProofCase{1, SeparatingLine{mid, dir}, counts};
    }
    return std::nullopt;
  };
  if (auto r = try_side(oa, a, b, true)) return *r;
  if (auto r = try_side(ob, b, a, false)) return *r;
  return {};
}

struct QuadruplePair {
  std::array<Point, 4> a;
  std::array<Point, 4> b;
};

struct CounterexampleSearch {
  int lattice = 40;          // initial coordinates drawn from [0, lattice)^2
  int max_step = 3;          // lattice moves per coordinate in one step
  std::uint64_t steps = 3000;  // descent steps per trial
};

/// Number of (a, b) pairs covering each other, or nullopt if the pair is
/// invalid for the search (coincident points or strictly separable).
inline std::optional<int> mutual_cover_count(const QuadruplePair& pair) {
  std::array<Point, 8> all;
  std::copy(pair.a.begin(), pair.a.end(), all.begin());
  std::copy(pair.b.begin(), pair.b.end(), all.begin() + 4);
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end()) return std::nullopt;
  if (strictly_separable(pair.a, pair.b)) return std::nullopt;
  const auto wa = oriented_wedges(pair.a);
  const auto wb = oriented_wedges(pair.b);
  int count = 0;
  for (const auto& x : wa)
    for (const auto& y : wb)
      if (wedge_contains(x, y.apex) && wedge_contains(y, x.apex)) ++count;
  return count;
}

/// Randomized search for two quadruplets that no line separates and whose
/// independently oriented union has no A-B edge (unbounded range).
///
/// Each trial draws eight lattice points and then descends on the number of
/// mutually covering A-B pairs by moving one point at a time, accepting
/// non-worsening moves that keep the pair non-separable. Blind sampling
/// almost never hits such a configuration.
inline std::optional<QuadruplePair> search_nonseparated_counterexample(std::uint64_t trials, std::uint64_t seed,
                                                                        const CounterexampleSearch& opts = {}) {
  if (trials < 1) throw Error("trials must be at least 1");
  SplitMix64 rng(seed);
  const auto lattice = static_cast<std::uint64_t>(opts.lattice);
  const auto width = static_cast<std::uint64_t>(2 * opts.max_step + 1);
  for (std::uint64_t t = 0; t < trials; ++t) {
    QuadruplePair pair;
    for (auto& p : pair.a) p = {static_cast<double>(rng.below(lattice)), static_cast<double>(rng.below(lattice))};
    for (auto& p : pair.b) p = {static_cast<double>(rng.below(lattice)), static_cast<double>(rng.below(lattice))};
    std::optional<int> current = mutual_cover_count(pair);
    for (std::uint64_t s = 0; s < opts.steps; ++s) {
      if (current && *current == 0) return pair;
      QuadruplePair next = pair;
      const auto k = rng.below(8);
      Point& p = k < 4 ? next.a[k] : next.b[k - 4];
      p.x += static_cast<double>(static_cast<std::int64_t>(rng.below(width)) - opts.max_step);
      p.y += static_cast<double>(static_cast<std::int64_t>(rng.below(width)) - opts.max_step);
      const auto value = mutual_cover_count(next);
      if (value && (!current || *value <= *current)) {
        pair = next;
        current = value;
      }
    }
    if (current && *current == 0) return pair;
  }
  return std::nullopt;
}

}  // namespace sectorlink
