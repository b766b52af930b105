#pragma once

// Exact decision of "the union of these unbounded wedges is the whole plane".
//
// Step one looks at directions only: if the closed direction arcs of the
// wedges leave a gap, points far away inside the gap are uncovered.
//
// Step two works on the arrangement of the 2k bounding lines. The
// uncovered region U is open (the union of closed wedges is closed) and
// constant on the cells of the arrangement. If U is neither empty nor the
// whole plane, some arrangement edge separates an uncovered face from a
// covered one, and that edge lies on a bounding ray of a wedge that covers
// the far side. So it suffices to walk every bounding ray, split it at its
// crossings with all bounding lines, and ask for each open piece whether the
// face on the outer side of the ray is covered by another wedge. All of this
// runs in exact rational arithmetic (GMP).

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "sectorlink/geometry.hpp"

namespace sectorlink {

struct CoverageReport {
  bool covered = false;
  /// For a non-covered result: a point outside every wedge, or a direction
  /// along which all sufficiently distant points are outside every wedge.
  std::optional<std::variant<Point, Angle>> witness;
};

namespace coverage_detail {

struct QVec {
  mpq_class x, y;
};

inline mpq_class to_q(const exact::LinearForm& f) {
  mpq_class s = 0;
  for (double v : f.values()) s += mpq_class(v);
  return s;
}

inline QVec to_q(const Heading& h) { return {to_q(h.x), to_q(h.y)}; }
inline QVec to_q(const Point& p) { return {mpq_class(p.x), mpq_class(p.y)}; }

inline mpq_class cross(const QVec& a, const QVec& b) { return a.x * b.y - a.y * b.x; }
inline mpq_class dot(const QVec& a, const QVec& b) { return a.x * b.x + a.y * b.y; }
inline QVec sub(const QVec& a, const QVec& b) { return {a.x - b.x, a.y - b.y}; }
inline QVec along(const QVec& p, const QVec& d, const mpq_class& t) { return {p.x + t * d.x, p.y + t * d.y}; }

struct QWedge {
  QVec apex, right, left;
  double aperture;
};

struct Ray {
  std::size_t wedge;
  QVec origin, dir;
  QVec outward;  // points to the side of the ray away from its wedge
};

inline int sgn(const mpq_class& v) { return ::sgn(v); }

/// Classification of q against a closed wedge: +1 interior, 0 boundary, -1 outside.
inline int classify(const QWedge& w, const QVec& q) {
  if (w.aperture >= kTwoPi) return 1;
  const QVec v = sub(q, w.apex);
  if (sgn(v.x) == 0 && sgn(v.y) == 0) return 0;
  const int r = sgn(cross(w.right, v));
  const int l = -sgn(cross(w.left, v));
  if (w.aperture == kPi) {
    return r;
  }
  if (w.aperture < kPi) {
    if (r < 0 || l < 0) return -1;
    if (r > 0 && l > 0) return 1;
    // On the line of a bounding ray: on the ray itself iff facing the same way.
    if (r == 0 && sgn(dot(w.right, v)) < 0) return -1;
    if (l == 0 && sgn(dot(w.left, v)) < 0) return -1;
    return 0;
  }
  if (r > 0 || l > 0) return 1;
  if (r < 0 && l < 0) return -1;
  if (r == 0 && sgn(dot(w.right, v)) > 0) return 0;
  if (l == 0 && sgn(dot(w.left, v)) > 0) return 0;
  return -1;
}

/// Does wedge w cover the half-neighbourhood on side `outward` of a point q
/// lying in the relative interior of an edge of the arrangement?
inline bool covers_side(const QWedge& w, const QVec& q, const QVec& outward) {
  const int c = classify(w, q);
  if (c != 0) return c > 0;
  // q lies on a bounding ray of w away from the apex: w is locally a half-disk.
  const QVec v = sub(q, w.apex);
  if (w.aperture >= kTwoPi) return true;
  if (sgn(cross(w.right, v)) == 0 && sgn(dot(w.right, v)) > 0) {
    if (sgn(cross(w.right, outward)) > 0) return true;
  }
  if (sgn(cross(w.left, v)) == 0 && sgn(dot(w.left, v)) > 0) {
    if (sgn(cross(w.left, outward)) < 0) return true;
  }
  return false;
}

/// Parameter t where line (p + t d) meets line (q + s e); nullopt if parallel.
inline std::optional<mpq_class> meet(const QVec& p, const QVec& d, const QVec& q, const QVec& e) {
  const mpq_class den = cross(d, e);
  if (sgn(den) == 0) return std::nullopt;
  return mpq_class(cross(sub(q, p), e) / den);
}

inline double to_double(const mpq_class& v) { return v.get_d(); }

/// Counterclockwise angle comparison helpers for step one.
inline int half_of(const Heading& base, const Heading& h) {
  const int c = cross_sign(base, h);
  if (c > 0 || (c == 0 && dot_sign(base, h) > 0)) return 0;
  return 1;
}

/// Is direction d in the half-open counterclockwise arc [from, to)? Arcs of
/// length 2pi are handled by the caller.
inline bool in_arc(const Heading& from, const Heading& to, double aperture, const Heading& d) {
  if (aperture >= kTwoPi) return true;
  // Rotate so that `from` is angle 0 and compare pseudo-angles.
  const int hd = half_of(from, d);
  const int ht = half_of(from, to);
  if (cross_sign(from, d) == 0 && dot_sign(from, d) > 0) return true;  // d == from
  if (hd != ht) return hd < ht;
  // Same half: d strictly before `to`.
  return cross_sign(d, to) > 0;
}

}  // namespace coverage_detail

/// Exact plane-coverage decision for wedges of unbounded range.
inline CoverageReport plane_coverage_verify(std::span<const Wedge> wedges) {
  using namespace coverage_detail;
  for (const auto& w : wedges)
    if (!w.unbounded()) throw Error("plane coverage requires unbounded wedges");

  CoverageReport report;
  if (wedges.empty()) {
    report.witness = Angle(0.0);
    return report;
  }
  for (const auto& w : wedges)
    if (w.aperture >= kTwoPi) {
      report.covered = true;
      return report;
    }

  // Step one: every direction just past a left ray must be inside some arc.
  for (std::size_t i = 0; i < wedges.size(); ++i) {
    const Heading& end = wedges[i].left;
    bool continued = false;
    for (std::size_t j = 0; j < wedges.size() && !continued; ++j) {
      if (j == i) continue;
      continued = in_arc(wedges[j].right, wedges[j].left, wedges[j].aperture, end);
    }
    if (continued) continue;
    // Gap starts at `end`; it closes at the first right ray counterclockwise.
    double gap_end = kTwoPi;
    const double start = end.angle().radians();
    for (const auto& w : wedges) {
      double a = w.right.angle().radians() - start;
      if (a <= 0.0) a += kTwoPi;
      gap_end = std::min(gap_end, a);
    }
    report.witness = Angle(start + gap_end / 2.0);
    return report;
  }

  // Step two: edge walk over the arrangement.
  std::vector<QWedge> qw;
  qw.reserve(wedges.size());
  for (const auto& w : wedges) qw.push_back({to_q(w.apex), to_q(w.right), to_q(w.left), w.aperture});

  std::vector<Ray> rays;
  for (std::size_t i = 0; i < qw.size(); ++i) {
    const auto& w = qw[i];
    rays.push_back({i, w.apex, w.right, QVec{w.right.y, -w.right.x}});
    rays.push_back({i, w.apex, w.left, QVec{-w.left.y, w.left.x}});
  }

  std::vector<Point> candidates;
  for (const auto& ray : rays) {
    std::vector<mpq_class> cuts{mpq_class(0)};
    for (const auto& other : rays) {
      if (auto t = meet(ray.origin, ray.dir, other.origin, other.dir)) {
        if (sgn(*t) > 0) cuts.push_back(*t);
      } else if (sgn(cross(sub(other.origin, ray.origin), ray.dir)) == 0) {
        // Collinear: the other ray's apex splits this ray.
        mpq_class t = dot(sub(other.origin, ray.origin), ray.dir) / dot(ray.dir, ray.dir);
        if (sgn(t) > 0) cuts.push_back(t);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    for (std::size_t k = 0; k < cuts.size(); ++k) {
      const mpq_class t = k + 1 < cuts.size() ? mpq_class((cuts[k] + cuts[k + 1]) / 2) : mpq_class(cuts[k] + 1);
      const QVec m = along(ray.origin, ray.dir, t);
      bool side_covered = false;
      for (std::size_t j = 0; j < qw.size() && !side_covered; ++j) {
        if (j == ray.wedge) continue;
        side_covered = covers_side(qw[j], m, ray.outward);
      }
      if (side_covered) continue;

      // Step off the ray into the uncovered face, stopping halfway to the
      // nearest bounding line in that direction.
      std::optional<mpq_class> nearest;
      for (const auto& other : rays) {
        if (auto s = meet(m, ray.outward, other.origin, other.dir); s && sgn(*s) > 0)
          if (!nearest || *s < *nearest) nearest = *s;
      }
      const mpq_class step = nearest ? mpq_class(*nearest / 2) : mpq_class(1);
      const QVec wq = along(m, ray.outward, step);
      candidates.push_back({to_double(wq.x), to_double(wq.y)});
      if (candidates.size() >= 8) break;
    }
    if (candidates.size() >= 8) break;
  }

  if (candidates.empty()) {
    report.covered = true;
    return report;
  }
  // Prefer a witness whose rounding to double is still uncovered.
  for (const auto& c : candidates) {
    bool inside = false;
    for (const auto& w : wedges) inside = inside || wedge_contains(w, c);
    if (!inside) {
      report.witness = c;
      return report;
    }
  }
  report.witness = candidates.front();
  return report;
}

}  // namespace sectorlink
