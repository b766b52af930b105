#pragma once

// Planar primitives: points, angles, exact headings and closed sectors.
//
// Sectors are CLOSED: the apex and both bounding rays belong to the covered
// region. Every construction in the library relies on this (a bounding ray
// is frequently made to pass exactly through a neighbouring point), so the
// containment test is exact rather than tolerance based.

#include <algorithm>
#include <cmath>
#include <compare>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sectorlink/exact.hpp"

namespace sectorlink {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kQuarterTurn = std::numbers::pi / 2.0;
inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
  // Lexicographic (x, y); used for every deterministic tie-break.
  friend auto operator<=>(const Point& a, const Point& b) {
    if (auto c = a.x <=> b.x; c != 0) return c;
    return a.y <=> b.y;
  }
};

inline double squared_distance(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double distance(const Point& a, const Point& b) { return std::sqrt(squared_distance(a, b)); }

/// Angle normalized to [0, 2pi).
class Angle {
 public:
  constexpr Angle() = default;
  explicit Angle(double radians) : radians_(normalize(radians)) {}

  [[nodiscard]] double radians() const { return radians_; }

  static double normalize(double r) {
    if (!std::isfinite(r)) throw Error("angle must be finite");
    double v = std::fmod(r, kTwoPi);
    if (v < 0.0) v += kTwoPi;
    if (v >= kTwoPi) v = 0.0;
    return v;
  }

  friend Angle operator+(Angle a, double d) { return Angle(a.radians_ + d); }
  friend Angle operator-(Angle a, double d) { return Angle(a.radians_ - d); }
  friend bool operator==(const Angle&, const Angle&) = default;

 private:
  double radians_ = 0.0;
};

/// Smallest absolute difference between two angles, in [0, pi].
inline double angular_gap(Angle a, Angle b) {
  double d = std::fabs(a.radians() - b.radians());
  return std::min(d, kTwoPi - d);
}

/// A direction vector whose components are exact sums of input coordinates.
struct Heading {
  exact::LinearForm x;
  exact::LinearForm y;

  static Heading between(const Point& from, const Point& to) {
    return {{to.x, -from.x}, {to.y, -from.y}};
  }
  static Heading of_angle(double radians) {
    return {{std::cos(radians)}, {std::sin(radians)}};
  }
  static Heading of_vector(double dx, double dy) { return {{dx}, {dy}}; }

  /// Counterclockwise quarter turn; exact.
  [[nodiscard]] Heading rotated90() const { return {y.negated(), x}; }
  [[nodiscard]] Heading rotated_minus90() const { return {y, x.negated()}; }
  [[nodiscard]] Heading reversed() const { return {x.negated(), y.negated()}; }
  /// Clockwise eighth turn scaled by sqrt(2); exact for two-term components.
  [[nodiscard]] Heading rotated_minus45_scaled() const { return {x + y, y - x}; }

  [[nodiscard]] double approx_x() const { return x.approx(); }
  [[nodiscard]] double approx_y() const { return y.approx(); }
  [[nodiscard]] Angle angle() const { return Angle(std::atan2(approx_y(), approx_x())); }

  [[nodiscard]] bool is_zero() const {
    exact::ProductSum sx, sy;
    for (double v : x.values()) sx.add(v);
    for (double v : y.values()) sy.add(v);
    return sx.sign() == 0 && sy.sign() == 0;
  }

  friend bool operator==(const Heading&, const Heading&) = default;
};

namespace detail {

inline exact::LinearForm offset_x(const Point& from, const Point& to) { return {to.x, -from.x}; }
inline exact::LinearForm offset_y(const Point& from, const Point& to) { return {to.y, -from.y}; }

}  // namespace detail

/// Sign of cross(h, q - apex); positive when q is counterclockwise of h.
inline int cross_sign(const Heading& h, const Point& apex, const Point& q) {
  exact::ProductSum ps;
  exact::add_product(ps, h.x, detail::offset_y(apex, q));
  exact::add_product(ps, h.y, detail::offset_x(apex, q), -1.0);
  return ps.sign();
}

/// Sign of dot(h, q - apex).
inline int dot_sign(const Heading& h, const Point& apex, const Point& q) {
  exact::ProductSum ps;
  exact::add_product(ps, h.x, detail::offset_x(apex, q));
  exact::add_product(ps, h.y, detail::offset_y(apex, q));
  return ps.sign();
}

/// Sign of cross(a, b) for two headings.
inline int cross_sign(const Heading& a, const Heading& b) {
  exact::ProductSum ps;
  exact::add_product(ps, a.x, b.y);
  exact::add_product(ps, a.y, b.x, -1.0);
  return ps.sign();
}

inline int dot_sign(const Heading& a, const Heading& b) {
  exact::ProductSum ps;
  exact::add_product(ps, a.x, b.x);
  exact::add_product(ps, a.y, b.y);
  return ps.sign();
}

/// Sign of the signed area of triangle abc: +1 counterclockwise, -1
/// clockwise, 0 collinear. Exact for all finite double inputs.
inline int orientation_sign(const Point& a, const Point& b, const Point& c) {
  return cross_sign(Heading::between(a, b), a, c);
}

/// Sign of (b - a) . (c - a).
inline int dot_sign(const Point& a, const Point& b, const Point& c) {
  return dot_sign(Heading::between(a, b), a, c);
}

/// Sign of |a - b|^2 - r^2, exact.
inline int compare_distance(const Point& a, const Point& b, double r) {
  exact::ProductSum ps;
  const auto dx = detail::offset_x(a, b);
  const auto dy = detail::offset_y(a, b);
  exact::add_product(ps, dx, dx);
  exact::add_product(ps, dy, dy);
  ps.add(-r, r);
  return ps.sign();
}

/// Sign of |a - b|^2 - |c - d|^2, exact.
inline int compare_lengths(const Point& a, const Point& b, const Point& c, const Point& d) {
  exact::ProductSum ps;
  const auto abx = detail::offset_x(a, b), aby = detail::offset_y(a, b);
  const auto cdx = detail::offset_x(c, d), cdy = detail::offset_y(c, d);
  exact::add_product(ps, abx, abx);
  exact::add_product(ps, aby, aby);
  exact::add_product(ps, cdx, cdx, -1.0);
  exact::add_product(ps, cdy, cdy, -1.0);
  return ps.sign();
}

/// Smallest double r (up to one ulp) with r^2 >= |a - b|^2 exactly, so a
/// sector of range r at a reaches b.
inline double covering_range(const Point& a, const Point& b) {
  double r = distance(a, b);
  while (compare_distance(a, b, r) > 0) r = std::nextafter(r, kUnbounded);
  while (r > 0 && compare_distance(a, b, std::nextafter(r, 0.0)) <= 0) r = std::nextafter(r, 0.0);
  return r;
}

/// Closed circular sector. The covered directions run counterclockwise from
/// `right` to `left`; `aperture` is the angle between them.
struct Wedge {
  Point apex;
  Heading right;
  Heading left;
  double aperture = kQuarterTurn;
  double range = kUnbounded;

  /// Quarter sector whose clockwise bounding ray points along `right_ray`.
  static Wedge quarter(const Point& apex, const Heading& right_ray, double range = kUnbounded) {
    return Wedge{apex, right_ray, right_ray.rotated90(), kQuarterTurn, range};
  }

  /// Quarter sector whose bisector points from `apex` toward `target`.
  static Wedge quarter_toward(const Point& apex, const Point& target, double range = kUnbounded) {
    return quarter(apex, Heading::between(apex, target).rotated_minus45_scaled(), range);
  }

  /// Sector from its bisector angle. Quarter apertures keep the exact
  /// perpendicular relation between the two bounding rays.
  static Wedge from_orientation(const Point& apex, Angle orientation, double aperture = kQuarterTurn,
                                double range = kUnbounded) {
    if (!(aperture > 0.0) || aperture > kTwoPi) throw Error("aperture must lie in (0, 2pi]");
    if (!(range > 0.0)) throw Error("range must be positive");
    const double half = aperture / 2.0;
    Heading r = Heading::of_angle(orientation.radians() - half);
    Heading l = aperture == kQuarterTurn ? r.rotated90() : Heading::of_angle(orientation.radians() + half);
    if (aperture == kPi) l = r.reversed();
    return Wedge{apex, r, l, aperture, range};
  }

  [[nodiscard]] bool unbounded() const { return std::isinf(range); }

  /// Direction of the bisector.
  [[nodiscard]] Angle orientation() const {
    if (aperture == kQuarterTurn) {
      const double rx = right.approx_x(), ry = right.approx_y();
      return Angle(std::atan2(ry + rx, rx - ry));
    }
    return Angle(right.angle().radians() + aperture / 2.0);
  }

  [[nodiscard]] Wedge with_range(double r) const {
    Wedge w = *this;
    w.range = r;
    return w;
  }
};

/// Angular part of the containment test (range ignored).
inline bool direction_in_wedge(const Wedge& w, const Point& p) {
  if (p == w.apex || w.aperture >= kTwoPi) return true;
  const int right_side = cross_sign(w.right, w.apex, p);  // >= 0: ccw of right ray
  if (w.aperture == kQuarterTurn) return right_side >= 0 && dot_sign(w.right, w.apex, p) >= 0;
  const int left_side = -cross_sign(w.left, w.apex, p);  // >= 0: cw of left ray
  if (w.aperture == kPi) return right_side >= 0;
  if (w.aperture < kPi) return right_side >= 0 && left_side >= 0;
  return right_side >= 0 || left_side >= 0;
}

/// True iff p lies in the closed sector of w.
inline bool wedge_contains(const Wedge& w, const Point& p) {
  if (p == w.apex) return true;
  if (!w.unbounded() && compare_distance(w.apex, p, w.range) > 0) return false;
  return direction_in_wedge(w, p);
}

/// Counterclockwise hull vertices starting from the lexicographically
/// smallest point. Duplicates and collinear boundary points are dropped; a
/// collinear input yields its two extreme points.
inline std::vector<Point> convex_hull(std::span<const Point> input) {
  if (input.empty()) throw Error("convex hull of an empty point set");
  std::vector<Point> pts(input.begin(), input.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;

  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && orientation_sign(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const auto& p = pts[i];
    while (k >= lower && orientation_sign(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace sectorlink
