#pragma once

// Orientation plus per-antenna range assignment for quarter sectors with a
// connected symmetric communication graph and total power sum r(p)^beta
// within a constant factor of optimal.
//
// A tour through the points (MST preorder) is cut into sections of eight
// consecutive points. Each section is split by x into a left and a right
// quadruplet, oriented independently; a point's range is its farthest
// distance to the previous, own or next section.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "sectorlink/graph.hpp"
#include "sectorlink/orientation4.hpp"
#include "sectorlink/replacement.hpp"
#include "sectorlink/scg.hpp"

namespace sectorlink {

inline constexpr std::size_t kSectionSize = 8;

inline void require_beta(double beta) {
  if (!(beta >= 1.0) || !std::isfinite(beta)) throw Error("beta must be a finite real >= 1");
}

inline double beta_edge_weight(const Point& p, const Point& q, double beta) {
  require_beta(beta);
  return std::pow(distance(p, q), beta);
}

/// Euclidean minimum spanning tree (Prim, O(n^2)). Since |e|^beta is
/// monotone in |e| the same tree is minimal for every beta. Ties in length
/// go to the smaller vertex index. Edges are (parent, child) in insertion order.
inline std::vector<std::pair<std::size_t, std::size_t>> minimum_spanning_tree(std::span<const Point> points) {
  const std::size_t n = points.size();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  if (n < 2) return edges;
  std::vector<bool> in_tree(n, false);
  std::vector<double> best(n, kUnbounded);
  std::vector<std::size_t> parent(n, 0);
  in_tree[0] = true;
  for (std::size_t v = 1; v < n; ++v) best[v] = squared_distance(points[0], points[v]);
  for (std::size_t round = 1; round < n; ++round) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v)
      if (!in_tree[v] && (pick == n || best[v] < best[pick])) pick = v;
    in_tree[pick] = true;
    edges.emplace_back(parent[pick], pick);
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v]) continue;
      const double d = squared_distance(points[pick], points[v]);
      if (d < best[v]) {
        best[v] = d;
        parent[v] = pick;
      }
    }
  }
  return edges;
}

inline double mst_cost(std::span<const Point> points, double beta) {
  require_beta(beta);
  if (points.size() < 2) throw Error("mst_cost needs at least two points");
  double total = 0.0;
  for (const auto& [u, v] : minimum_spanning_tree(points)) total += beta_edge_weight(points[u], points[v], beta);
  return total;
}

/// Cyclic visiting order (indices into the point list).
struct Tour {
  std::vector<std::size_t> order;

  [[nodiscard]] std::size_t size() const { return order.size(); }
  [[nodiscard]] std::size_t next(std::size_t pos) const { return order[(pos + 1) % order.size()]; }
};

inline double tour_cost(std::span<const Point> points, const Tour& tour, double beta) {
  require_beta(beta);
  double total = 0.0;
  for (std::size_t k = 0; k < tour.size(); ++k)
    total += beta_edge_weight(points[tour.order[k]], points[tour.next(k)], beta);
  return total;
}

/// MST preorder shortcut tour. Starts at the lexicographically smallest
/// point; the direction puts the lexicographically smaller neighbour second.
inline Tour tsp_tour_approx(std::span<const Point> points, double beta) {
  require_beta(beta);
  const std::size_t n = points.size();
  if (n < 3) throw Error("tour needs at least three points");
  std::vector<std::vector<std::size_t>> children(n);
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [u, v] : minimum_spanning_tree(points)) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::size_t root = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (points[i] < points[root]) root = i;

  Tour tour;
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{root};
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    if (seen[u]) continue;
    seen[u] = true;
    tour.order.push_back(u);
    auto next = adj[u];
    std::sort(next.rbegin(), next.rend());  // smallest index visited first
    for (std::size_t v : next)
      if (!seen[v]) stack.push_back(v);
  }
  if (!(points[tour.order[1]] < points[tour.order.back()])) std::reverse(tour.order.begin() + 1, tour.order.end());
  return tour;
}

/// Consecutive tour points split into a left and a right part by x.
struct Section {
  std::vector<std::size_t> members;  // tour order
  std::size_t first_position = 0;    // tour position of members.front()
  std::vector<std::size_t> left;     // sorted by (x, y, tour position)
  std::vector<std::size_t> right;
  double separator_x = 0.0;
};

/// Left gets ceil(size/2) points ordered by (x, y, tour position); the
/// separator is the midpoint between the two parts.
inline void split_section(std::span<const Point> points, Section& s) {
  if (s.members.size() < kSectionSize) throw Error("section smaller than eight points");
  std::vector<std::size_t> pos(s.members.size());
  std::iota(pos.begin(), pos.end(), 0);
  std::sort(pos.begin(), pos.end(), [&](std::size_t a, std::size_t b) {
    const Point& p = points[s.members[a]];
    const Point& q = points[s.members[b]];
    if (p.x != q.x) return p.x < q.x;
    if (p.y != q.y) return p.y < q.y;
    return a < b;
  });
  const std::size_t half = (s.members.size() + 1) / 2;
  s.left.clear();
  s.right.clear();
  for (std::size_t k = 0; k < pos.size(); ++k) (k < half ? s.left : s.right).push_back(s.members[pos[k]]);
  const double lo = points[s.left.back()].x, hi = points[s.right.front()].x;
  s.separator_x = lo + (hi - lo) / 2.0;
}

/// Sections of eight consecutive tour points starting at the tour start;
/// the last section absorbs n mod 8 extra points.
inline std::vector<Section> make_sections(std::span<const Point> points, const Tour& tour) {
  const std::size_t n = tour.size();
  if (n < kSectionSize) throw Error("instance too small");
  const std::size_t m = n / kSectionSize;
  std::vector<Section> out(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t begin = i * kSectionSize;
    const std::size_t end = i + 1 == m ? n : begin + kSectionSize;
    out[i].first_position = begin;
    out[i].members.assign(tour.order.begin() + static_cast<std::ptrdiff_t>(begin),
                          tour.order.begin() + static_cast<std::ptrdiff_t>(end));
    split_section(points, out[i]);
  }
  return out;
}

/// Per-point configurations; the cost is always recomputed from them.
struct PowerAssignment {
  std::vector<AntennaConfig> configs;
  double beta = 2.0;

  [[nodiscard]] double cost() const {
    double total = 0.0;
    for (const auto& c : configs) total += std::pow(c.range, beta);
    return total;
  }
};

struct PowerResult {
  PowerAssignment assignment;
  std::optional<Tour> tour;        // absent for fewer than eight points
  std::vector<Section> sections;
  bool small_instance = false;
};

namespace power_detail {

/// Quadruplet of the four extreme points of one side; the remaining points
/// of that side aim at a covering quadruplet member.
inline void orient_side(std::span<const Point> points, const std::vector<std::size_t>& side, bool leftmost,
                        std::vector<AntennaConfig>& configs) {
  std::vector<std::size_t> quad_idx(side.begin(), side.end());
  if (!leftmost) std::reverse(quad_idx.begin(), quad_idx.end());
  const std::vector<std::size_t> extra(quad_idx.begin() + 4, quad_idx.end());
  quad_idx.resize(4);
  const std::array<Point, 4> quad{points[quad_idx[0]], points[quad_idx[1]], points[quad_idx[2]],
                                  points[quad_idx[3]]};
  const auto assignment = orient_quadruplet(quad);
  const auto wedges = assignment.wedges();
  for (std::size_t k = 0; k < 4; ++k) {
    const auto slot = std::find(quad.begin(), quad.end(), assignment.entries[k].location) - quad.begin();
    configs[quad_idx[static_cast<std::size_t>(slot)]] = wedges[k];
  }
  for (std::size_t p : extra) configs[p] = orient_toward(points[p], wedges).wedge;
}

/// Tour positions of section i's window S_{i-1} u S_i u S_{i+1}, in window
/// order; when the window wraps onto itself it is the whole tour.
inline std::vector<std::size_t> window_positions(const std::vector<Section>& sections, std::size_t i, std::size_t n) {
  const std::size_t m = sections.size();
  std::vector<std::size_t> out;
  if (m == 1) {
    for (std::size_t k = 0; k < n; ++k) out.push_back(k);
    return out;
  }
  if (m == 2) {
    for (std::size_t k = 0; k < n; ++k) out.push_back((sections[i].first_position + k) % n);
    return out;
  }
  for (std::size_t s : {(i + m - 1) % m, i, (i + 1) % m})
    for (std::size_t k = 0; k < sections[s].members.size(); ++k) out.push_back(sections[s].first_position + k);
  return out;
}

}  // namespace power_detail

/// Points fewer than eight: small-instance orientation with every range set
/// to the largest pairwise distance.
inline PowerResult orient_and_assign(std::span<const Point> points, double beta) {
  using namespace power_detail;
  require_beta(beta);
  const std::size_t n = points.size();
  if (n < 2) throw Error("power assignment needs at least two points");
  PowerResult out;
  out.assignment.beta = beta;
  if (n < kSectionSize) {
    out.small_instance = true;
    double reach = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) reach = std::max(reach, covering_range(points[i], points[j]));
    out.assignment.configs = orient_small_instance(points).configs;
    for (auto& c : out.assignment.configs) c.range = reach;
    return out;
  }
  {
    std::vector<Point> sorted(points.begin(), points.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw Error("duplicate points");
  }
  out.tour = tsp_tour_approx(points, beta);
  out.sections = make_sections(points, *out.tour);
  auto& configs = out.assignment.configs;
  configs.resize(n);
  for (const auto& s : out.sections) {
    orient_side(points, s.left, true, configs);
    orient_side(points, s.right, false, configs);
  }
  for (std::size_t i = 0; i < out.sections.size(); ++i) {
    const auto window = window_positions(out.sections, i, n);
    for (std::size_t p : out.sections[i].members) {
      double r = 0.0;
      for (std::size_t pos : window) {
        const std::size_t q = out.tour->order[pos];
        if (q != p) r = std::max(r, covering_range(points[p], points[q]));
      }
      configs[p].range = r;
    }
  }
  return out;
}

/// Per-instance check of the cost chain. With every section of exactly 8
/// points a middle-section point is at most 15 tour edges from any window
/// point, so r(p) <= 15 * (longest window tour edge) and the total is at
/// most 8 * 15^beta * 3 * Cost(tour). Larger final sections generalize the
/// section size and the edge gap; both are reported.
struct CostChainReport {
  bool range_chain_ok = true;
  bool cost_chain_ok = true;
  std::size_t edge_gap = 0;       // largest tour-edge count used in the range chain
  std::size_t section_size = 0;   // largest section
  double cost = 0.0;
  double mst = 0.0;
  double tour = 0.0;
  double cost_bound = 0.0;
  double worst_range_ratio = 0.0;  // max r(p) / (edge_gap_i * longest window edge)
  [[nodiscard]] double ratio_to_mst() const { return cost / mst; }
  [[nodiscard]] double ratio_to_tour() const { return cost / tour; }
  [[nodiscard]] bool ok() const { return range_chain_ok && cost_chain_ok; }
};

inline CostChainReport cost_chain_check(std::span<const Point> points, const PowerResult& result) {
  using namespace power_detail;
  if (!result.tour || result.small_instance) throw Error("cost chain needs a sectioned assignment");
  const Tour& tour = *result.tour;
  const auto& configs = result.assignment.configs;
  const double beta = result.assignment.beta;
  const std::size_t n = points.size();
  if (configs.size() != n || tour.size() != n) throw Error("assignment does not match the instance");
  constexpr double kSlack = 1e-9;

  CostChainReport report;
  report.cost = result.assignment.cost();
  report.mst = mst_cost(points, beta);
  report.tour = tour_cost(points, tour, beta);
  const std::size_t m = result.sections.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Section& s = result.sections[i];
    report.section_size = std::max(report.section_size, s.members.size());
    const auto window = window_positions(result.sections, i, n);
    const bool cyclic = window.size() == n && m == 2;
    // Longest tour edge joining consecutive window positions.
    double longest = 0.0;
    const std::size_t edges = cyclic ? window.size() : window.size() - 1;
    for (std::size_t k = 0; k < edges; ++k) {
      const std::size_t a = tour.order[window[k]], b = tour.order[window[(k + 1) % window.size()]];
      longest = std::max(longest, distance(points[a], points[b]));
    }
    // Largest number of window edges between a member and a window point.
    std::size_t gap = 0;
    for (std::size_t k = 0; k < window.size(); ++k) {
      const std::size_t pos = window[k];
      if (pos < s.first_position || pos >= s.first_position + s.members.size()) continue;
      const std::size_t lo = k, hi = window.size() - 1 - k;
      gap = std::max(gap, cyclic ? window.size() / 2 : std::max(lo, hi));
    }
    report.edge_gap = std::max(report.edge_gap, gap);
    for (std::size_t p : s.members) {
      const double bound = static_cast<double>(gap) * longest;
      const double ratio = bound > 0.0 ? configs[p].range / bound : kUnbounded;
      report.worst_range_ratio = std::max(report.worst_range_ratio, ratio);
      if (configs[p].range > bound * (1.0 + kSlack)) report.range_chain_ok = false;
    }
  }
  report.cost_bound = static_cast<double>(report.section_size) *
                      std::pow(static_cast<double>(report.edge_gap), beta) * 3.0 * report.tour;
  report.cost_chain_ok = report.cost <= report.cost_bound * (1.0 + kSlack);
  return report;
}

}  // namespace sectorlink
