#pragma once

// Replacing unit-range omni-directional antennas with quarter sectors of
// range 14*sqrt(2) such that the symmetric communication graph is a hop
// spanner of the unit disk graph (stretch 9 in basic mode, 8 refined).
//
// Points are bucketed into semi-open 7x7 grid cells. A cell with at least
// four points is full: four of its points become hubs oriented as a
// quadruplet and every other point of the cell aims at a hub covering it.
// Points of non-full cells aim at a covering hub of the nearest full cell
// in unit-disk hop distance, which is always a grid neighbour.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "sectorlink/graph.hpp"
#include "sectorlink/orientation4.hpp"
#include "sectorlink/scg.hpp"

namespace sectorlink {

inline const double kReplacementRange = 14.0 * std::sqrt(2.0);
inline constexpr double kCellSide = 7.0;
inline constexpr std::size_t kFullCellThreshold = 4;

enum class ReplacementMode { kBasic, kRefined, kSmallInstance };

/// Edge iff |pq| <= 1 (closed threshold, exact).
inline CommGraph build_udg(std::span<const Point> points) {
  CommGraph g(std::vector<Point>(points.begin(), points.end()));
  for (std::size_t u = 0; u < points.size(); ++u)
    for (std::size_t v = u + 1; v < points.size(); ++v) {
      if (std::fabs(points[u].x - points[v].x) > 1.0 + 1e-9 || std::fabs(points[u].y - points[v].y) > 1.0 + 1e-9)
        continue;
      if (compare_distance(points[u], points[v], 1.0) <= 0) g.add_edge(u, v);
    }
  return g;
}

struct CellIndex {
  std::int64_t i = 0;
  std::int64_t j = 0;
  friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

/// Chebyshev distance between cells; 1 means grid neighbours.
inline std::int64_t cell_distance(const CellIndex& a, const CellIndex& b) {
  return std::max(std::llabs(a.i - b.i), std::llabs(a.j - b.j));
}
inline bool are_neighbors(const CellIndex& a, const CellIndex& b) { return cell_distance(a, b) == 1; }

struct Grid {
  Point origin;
  double side = kCellSide;

  /// Cell [ox + 7i, ox + 7(i+1)) x [oy + 7j, oy + 7(j+1)) containing p,
  /// with the boundary comparisons done exactly.
  [[nodiscard]] CellIndex cell_of(const Point& p) const {
    return {axis_index(p.x, origin.x), axis_index(p.y, origin.y)};
  }

 private:
  [[nodiscard]] std::int64_t axis_index(double v, double o) const {
    auto i = static_cast<std::int64_t>(std::floor((v - o) / side));
    // v - o - side * i, exactly; side * i is exact for |i| < 2^50.
    auto offset = [&](std::int64_t k) { return exact::sign_of_sum({v, -o, -side * static_cast<double>(k)}); };
    while (offset(i) < 0) --i;
    while (offset(i + 1) >= 0) ++i;
    return i;
  }
};

inline Grid default_grid(std::span<const Point> points) {
  if (points.empty()) return Grid{};
  double mx = points[0].x, my = points[0].y;
  for (const auto& p : points) {
    mx = std::min(mx, p.x);
    my = std::min(my, p.y);
  }
  return Grid{{std::floor(mx), std::floor(my)}, kCellSide};
}

enum class CellStatus { kEmpty, kNonFull, kFull };

struct CellRecord {
  CellIndex index;
  std::vector<std::size_t> points;  // input indices, ascending
  CellStatus status = CellStatus::kEmpty;
  std::vector<std::size_t> hubs;             // four input indices when full
  std::vector<Wedge> hub_wedges;             // parallel to `hubs`
  std::vector<std::size_t> supporting_hubs;  // two of `hubs`, refined mode only
};

struct GridPartition {
  Grid grid;
  std::vector<CellRecord> cells;      // non-empty cells sorted by index
  std::vector<std::size_t> cell_of;   // point index -> position in `cells`

  [[nodiscard]] const CellRecord& cell_of_point(std::size_t p) const { return cells[cell_of[p]]; }
  [[nodiscard]] std::optional<std::size_t> find(const CellIndex& idx) const {
    auto it = std::lower_bound(cells.begin(), cells.end(), idx,
                               [](const CellRecord& c, const CellIndex& k) { return c.index < k; });
    if (it == cells.end() || it->index != idx) return std::nullopt;
    return static_cast<std::size_t>(it - cells.begin());
  }
  [[nodiscard]] bool any_full() const {
    return std::any_of(cells.begin(), cells.end(), [](const CellRecord& c) { return c.status == CellStatus::kFull; });
  }
};

inline GridPartition grid_partition(std::span<const Point> points, std::optional<Point> origin = std::nullopt) {
  GridPartition out;
  out.grid = origin ? Grid{*origin, kCellSide} : default_grid(points);
  std::map<CellIndex, std::vector<std::size_t>> buckets;
  for (std::size_t p = 0; p < points.size(); ++p) buckets[out.grid.cell_of(points[p])].push_back(p);
  out.cell_of.assign(points.size(), 0);
  for (auto& [idx, members] : buckets) {
    CellRecord rec;
    rec.index = idx;
    rec.points = std::move(members);
    rec.status = rec.points.size() >= kFullCellThreshold ? CellStatus::kFull : CellStatus::kNonFull;
    for (std::size_t p : rec.points) out.cell_of[p] = out.cells.size();
    out.cells.push_back(std::move(rec));
  }
  return out;
}

/// Hubs of a full cell: input indices, their wedges and (refined) the two
/// supporting hubs.
struct HubSelection {
  std::array<std::size_t, 4> hubs{};
  std::array<Wedge, 4> wedges{};
  std::optional<std::array<std::size_t, 2>> supporting;
};

namespace replacement_detail {

inline std::vector<std::size_t> lex_sorted(std::span<const Point> points, std::vector<std::size_t> idx) {
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (points[a] != points[b]) return points[a] < points[b];
    return a < b;
  });
  return idx;
}

inline std::size_t index_of(std::span<const Point> points, const std::vector<std::size_t>& candidates,
                            const Point& p) {
  for (std::size_t i : candidates)
    if (points[i] == p) return i;
  throw Error("point not found among candidates");
}

inline void require_full(const CellRecord& cell) {
  if (cell.status != CellStatus::kFull) throw Error("hub selection requires a full cell");
}

}  // namespace replacement_detail

/// The four lexicographically smallest points, quadruplet-oriented.
inline HubSelection select_hubs_basic(std::span<const Point> points, const CellRecord& cell,
                                      double range = kReplacementRange) {
  using namespace replacement_detail;
  require_full(cell);
  const auto sorted = lex_sorted(points, cell.points);
  const std::array<Point, 4> quad{points[sorted[0]], points[sorted[1]], points[sorted[2]], points[sorted[3]]};
  const auto assignment = orient_quadruplet(quad);
  HubSelection out;
  for (std::size_t k = 0; k < 4; ++k) {
    out.hubs[k] = index_of(points, cell.points, assignment.entries[k].location);
    out.wedges[k] = assignment.entries[k].wedge(range);
  }
  return out;
}

/// Hubs chosen so that the two endpoints of a longest hull edge (the
/// supporting hubs) cover every point of the cell. In the frame where the
/// edge a1a2 is horizontal with the hull above it, a1 faces up-right, a2
/// up-left, and of the two further hubs the left one faces down-right and
/// the right one down-left.
inline HubSelection select_hubs_refined(std::span<const Point> points, const CellRecord& cell,
                                        double range = kReplacementRange) {
  using namespace replacement_detail;
  require_full(cell);
  std::vector<Point> member_points;
  for (std::size_t p : cell.points) member_points.push_back(points[p]);
  const auto hull = convex_hull(member_points);

  // Longest hull edge; ties by lexicographically smallest endpoint pair.
  std::size_t best = 0;
  const std::size_t h = hull.size();
  const std::size_t edges = h == 2 ? 1 : h;
  for (std::size_t e = 1; e < edges; ++e) {
    const int cmp = compare_lengths(hull[e], hull[(e + 1) % h], hull[best], hull[(best + 1) % h]);
    if (cmp > 0 || (cmp == 0 && orientation_detail::lex_pair_less(hull[e], hull[(e + 1) % h], hull[best],
                                                                    hull[(best + 1) % h])))
      best = e;
  }
  // Counterclockwise traversal keeps the hull on the left of a1 -> a2.
  const Point a1 = hull[best];
  const Point a2 = hull[(best + 1) % h];
  const Heading u = Heading::between(a1, a2);

  const auto sorted = lex_sorted(points, cell.points);
  std::optional<std::size_t> strip_point;
  for (std::size_t p : sorted) {
    const Point& q = points[p];
    if (q == a1 || q == a2) continue;
    if (dot_sign(u, a1, q) >= 0 && dot_sign(u, a2, q) <= 0) {
      strip_point = p;
      break;
    }
  }
  if (!strip_point) throw Error("empty half-strip over the longest hull edge");
  std::optional<std::size_t> other;
  for (std::size_t p : sorted) {
    const Point& q = points[p];
    if (q == a1 || q == a2 || p == *strip_point) continue;
    other = p;
    break;
  }
  if (!other) throw Error("full cell without a fourth point");

  // Left of the two lower hubs (smaller coordinate along u) faces down-right.
  std::size_t lower_left = *strip_point, lower_right = *other;
  if (dot_sign(u, points[lower_left], points[lower_right]) < 0) std::swap(lower_left, lower_right);

  HubSelection out;
  out.hubs = {index_of(points, cell.points, a1), index_of(points, cell.points, a2), lower_left, lower_right};
  out.wedges = {Wedge::quarter(a1, u, range), Wedge::quarter(a2, u.rotated90(), range),
                Wedge::quarter(points[lower_left], u.rotated_minus90(), range),
                Wedge::quarter(points[lower_right], u.reversed(), range)};
  out.supporting = std::array<std::size_t, 2>{out.hubs[0], out.hubs[1]};
  return out;
}

/// Nearest full cell (in unit-disk hops) for every point: multi-source BFS
/// from all points lying in full cells; ties go to the smaller cell index.
struct NearestFullCell {
  std::vector<std::size_t> hops;       // kUnreachable if no full cell is reachable
  std::vector<std::size_t> cell;       // position in GridPartition::cells
};

inline NearestFullCell nearest_full_cells(const CommGraph& udg, const GridPartition& part) {
  const std::size_t n = udg.size();
  NearestFullCell out{std::vector<std::size_t>(n, kUnreachable), std::vector<std::size_t>(n, kUnreachable)};
  std::vector<std::size_t> order;
  for (std::size_t p = 0; p < n; ++p)
    if (part.cell_of_point(p).status == CellStatus::kFull) {
      out.hops[p] = 0;
      out.cell[p] = part.cell_of[p];
      order.push_back(p);
    }
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t u = order[k];
    for (std::size_t v : udg.neighbors(u)) {
      if (out.hops[v] == kUnreachable) {
        out.hops[v] = out.hops[u] + 1;
        out.cell[v] = out.cell[u];
        order.push_back(v);
      } else if (out.hops[v] == out.hops[u] + 1 && part.cells[out.cell[u]].index < part.cells[out.cell[v]].index) {
        out.cell[v] = out.cell[u];
      }
    }
  }
  return out;
}

/// The nearest full cell of point p, which lies in a non-full cell. Throws
/// Error("small instance") when there is no full cell.
inline const CellRecord& closest_full_cell(std::size_t p, const NearestFullCell& nearest, const GridPartition& part) {
  if (!part.any_full()) throw Error("small instance");
  if (nearest.cell[p] == kUnreachable) throw Error("no full cell reachable from point");
  const CellRecord& target = part.cells[nearest.cell[p]];
  const CellRecord& own = part.cell_of_point(p);
  if (own.status == CellStatus::kNonFull && !are_neighbors(own.index, target.index))
    throw Error("nearest full cell is not a grid neighbour");
  return target;
}

inline const CellRecord& closest_full_cell(std::size_t p, const CommGraph& udg, const GridPartition& part) {
  return closest_full_cell(p, nearest_full_cells(udg, part), part);
}

/// A connected component of the unit disk graph restricted to points of
/// non-full cells.
struct NonFullComponent {
  std::vector<std::size_t> members;
  std::size_t representative = 0;
  std::size_t target_cell = 0;  // position in cells
};

struct ReplacementResult {
  std::vector<AntennaConfig> configs;  // parallel to the input points
  ReplacementMode mode = ReplacementMode::kBasic;
  GridPartition partition;
  std::vector<NonFullComponent> nf_components;
  /// Point each non-hub antenna aims at (input index), nullopt for hubs.
  std::vector<std::optional<std::size_t>> aimed_at;
  /// Hop bound the construction guarantees for this mode.
  [[nodiscard]] std::size_t stretch_bound() const {
    switch (mode) {
      case ReplacementMode::kBasic: return 9;
      case ReplacementMode::kRefined: return 8;
      case ReplacementMode::kSmallInstance: return 5;
    }
    return 9;
  }
};

namespace replacement_detail {

inline void require_distinct(std::span<const Point> points) {
  std::vector<Point> sorted(points.begin(), points.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw Error("duplicate points");
}

inline void aim(ReplacementResult& out, std::span<const Point> points, std::size_t p,
                const std::array<std::size_t, 4>& hubs, const std::array<Wedge, 4>& wedges, std::size_t count) {
  const auto choice = orient_toward(points[p], std::span<const Wedge>(wedges.data(), count), kReplacementRange);
  out.configs[p] = choice.wedge;
  out.aimed_at[p] = hubs[choice.hub];
}

}  // namespace replacement_detail

/// Small instances (no full cell): four lexicographically smallest points
/// form a quadruplet and the rest aim at a covering member. Fewer than four
/// points are oriented pairwise; see orient_small_instance for the rules.
inline ReplacementResult orient_small_instance(std::span<const Point> points) {
  using namespace replacement_detail;
  require_distinct(points);
  ReplacementResult out;
  out.mode = ReplacementMode::kSmallInstance;
  out.partition = grid_partition(points);
  const std::size_t n = points.size();
  out.configs.resize(n);
  out.aimed_at.assign(n, std::nullopt);
  if (n == 0) return out;
  if (n == 1) {
    out.configs[0] = Wedge::from_orientation(points[0], Angle(0.0), kQuarterTurn, kReplacementRange);
    return out;
  }
  if (n == 2) {
    out.configs[0] = Wedge::quarter_toward(points[0], points[1], kReplacementRange);
    out.configs[1] = Wedge::quarter_toward(points[1], points[0], kReplacementRange);
    out.aimed_at[0] = 1;
    out.aimed_at[1] = 0;
    return out;
  }
  if (n == 3) {
    // A vertex whose angle is at most a quarter turn sees both others from
    // the clockwise one; the (at most one) obtuse vertex aims at the
    // lexicographically smaller of the other two, which covers it.
    for (std::size_t v = 0; v < 3; ++v) {
      std::size_t w = (v + 1) % 3, x = (v + 2) % 3;
      if (orientation_sign(points[v], points[w], points[x]) < 0) std::swap(w, x);
      // After the swap, x is counterclockwise of w as seen from v.
      const Heading to_w = Heading::between(points[v], points[w]);
      const bool acute = dot_sign(to_w, points[v], points[x]) >= 0;
      if (acute) {
        out.configs[v] = Wedge::quarter(points[v], to_w, kReplacementRange);
      } else {
        const std::size_t target = points[w] < points[x] ? w : x;
        out.configs[v] = Wedge::quarter_toward(points[v], points[target], kReplacementRange);
        out.aimed_at[v] = target;
      }
    }
    return out;
  }

  const auto sorted = lex_sorted(points, [&] {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    return all;
  }());
  const std::array<Point, 4> quad{points[sorted[0]], points[sorted[1]], points[sorted[2]], points[sorted[3]]};
  const auto assignment = orient_quadruplet(quad);
  std::array<std::size_t, 4> hubs{};
  std::array<Wedge, 4> wedges{};
  for (std::size_t k = 0; k < 4; ++k) {
    hubs[k] = index_of(points, sorted, assignment.entries[k].location);
    wedges[k] = assignment.entries[k].wedge(kReplacementRange);
    out.configs[hubs[k]] = wedges[k];
  }
  for (std::size_t k = 4; k < n; ++k) aim(out, points, sorted[k], hubs, wedges, 4);
  return out;
}

/// Full replacement pipeline. Requires a connected unit disk graph.
inline ReplacementResult replace(std::span<const Point> points, ReplacementMode mode,
                                 std::optional<Point> grid_origin = std::nullopt) {
  using namespace replacement_detail;
  if (mode == ReplacementMode::kSmallInstance) throw Error("small-instance mode is chosen automatically");
  require_distinct(points);
  const CommGraph udg = build_udg(points);
  if (!is_connected(udg)) throw Error("unit disk graph is not connected");

  GridPartition part = grid_partition(points, grid_origin);
  if (!part.any_full()) {
    ReplacementResult small = orient_small_instance(points);
    small.partition = std::move(part);
    return small;
  }

  ReplacementResult out;
  out.mode = mode;
  const std::size_t n = points.size();
  out.configs.resize(n);
  out.aimed_at.assign(n, std::nullopt);

  // Hubs of every full cell.
  std::vector<std::optional<HubSelection>> selections(part.cells.size());
  for (std::size_t c = 0; c < part.cells.size(); ++c) {
    CellRecord& cell = part.cells[c];
    if (cell.status != CellStatus::kFull) continue;
    HubSelection sel =
        mode == ReplacementMode::kRefined ? select_hubs_refined(points, cell) : select_hubs_basic(points, cell);
    cell.hubs.assign(sel.hubs.begin(), sel.hubs.end());
    cell.hub_wedges.assign(sel.wedges.begin(), sel.wedges.end());
    if (sel.supporting) cell.supporting_hubs.assign(sel.supporting->begin(), sel.supporting->end());
    for (std::size_t k = 0; k < 4; ++k) out.configs[sel.hubs[k]] = sel.wedges[k];
    selections[c] = sel;
  }

  // Non-hub points of full cells.
  for (std::size_t c = 0; c < part.cells.size(); ++c) {
    const CellRecord& cell = part.cells[c];
    if (cell.status != CellStatus::kFull) continue;
    const HubSelection& sel = *selections[c];
    const std::size_t usable = mode == ReplacementMode::kRefined ? 2 : 4;
    for (std::size_t p : cell.points) {
      if (std::find(sel.hubs.begin(), sel.hubs.end(), p) != sel.hubs.end()) continue;
      aim(out, points, p, sel.hubs, sel.wedges, usable);
    }
  }

  // Points of non-full cells.
  const NearestFullCell nearest = nearest_full_cells(udg, part);
  std::vector<std::size_t> nf_points;
  for (std::size_t p = 0; p < n; ++p)
    if (part.cell_of_point(p).status == CellStatus::kNonFull) nf_points.push_back(p);

  if (mode == ReplacementMode::kBasic) {
    for (std::size_t p : nf_points) {
      const CellRecord& target = closest_full_cell(p, nearest, part);
      const HubSelection& sel = *selections[*part.find(target.index)];
      aim(out, points, p, sel.hubs, sel.wedges, 4);
    }
  } else {
    const CommGraph nf_graph = induced_subgraph(udg, nf_points);
    for (const auto& comp : connected_components(nf_graph)) {
      NonFullComponent rec;
      for (std::size_t k : comp) rec.members.push_back(nf_points[k]);
      rec.representative = lex_sorted(points, rec.members).front();
      const CellRecord& target = closest_full_cell(rec.representative, nearest, part);
      rec.target_cell = *part.find(target.index);
      const HubSelection& sel = *selections[rec.target_cell];
      for (std::size_t q : rec.members) aim(out, points, q, sel.hubs, sel.wedges, 4);
      out.nf_components.push_back(std::move(rec));
    }
  }

  out.partition = std::move(part);
  return out;
}

struct SpannerReport {
  bool ok = true;
  std::size_t max_stretch = 0;  // kUnreachable if some UDG edge is disconnected
  std::optional<std::pair<std::size_t, std::size_t>> worst_edge;
};

/// Checks hop_distance_scg(p, q) <= t for every edge (p, q) of `udg`.
inline SpannerReport verify_hop_spanner(const CommGraph& udg, const CommGraph& scg, std::size_t t) {
  if (udg.size() != scg.size()) throw Error("graphs over different vertex sets");
  SpannerReport report;
  for (std::size_t u = 0; u < udg.size(); ++u) {
    bool any = false;
    for (std::size_t v : udg.neighbors(u)) any = any || v > u;
    if (!any) continue;
    const auto dist = bfs_distances(scg, u);
    for (std::size_t v : udg.neighbors(u)) {
      if (v < u) continue;
      if (!report.worst_edge || dist[v] > report.max_stretch) {
        report.max_stretch = dist[v];
        report.worst_edge = std::make_pair(u, v);
      }
    }
  }
  report.ok = report.max_stretch <= t;
  return report;
}

/// Test oracle: a unit-disk path starting in some cell and leaving that
/// cell's 3x3 block passes through a full cell of the block other than the
/// start cell before it leaves. Throws on a malformed path or one that never
/// leaves the block.
inline bool exit_path_hits_full_cell(std::span<const Point> points, std::span<const std::size_t> path,
                                     const GridPartition& part) {
  if (path.size() < 2) throw Error("path too short");
  for (std::size_t k = 0; k + 1 < path.size(); ++k)
    if (compare_distance(points[path[k]], points[path[k + 1]], 1.0) > 0) throw Error("path step longer than 1");
  const CellIndex start = part.cell_of_point(path[0]).index;
  std::optional<std::size_t> exit;
  for (std::size_t k = 0; k < path.size() && !exit; ++k)
    if (cell_distance(part.cell_of_point(path[k]).index, start) > 1) exit = k;
  if (!exit) throw Error("path does not leave the block");
  for (std::size_t k = 1; k < *exit; ++k) {
    const CellRecord& c = part.cell_of_point(path[k]);
    if (c.index != start && c.status == CellStatus::kFull) return true;
  }
  return false;
}

}  // namespace sectorlink
