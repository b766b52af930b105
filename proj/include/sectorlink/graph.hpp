#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "sectorlink/geometry.hpp"

namespace sectorlink {

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

/// Undirected simple graph over a list of points.
class CommGraph {
 public:
  CommGraph() = default;
  explicit CommGraph(std::vector<Point> vertices) : vertices_(std::move(vertices)), adjacency_(vertices_.size()) {}

  void add_edge(std::size_t u, std::size_t v) {
    if (u == v) throw Error("self-loop");
    if (u >= size() || v >= size()) throw Error("edge endpoint out of range");
    if (has_edge(u, v)) return;
    insert_sorted(adjacency_[u], v);
    insert_sorted(adjacency_[v], u);
    ++edge_count_;
  }

  [[nodiscard]] bool has_edge(std::size_t u, std::size_t v) const {
    const auto& a = adjacency_[u];
    return std::binary_search(a.begin(), a.end(), v);
  }

  [[nodiscard]] std::size_t size() const { return vertices_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edge_count_; }
  [[nodiscard]] const std::vector<Point>& vertices() const { return vertices_; }
  [[nodiscard]] const std::vector<std::size_t>& neighbors(std::size_t u) const { return adjacency_[u]; }

  [[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    out.reserve(edge_count_);
    for (std::size_t u = 0; u < size(); ++u)
      for (std::size_t v : adjacency_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

 private:
  static void insert_sorted(std::vector<std::size_t>& list, std::size_t v) {
    list.insert(std::upper_bound(list.begin(), list.end(), v), v);
  }

  std::vector<Point> vertices_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// Hop distances from `source`; kUnreachable where no path exists. BFS stops
/// expanding beyond `limit` hops.
inline std::vector<std::size_t> bfs_distances(const CommGraph& g, std::size_t source,
                                              std::size_t limit = kUnreachable) {
  std::vector<std::size_t> dist(g.size(), kUnreachable);
  std::queue<std::size_t> queue;
  dist[source] = 0;
  queue.push(source);
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop();
    if (dist[u] >= limit) continue;
    for (std::size_t v : g.neighbors(u)) {
      if (dist[v] != kUnreachable) continue;
      dist[v] = dist[u] + 1;
      queue.push(v);
    }
  }
  return dist;
}

inline bool is_connected(const CommGraph& g) {
  if (g.size() <= 1) return true;
  const auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](std::size_t d) { return d == kUnreachable; });
}

/// BFS hop distance; kUnreachable if u and v are in different components.
inline std::size_t hop_distance(const CommGraph& g, std::size_t u, std::size_t v) {
  if (u >= g.size() || v >= g.size()) throw Error("vertex out of range");
  return bfs_distances(g, u)[v];
}

/// Connected components as sorted vertex lists, ordered by smallest member.
inline std::vector<std::vector<std::size_t>> connected_components(const CommGraph& g) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(g.size(), false);
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp{s};
    seen[s] = true;
    for (std::size_t k = 0; k < comp.size(); ++k)
      for (std::size_t v : g.neighbors(comp[k]))
        if (!seen[v]) {
          seen[v] = true;
          comp.push_back(v);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

/// Graph induced on a subset of vertices; `subset` gives the original index
/// of each new vertex.
inline CommGraph induced_subgraph(const CommGraph& g, const std::vector<std::size_t>& subset) {
  std::vector<std::size_t> position(g.size(), kUnreachable);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    position[subset[i]] = i;
    pts.push_back(g.vertices()[subset[i]]);
  }
  CommGraph h(std::move(pts));
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t v : g.neighbors(subset[i]))
      if (position[v] != kUnreachable && i < position[v]) h.add_edge(i, position[v]);
  return h;
}

}  // namespace sectorlink
