#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "oracles.hpp"
#include "sectorlink/generators.hpp"
#include "sectorlink/power.hpp"

using namespace sectorlink;

namespace {

std::vector<Point> random_points(std::size_t n, std::uint64_t seed, double side = 10.0) {
  GenSpec spec{Family::kRandomSquare, n, seed, {}};
  spec.params.side = side;
  return generate(spec);
}

std::vector<Point> unit_line(std::size_t n) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back({static_cast<double>(i), 0.0});
  return pts;
}

}  // namespace

TEST(Power, EdgeWeight) {
  EXPECT_DOUBLE_EQ(beta_edge_weight({0, 0}, {1, 0}, 3.7), 1.0);
  EXPECT_DOUBLE_EQ(beta_edge_weight({0, 0}, {0, 2}, 2.0), 4.0);
  EXPECT_DOUBLE_EQ(beta_edge_weight({0, 0}, {3, 0}, 3.0), 27.0);
  EXPECT_THROW(beta_edge_weight({0, 0}, {1, 0}, 0.5), Error);
}

TEST(Mst, SmallExamples) {
  EXPECT_DOUBLE_EQ(mst_cost(std::vector<Point>{{0, 0}, {3, 4}}, 2.0), 25.0);
  for (double beta : {1.0, 2.0, 4.0}) EXPECT_DOUBLE_EQ(mst_cost(unit_line(9), beta), 8.0);
  EXPECT_THROW(mst_cost(std::vector<Point>{{0, 0}}, 2.0), Error);
}

TEST(Mst, MatchesExhaustiveEnumeration) {
  SplitMix64 rng(3);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng.below(6);
    const auto pts = random_points(n, 100 + t);
    const double beta = 1.0 + static_cast<double>(rng.below(4));
    EXPECT_NEAR(mst_cost(pts, beta), oracle::brute_force_mst(pts, beta), 1e-9 * oracle::brute_force_mst(pts, beta));
  }
}

TEST(Tour, VisitsEveryPointOnce) {
  const auto pts = random_points(50, 1);
  const auto tour = tsp_tour_approx(pts, 2.0);
  std::set<std::size_t> seen(tour.order.begin(), tour.order.end());
  EXPECT_EQ(seen.size(), pts.size());
  EXPECT_EQ(tour.order.size(), pts.size());
  // Starts at the lexicographically smallest point, smaller neighbour second.
  const auto smallest = std::min_element(pts.begin(), pts.end()) - pts.begin();
  EXPECT_EQ(tour.order.front(), static_cast<std::size_t>(smallest));
  EXPECT_TRUE(pts[tour.order[1]] < pts[tour.order.back()]);
}

TEST(Tour, TriangleAndErrors) {
  const std::vector<Point> tri{{0, 0}, {1, 0}, {0, 1}};
  EXPECT_EQ(tsp_tour_approx(tri, 1.0).size(), 3u);
  EXPECT_THROW(tsp_tour_approx(std::vector<Point>{{0, 0}, {1, 0}}, 1.0), Error);
}

TEST(Tour, CollinearSweepIsOptimal) {
  std::vector<Point> pts{{3, 0}, {0, 0}, {5, 0}, {1, 0}, {4, 0}, {2, 0}};
  const auto tour = tsp_tour_approx(pts, 1.0);
  EXPECT_DOUBLE_EQ(tour_cost(pts, tour, 1.0), oracle::brute_force_tour(pts, 1.0));
}

TEST(Tour, RatioToBruteForceOptimumIsFinite) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto pts = random_points(3 + seed % 6, seed);
    for (double beta : {1.0, 2.0, 3.0}) {
      const double ratio = tour_cost(pts, tsp_tour_approx(pts, beta), beta) / oracle::brute_force_tour(pts, beta);
      EXPECT_GE(ratio, 1.0 - 1e-12);
      EXPECT_TRUE(std::isfinite(ratio));
      if (beta == 1.0) {
        EXPECT_LE(ratio, 2.0 + 1e-12);  // doubled-tree bound under the triangle inequality
      }
    }
  }
}

TEST(Sections, Counts) {
  for (std::size_t n : {8u, 16u, 20u, 23u}) {
    const auto pts = random_points(n, n);
    const auto sections = make_sections(pts, tsp_tour_approx(pts, 2.0));
    ASSERT_EQ(sections.size(), n / 8);
    for (std::size_t i = 0; i + 1 < sections.size(); ++i) EXPECT_EQ(sections[i].members.size(), 8u);
    EXPECT_EQ(sections.back().members.size(), 8 + n % 8);
  }
  const auto pts = random_points(7, 1);
  Tour t;
  for (std::size_t i = 0; i < 7; ++i) t.order.push_back(i);
  EXPECT_THROW(make_sections(pts, t), Error);
}

TEST(Sections, SplitByXWithTieRules) {
  Section s;
  std::vector<Point> pts{{5, 0}, {1, 0}, {7, 0}, {3, 0}, {2, 0}, {8, 0}, {4, 0}, {6, 0}};
  for (std::size_t i = 0; i < 8; ++i) s.members.push_back(i);
  split_section(pts, s);
  EXPECT_EQ(s.left, (std::vector<std::size_t>{1, 4, 3, 6}));
  EXPECT_DOUBLE_EQ(s.separator_x, 4.5);

  std::vector<Point> vertical;
  for (int i = 0; i < 8; ++i) vertical.push_back({0.0, static_cast<double>(7 - i)});
  split_section(vertical, s);
  EXPECT_EQ(s.left, (std::vector<std::size_t>{7, 6, 5, 4}));
  EXPECT_EQ(s.separator_x, 0.0);

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto r = random_points(8 + seed % 8, seed);
    Section rs;
    for (std::size_t i = 0; i < r.size(); ++i) rs.members.push_back(i);
    split_section(r, rs);
    double lmax = -kUnbounded, rmin = kUnbounded;
    for (std::size_t i : rs.left) lmax = std::max(lmax, r[i].x);
    for (std::size_t i : rs.right) rmin = std::min(rmin, r[i].x);
    EXPECT_LE(lmax, rs.separator_x);
    EXPECT_LE(rs.separator_x, rmin);
    EXPECT_GE(rs.right.size(), 4u);
  }
}

TEST(Assign, SingleSectionRangesAreFarthestMember) {
  const auto pts = random_points(8, 5);
  const auto res = orient_and_assign(pts, 2.0);
  for (std::size_t p = 0; p < 8; ++p) {
    double far = 0;
    for (std::size_t q = 0; q < 8; ++q) far = std::max(far, covering_range(pts[p], pts[q]));
    EXPECT_EQ(res.assignment.configs[p].range, far);
  }
}

TEST(Assign, FarApartClustersConnect) {
  std::vector<Point> pts;
  SplitMix64 rng(12);
  for (int i = 0; i < 8; ++i) pts.push_back({rng.uniform(0, 1), rng.uniform(0, 1)});
  for (int i = 0; i < 8; ++i) pts.push_back({rng.uniform(100, 101), rng.uniform(50, 51)});
  const auto res = orient_and_assign(pts, 3.0);
  EXPECT_TRUE(oracle::connected(pts.size(), oracle::scg_edges(res.assignment.configs)));
  double longest = 0;
  for (const auto& c : res.assignment.configs) longest = std::max(longest, c.range);
  EXPECT_GT(longest, 100.0);
}

TEST(Assign, RandomInstancesConnectAndChainsHold) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 8 + (seed * 37) % 120;
    const double beta = 1.0 + static_cast<double>(seed % 5);
    const auto pts = seed % 3 == 0 ? generate({Family::kClustered, n, seed, {}}) : random_points(n, seed);
    const auto res = orient_and_assign(pts, beta);
    ASSERT_TRUE(oracle::connected(n, oracle::scg_edges(res.assignment.configs))) << seed;
    const auto chain = cost_chain_check(pts, res);
    EXPECT_TRUE(chain.range_chain_ok) << seed;
    EXPECT_TRUE(chain.cost_chain_ok) << seed;
    EXPECT_LE(chain.mst, chain.cost * (1 + 1e-12));
    if (n % 8 == 0) {
      EXPECT_LE(chain.edge_gap, 15u);
      EXPECT_EQ(chain.section_size, 8u);
    }
  }
}

TEST(Assign, CollinearUnitSpacing) {
  const auto pts = unit_line(8);
  const auto res = orient_and_assign(pts, 2.0);
  for (const auto& c : res.assignment.configs) EXPECT_LE(c.range, 7.0);
  EXPECT_TRUE(cost_chain_check(pts, res).ok());
  EXPECT_TRUE(oracle::connected(8, oracle::scg_edges(res.assignment.configs)));
}

TEST(Assign, CostIsRecomputedFromEntries) {
  const auto pts = random_points(16, 2);
  auto res = orient_and_assign(pts, 2.0);
  const double before = res.assignment.cost();
  res.assignment.configs[0].range *= 2;
  EXPECT_GT(res.assignment.cost(), before);
}

TEST(Assign, IncreasingARangeNeverRemovesEdges) {
  const auto pts = random_points(32, 9);
  const auto res = orient_and_assign(pts, 2.0);
  const auto base = build_scg(res.assignment.configs).edges();
  for (std::size_t p = 0; p < pts.size(); ++p) {
    auto configs = res.assignment.configs;
    configs[p].range *= 1.5;
    const auto grown = build_scg(configs);
    for (const auto& [u, v] : base) ASSERT_TRUE(grown.has_edge(u, v));
  }
}

TEST(Assign, ScalingByTwoScalesCost) {
  const auto pts = random_points(24, 4);
  std::vector<Point> scaled;
  for (const auto& p : pts) scaled.push_back({2 * p.x, 2 * p.y});
  for (double beta : {1.0, 2.0, 3.5}) {
    const double a = orient_and_assign(pts, beta).assignment.cost();
    const double b = orient_and_assign(scaled, beta).assignment.cost();
    EXPECT_NEAR(b / a, std::pow(2.0, beta), 1e-12 * std::pow(2.0, beta));
  }
}

TEST(Assign, SmallInstanceFallback) {
  for (std::size_t n = 2; n < 8; ++n) {
    const auto pts = random_points(n, n);
    const auto res = orient_and_assign(pts, 2.0);
    EXPECT_TRUE(res.small_instance);
    EXPECT_TRUE(oracle::connected(n, oracle::scg_edges(res.assignment.configs)));
    EXPECT_THROW(cost_chain_check(pts, res), Error);
  }
  EXPECT_THROW(orient_and_assign(std::vector<Point>{{0, 0}}, 2.0), Error);
}
