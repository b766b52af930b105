// Acceptance checks AC1-AC8. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oracles.hpp"
#include "sectorlink/sectorlink.hpp"

using namespace sectorlink;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

// ---------------------------------------------------------------- AC1

Outcome ac1_four_points() {
  const auto t0 = Clock::now();
  SplitMix64 rng(0xA11CE);
  std::size_t total = 0, failures = 0, convex = 0, triangle = 0, collinear = 0;
  auto check = [&](const std::array<Point, 4>& q) {
    const auto a = orient_quadruplet(q);
    const auto ws = a.wedges();
    const bool ok = plane_coverage_verify(ws).covered && is_connected(build_scg(ws));
    ++total;
    failures += !ok;
    convex += a.shape == QuadrupletShape::kConvex;
    triangle += a.shape == QuadrupletShape::kTriangle;
    collinear += a.shape == QuadrupletShape::kCollinear;
  };
  auto random_point = [&] { return Point{rng.uniform(-10, 10), rng.uniform(-10, 10)}; };
  // Generic positions (mostly convex, some triangle).
  for (int t = 0; t < 6000; ++t) check({random_point(), random_point(), random_point(), random_point()});
  // Triangle with a strictly interior point.
  for (int t = 0; t < 2500; ++t) {
    const Point a = random_point(), b = random_point(), c = random_point();
    double u = rng.uniform(0.05, 0.9), v = rng.uniform(0.05, 0.9);
    if (u + v > 0.95) {
      u = 0.95 - u * 0.5;
      v = 0.95 - u - 0.01;
    }
    const Point d{a.x + u * (b.x - a.x) + v * (c.x - a.x), a.y + u * (b.y - a.y) + v * (c.y - a.y)};
    std::array<Point, 4> q{a, b, c, d};
    if (d == a || d == b || d == c) continue;
    check(q);
  }
  // Exactly collinear (dyadic) points.
  while (total < 10000) {
    const auto pts = generate({Family::kCollinear, 4, rng.next(), {}});
    check({pts[0], pts[1], pts[2], pts[3]});
  }
  const double secs = seconds_since(t0);
  Outcome o;
  o.pass = failures == 0 && convex >= 1000 && triangle >= 1000 && collinear >= 100 && secs < 60.0;
  std::ostringstream ss;
  ss << total << " sets (convex " << convex << ", triangle " << triangle << ", collinear " << collinear
     << "), failures " << failures << ", " << secs << " s";
  o.detail = ss.str();
  return o;
}

// ---------------------------------------------------------------- AC2

Outcome ac2_two_sets() {
  std::size_t total = 0, failures = 0, rotated = 0;
  std::map<int, std::size_t> strata;
  auto check = [&](const std::vector<Point>& pts) {
    ++total;
    std::vector<Wedge> ws;
    const std::span<const Point> all(pts);
    for (const auto& w : oriented_wedges(all.subspan(0, 4))) ws.push_back(w);
    for (const auto& w : oriented_wedges(all.subspan(4, 4))) ws.push_back(w);
    failures += !is_connected(build_scg(ws));
    ++strata[separated_proof_case(all.subspan(0, 4), all.subspan(4, 4)).value];
  };
  std::uint64_t seed = 0;
  for (int t = 0; t < 8000; ++t) {
    GenSpec spec{Family::kSeparatedQuads, 8, ++seed, {}};
    spec.params.rotate = t % 2 == 1;
    spec.params.gap = t % 4 < 2 ? 1.0 : 0.01;
    rotated += spec.params.rotate;
    check(generate(spec));
  }
  for (int stratum : {1, 2})
    for (int t = 0; t < 1000; ++t) {
      GenSpec spec{Family::kStratifiedQuads, 8, ++seed, {}};
      spec.params.stratum = stratum;
      spec.params.rotate = t % 2 == 1;
      rotated += spec.params.rotate;
      const auto pts = generate(spec);
      const std::span<const Point> all(pts);
      failures += separated_proof_case(all.subspan(0, 4), all.subspan(4, 4)).value != stratum;
      check(pts);
    }
  Outcome o;
  o.pass = failures == 0 && total >= 10000 && strata[1] > 0 && strata[2] > 0 && rotated > 0;
  std::ostringstream ss;
  ss << total << " pairs (" << rotated << " rotated, case-1 stratum " << strata[1] << ", case-2 stratum " << strata[2]
     << "), disconnected or misclassified " << failures;
  o.detail = ss.str();
  return o;
}

// ---------------------------------------------------------------- AC3

Outcome ac3_counterexample() {
  Outcome o;
  const Json j = read_json_file(std::string(SECTORLINK_FIXTURES) + "/nonseparated_counterexample.json");
  QuadruplePair pinned;
  for (std::size_t i = 0; i < 4; ++i) {
    pinned.a[i] = {j["a"][i]["x"].get<double>(), j["a"][i]["y"].get<double>()};
    pinned.b[i] = {j["b"][i]["x"].get<double>(), j["b"][i]["y"].get<double>()};
  }
  CounterexampleSearch opts;
  opts.lattice = j["search"]["lattice"].get<int>();
  opts.max_step = j["search"]["max_step"].get<int>();
  opts.steps = j["search"]["steps"].get<std::uint64_t>();
  const auto trials = j["search"]["trials"].get<std::uint64_t>();
  const auto seed = j["search"]["seed"].get<std::uint64_t>();
  const auto first = search_nonseparated_counterexample(trials, seed, opts);
  const auto second = search_nonseparated_counterexample(trials, seed, opts);
  const bool found = first.has_value();
  const bool reproduces = found && second && first->a == pinned.a && first->b == pinned.b && second->a == pinned.a &&
                          second->b == pinned.b;
  const bool not_separable = !strictly_separable(pinned.a, pinned.b) && !oracle::separable(pinned.a, pinned.b);
  std::vector<Wedge> ws;
  for (const auto& w : oriented_wedges(pinned.a)) ws.push_back(w);
  for (const auto& w : oriented_wedges(pinned.b)) ws.push_back(w);
  const auto g = build_scg(ws);
  bool cross_edge = false;
  for (const auto& [u, v] : g.edges()) cross_edge = cross_edge || ((u < 4) != (v < 4));
  for (const auto& [u, v] : oracle::scg_edges(ws)) cross_edge = cross_edge || ((u < 4) != (v < 4));
  o.pass = found && reproduces && not_separable && !cross_edge;
  std::ostringstream ss;
  ss << "search found " << found << ", reproduces pinned fixture " << reproduces << ", non-separable "
     << not_separable << ", A-B edges " << (cross_edge ? "present" : "none");
  o.detail = ss.str();
  return o;
}

// ---------------------------------------------------------------- AC4 / AC5

std::vector<std::vector<Point>> udg_instances() {
  std::vector<std::vector<Point>> out;
  for (std::size_t i = 0; i < 200; ++i) {
    GenSpec spec{Family::kConnectedUdg, 20 + (480 * i) / 199, 1000 + i, {}};
    // Alternate dense blobs with drifting growth across many cells.
    if (i % 3 != 0) {
      spec.params.window = i % 3;
      spec.params.drift = 0.5 + 0.4 * static_cast<double>(i % 5) / 4;
    }
    out.push_back(generate(spec));
  }
  return out;
}

Outcome ac4_spanner(const std::vector<std::vector<Point>>& instances) {
  Outcome o;
  std::size_t failures = 0, worst_refined = 0, worst_basic = 0;
  double slowest_500 = 0;
  for (const auto& pts : instances) {
    const auto udg = build_udg(pts);
    for (auto mode : {ReplacementMode::kRefined, ReplacementMode::kBasic}) {
      const auto r = replace(pts, mode);
      const std::size_t bound = mode == ReplacementMode::kRefined ? 8 : 9;
      bool ok = true;
      for (const auto& c : r.configs) ok = ok && c.range == 14.0 * std::sqrt(2.0);
      const auto t0 = Clock::now();
      const auto scg = build_scg(r.configs);
      const bool connected = is_connected(scg);
      const auto rep = verify_hop_spanner(udg, scg, bound);
      const double secs = seconds_since(t0);
      if (pts.size() == 500) slowest_500 = std::max(slowest_500, secs);
      ok = ok && connected && rep.ok;
      (mode == ReplacementMode::kRefined ? worst_refined : worst_basic) =
          std::max(mode == ReplacementMode::kRefined ? worst_refined : worst_basic, rep.max_stretch);
      failures += !ok;
    }
  }
  o.pass = failures == 0 && slowest_500 <= 5.0 && slowest_500 > 0;
  std::ostringstream ss;
  ss << instances.size() << " instances x 2 modes, failures " << failures << ", max stretch refined " << worst_refined
     << " (bound 8) basic " << worst_basic << " (bound 9), verification at n=500 " << slowest_500 << " s";
  o.detail = ss.str();
  return o;
}

Outcome ac5_exit_paths(const std::vector<std::vector<Point>>& instances) {
  Outcome o;
  SplitMix64 rng(0x41);
  std::size_t paths = 0, path_failures = 0, nf_points = 0, neighbor_failures = 0;
  for (const auto& pts : instances) {
    const auto udg = build_udg(pts);
    const auto part = grid_partition(pts);
    if (part.any_full()) {
      const auto nearest = nearest_full_cells(udg, part);
      for (std::size_t p = 0; p < pts.size(); ++p) {
        const auto& own = part.cell_of_point(p);
        if (own.status != CellStatus::kNonFull) continue;
        ++nf_points;
        try {
          const auto& target = closest_full_cell(p, nearest, part);
          neighbor_failures += !are_neighbors(own.index, target.index);
        } catch (const Error&) {
          ++neighbor_failures;
        }
      }
    }
    for (int s = 0; s < 5; ++s) {
      const std::size_t src = rng.below(pts.size());
      std::vector<std::size_t> parent(pts.size(), kUnreachable), order{src};
      parent[src] = src;
      for (std::size_t k = 0; k < order.size(); ++k)
        for (std::size_t v : udg.neighbors(order[k]))
          if (parent[v] == kUnreachable) {
            parent[v] = order[k];
            order.push_back(v);
          }
      const CellIndex start = part.cell_of_point(src).index;
      std::vector<std::size_t> exits;
      for (std::size_t v : order)
        if (cell_distance(part.cell_of_point(v).index, start) > 1) exits.push_back(v);
      for (int k = 0; k < 5 && !exits.empty(); ++k) {
        std::vector<std::size_t> path{exits[rng.below(exits.size())]};
        while (path.back() != src) path.push_back(parent[path.back()]);
        std::reverse(path.begin(), path.end());
        ++paths;
        path_failures += !exit_path_hits_full_cell(pts, path, part);
      }
    }
  }
  o.pass = path_failures == 0 && neighbor_failures == 0 && paths > 0 && nf_points > 0;
  std::ostringstream ss;
  ss << paths << " exiting paths (failures " << path_failures << "), " << nf_points
     << " non-full points (non-neighbour targets " << neighbor_failures << ")";
  o.detail = ss.str();
  return o;
}

// ---------------------------------------------------------------- AC6

Outcome ac6_power(const std::string& report_path) {
  Outcome o;
  std::size_t total = 0, disconnected = 0, chain_failures = 0, mst_failures = 0;
  std::ofstream csv(report_path);
  csv << "n,beta,instances,mean_cost_over_mst,max_cost_over_mst,mean_cost_over_tour,max_cost_over_tour\n";
  std::uint64_t seed = 0;
  for (std::size_t n : {8u, 16u, 64u, 512u})
    for (int b = 1; b <= 5; ++b) {
      const double beta = b;
      double sum_mst = 0, max_mst = 0, sum_tour = 0, max_tour = 0;
      const int count = 50;
      for (int t = 0; t < count; ++t) {
        const Family fam = t % 3 == 0 ? Family::kClustered : (t % 3 == 1 ? Family::kRandomSquare : Family::kConnectedUdg);
        GenSpec spec{fam, n, ++seed, {}};
        if (fam == Family::kRandomSquare) spec.params.side = 10.0 * std::sqrt(static_cast<double>(n) / 8.0);
        const auto pts = generate(spec);
        const auto res = orient_and_assign(pts, beta);
        ++total;
        disconnected += !is_connected(build_scg(res.assignment.configs));
        const auto chain = cost_chain_check(pts, res);
        // Constants 8 and 15 for sections of exactly eight points.
        const bool within_15 = chain.edge_gap <= 15 && chain.section_size == 8;
        const bool cost_ok = chain.cost <= 8.0 * std::pow(15.0, beta) * 3.0 * chain.tour * (1 + 1e-9);
        chain_failures += !(chain.range_chain_ok && within_15 && cost_ok);
        mst_failures += !(chain.mst <= chain.cost * (1 + 1e-12));
        sum_mst += chain.ratio_to_mst();
        max_mst = std::max(max_mst, chain.ratio_to_mst());
        sum_tour += chain.ratio_to_tour();
        max_tour = std::max(max_tour, chain.ratio_to_tour());
      }
      csv << n << "," << b << "," << count << "," << sum_mst / count << "," << max_mst << "," << sum_tour / count
          << "," << max_tour << "\n";
    }
  o.pass = total == 1000 && disconnected == 0 && chain_failures == 0 && mst_failures == 0 && csv.good();
  std::ostringstream ss;
  ss << total << " instances, disconnected " << disconnected << ", chain failures " << chain_failures
     << ", mst-bound failures " << mst_failures << ", ratios in " << report_path;
  o.detail = ss.str();
  return o;
}

// ---------------------------------------------------------------- AC7

Outcome ac7_oracles() {
  Outcome o;
  SplitMix64 rng(0x7);
  std::size_t agree = 0, covered = 0, uncovered = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto ws = oracle::mixed_wedge_set(rng, t);
    const bool exact = plane_coverage_verify(ws).covered;
    const bool sampled = !oracle::sampling_finds_gap(ws, 0.1, 3600);
    agree += exact == sampled;
    (exact ? covered : uncovered) += 1;
  }
  std::size_t mst_cases = 0, mst_mismatch = 0;
  for (std::uint64_t s = 0; s < 300; ++s) {
    const auto pts = generate({Family::kRandomSquare, 2 + s % 6, 5000 + s, {}});
    const double beta = 1.0 + static_cast<double>(s % 5);
    const double expected = oracle::brute_force_mst(pts, beta);
    ++mst_cases;
    mst_mismatch += std::fabs(mst_cost(pts, beta) - expected) > 1e-9 * expected;
  }
  double worst_tour = 1.0, sum_tour = 0;
  std::size_t tour_cases = 0;
  bool tour_sane = true;
  for (std::uint64_t s = 0; s < 120; ++s) {
    const auto pts = generate({Family::kRandomSquare, 3 + s % 6, 9000 + s, {}});
    const double beta = 1.0 + static_cast<double>(s % 3);
    const double r = tour_cost(pts, tsp_tour_approx(pts, beta), beta) / oracle::brute_force_tour(pts, beta);
    tour_sane = tour_sane && std::isfinite(r) && r >= 1.0 - 1e-12;
    worst_tour = std::max(worst_tour, r);
    sum_tour += r;
    ++tour_cases;
  }
  o.pass = agree == 1000 && covered > 50 && uncovered > 50 && mst_mismatch == 0 && tour_sane;
  std::ostringstream ss;
  ss << "coverage agreement " << agree << "/1000 (covered " << covered << ", uncovered " << uncovered << "); MST "
     << mst_cases - mst_mismatch << "/" << mst_cases << " exact; tour/optimal mean " << sum_tour / tour_cases
     << " max " << worst_tour << " over " << tour_cases << " instances";
  o.detail = ss.str();
  return o;
}

// ---------------------------------------------------------------- AC8

int run_cli(const std::string& cli, const std::string& args) {
  const std::string cmd = "\"" + cli + "\" " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome ac8_determinism(const std::string& cli) {
  Outcome o;
  if (cli.empty()) {
    o.pass = false;
    o.detail = "no --cli given";
    return o;
  }
  const fs::path dir = fs::temp_directory_path() / "sectorlink_acceptance_ac8";
  fs::remove_all(dir);
  fs::create_directories(dir / "1");
  fs::create_directories(dir / "2");
  const std::vector<std::pair<std::string, std::string>> steps{
      {"gen --family connected-udg --n 300 --seed 7 -o {}/udg.json", "udg.json"},
      {"gen --family random-square --n 64 --seed 7 -o {}/sq.json", "sq.json"},
      {"gen --family clustered --n 100 --seed 7 -o {}/cl.json", "cl.json"},
      {"gen --family collinear --n 30 --seed 7 -o {}/co.json", "co.json"},
      {"gen --family separated-quads --n 8 --seed 7 --rotate -o {}/sep.json", "sep.json"},
      {"gen --family stratified-quads --n 8 --seed 7 --stratum 2 -o {}/str.json", "str.json"},
      {"gen --family random-square --n 4 --seed 7 -o {}/four.json", "four.json"},
      {"orient4 {}/four.json -o {}/four_cfg.json", "four_cfg.json"},
      {"replace --mode basic {}/udg.json -o {}/basic.json", "basic.json"},
      {"replace --mode refined {}/udg.json -o {}/refined.json", "refined.json"},
      {"power --beta 3 {}/sq.json -o {}/power.json", "power.json"},
      {"verify {}/udg.json {}/refined.json -o {}/verify.json", "verify.json"},
      {"verify {}/sq.json {}/power.json -o {}/verify_power.json", "verify_power.json"},
      {"render {}/udg.json {}/refined.json -o {}/refined.svg", "refined.svg"},
      {"render {}/four.json {}/four_cfg.json -o {}/four.svg", "four.svg"},
  };
  std::size_t differing = 0, failed = 0;
  for (const auto& [tmpl, out] : steps) {
    for (const char* run : {"1", "2"}) {
      std::string args = tmpl;
      const std::string d = (dir / run).string();
      for (auto pos = args.find("{}"); pos != std::string::npos; pos = args.find("{}"))
        args.replace(pos, 2, d);
      failed += run_cli(cli, args) != 0;
    }
    const std::string a = slurp(dir / "1" / out), b = slurp(dir / "2" / out);
    differing += a.empty() || a != b;
  }
  fs::remove_all(dir);
  o.pass = differing == 0 && failed == 0;
  std::ostringstream ss;
  ss << steps.size() << " commands run twice, non-zero exits " << failed << ", differing outputs " << differing;
  o.detail = ss.str();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  std::string cli, report = "power_ratios.csv";
  app.add_option("--cli", cli, "path to the sectorlink executable");
  app.add_option("--report", report, "CSV file for the power ratio table");
  CLI11_PARSE(app, argc, argv);

  const auto instances = udg_instances();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"AC1 four-point orientation", ac1_four_points},
      {"AC2 separated quadruplet pairs", ac2_two_sets},
      {"AC3 non-separated counterexample", ac3_counterexample},
      {"AC4 replacement spanner bounds", [&] { return ac4_spanner(instances); }},
      {"AC5 block exit paths", [&] { return ac5_exit_paths(instances); }},
      {"AC6 power assignment", [&] { return ac6_power(report); }},
      {"AC7 oracle cross-validation", ac7_oracles},
      {"AC8 CLI determinism", [&] { return ac8_determinism(cli); }},
  };
  bool all = true;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    all = all && o.pass;
    std::printf("%s %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
