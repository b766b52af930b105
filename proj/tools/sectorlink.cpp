// Command-line front end: gen, orient4, replace, power, verify, render.
// Exit codes: 0 ok, 1 verification failure, 2 usage or I/O error.

#include <cstdlib>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sectorlink/sectorlink.hpp"

namespace {

using namespace sectorlink;

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t effective_seed(std::uint64_t flag) {
  if (const char* env = std::getenv("ANTENNA_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used, 0);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      return v;
    } catch (const std::exception&) {
      throw UsageError("ANTENNA_SEED is not an unsigned integer");
    }
  }
  return flag;
}

InstanceFile load_instance(const std::string& path) {
  try {
    return instance_from_json(read_json_file(path));
  } catch (const Error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

ConfigFile load_config(const std::string& path) {
  try {
    return config_from_json(read_json_file(path));
  } catch (const Error& e) {
    throw UsageError(path + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

std::vector<Point> apexes(const std::vector<Wedge>& ws) {
  std::vector<Point> out;
  for (const auto& w : ws) out.push_back(w.apex);
  return out;
}

std::string mode_name(ReplacementMode m) {
  switch (m) {
    case ReplacementMode::kBasic: return "replace-basic";
    case ReplacementMode::kRefined: return "replace-refined";
    case ReplacementMode::kSmallInstance: return "replace-small";
  }
  return "replace";
}

std::size_t stretch_bound_for(const std::string& mode) {
  if (mode == "replace-refined") return 8;
  if (mode == "replace-small") return 5;
  return 9;
}

Json stretch_json(std::size_t s) { return s == kUnreachable ? Json("unreachable") : Json(s); }

// Checks shared by the construction commands and `verify`.

bool check_connected(const std::vector<Wedge>& ws) { return is_connected(build_scg(ws)); }

bool check_coverage(const std::vector<Wedge>& ws) {
  std::vector<Wedge> unbounded;
  for (const auto& w : ws) unbounded.push_back(w.with_range(kUnbounded));
  return plane_coverage_verify(unbounded).covered;
}

SpannerReport check_stretch(const std::vector<Point>& pts, const std::vector<Wedge>& ws, std::size_t bound) {
  return verify_hop_spanner(build_udg(pts), build_scg(ws), bound);
}

CostChainReport check_cost_chain(const std::vector<Point>& pts, const ConfigFile& cfg) {
  if (!cfg.extras.contains("beta") || !cfg.extras.contains("tour")) throw UsageError("config carries no beta/tour");
  PowerResult pr;
  pr.assignment.beta = cfg.extras.at("beta").get<double>();
  pr.assignment.configs = cfg.antennas;
  Tour tour;
  for (const auto& v : cfg.extras.at("tour")) tour.order.push_back(v.get<std::size_t>());
  std::vector<std::size_t> check = tour.order;
  std::sort(check.begin(), check.end());
  for (std::size_t i = 0; i < check.size(); ++i)
    if (check[i] != i || check.size() != pts.size()) throw UsageError("tour is not a permutation of the points");
  pr.sections = make_sections(pts, tour);
  pr.tour = std::move(tour);
  return cost_chain_check(pts, pr);
}

Json chain_json(const CostChainReport& r) {
  return Json{{"range_chain", r.range_chain_ok}, {"cost_chain", r.cost_chain_ok}, {"edge_gap", r.edge_gap},
              {"section_size", r.section_size},   {"cost", r.cost},                {"mst_cost", r.mst},
              {"tour_cost", r.tour},              {"cost_bound", r.cost_bound},     {"ratio_mst", r.ratio_to_mst()},
              {"ratio_tour", r.ratio_to_tour()}};
}

Json metadata_for(const GenSpec& spec) {
  return Json{{"family", std::string(family_name(spec.family))}, {"n", spec.n}, {"seed", spec.seed}};
}

int emit(const ConfigFile& cfg, const std::string& out, bool ok) {
  write_text_file(out, dump(to_json(cfg)));
  const Json& summary = cfg.extras.at("summary");
  std::cerr << summary.dump() << "\n";
  return ok ? kOk : kVerifyFailed;
}

int run(int argc, char** argv) {
  CLI::App app{"Directional antenna orientation and range assignment"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance");
  std::string family = "random-square", gen_out = "-";
  GenSpec spec;
  std::uint64_t seed = 0;
  gen->add_option("--family", family, "random-square | connected-udg | separated-quads | stratified-quads | "
                                      "clustered | collinear");
  gen->add_option("--n", spec.n, "number of points")->required();
  gen->add_option("--seed", seed, "generator seed (ANTENNA_SEED overrides)");
  gen->add_option("--side", spec.params.side);
  gen->add_option("--reach", spec.params.reach);
  gen->add_option("--window", spec.params.window, "connected-udg: attach only to the most recent points");
  gen->add_option("--drift", spec.params.drift, "connected-udg: growth direction bias in [0, 1)");
  gen->add_option("--gap", spec.params.gap);
  gen->add_option("--width", spec.params.width);
  gen->add_flag("--rotate", spec.params.rotate);
  gen->add_option("--stratum", spec.params.stratum);
  gen->add_option("--clusters", spec.params.clusters);
  gen->add_option("--spread", spec.params.spread);
  gen->add_option("-o,--output", gen_out);

  // orient4
  auto* orient4 = app.add_subcommand("orient4", "orient four points");
  std::string o4_in, o4_out = "-";
  orient4->add_option("instance", o4_in)->required();
  orient4->add_option("-o,--output", o4_out);

  // replace
  auto* repl = app.add_subcommand("replace", "replace unit-range omni antennas by quarter sectors");
  std::string r_in, r_out = "-", r_mode = "refined";
  repl->add_option("instance", r_in)->required();
  repl->add_option("--mode", r_mode)->check(CLI::IsMember({"basic", "refined"}));
  repl->add_option("-o,--output", r_out);

  // power
  auto* power = app.add_subcommand("power", "orientation and range assignment");
  std::string p_in, p_out = "-";
  double beta = 2.0;
  power->add_option("instance", p_in)->required();
  power->add_option("--beta", beta);
  power->add_option("-o,--output", p_out);

  // verify
  auto* verify = app.add_subcommand("verify", "re-run verifiers on a configuration");
  std::string v_inst, v_cfg, v_out = "-";
  std::vector<std::string> v_checks;
  std::size_t v_t = 0;
  verify->add_option("instance", v_inst)->required();
  verify->add_option("config", v_cfg)->required();
  verify->add_option("--check", v_checks, "connected | coverage | stretch | cost_chain")->delimiter(',');
  verify->add_option("--t", v_t, "stretch bound (default from the config mode)");
  verify->add_option("-o,--output", v_out);

  // render
  auto* render = app.add_subcommand("render", "draw a configuration as SVG");
  std::string s_inst, s_cfg, s_out = "-";
  bool no_edges = false;
  render->add_option("instance", s_inst)->required();
  render->add_option("config", s_cfg)->required();
  render->add_option("-o,--output", s_out);
  render->add_flag("--no-edges", no_edges);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (gen->parsed()) {
    const auto fam = parse_family(family);
    if (!fam) throw UsageError("unknown family " + family);
    spec.family = *fam;
    spec.seed = effective_seed(seed);
    if (spec.n == 0) throw UsageError("--n must be positive");
    std::vector<Point> pts;
    try {
      pts = generate(spec);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    write_text_file(gen_out, dump(to_json(InstanceFile{pts, metadata_for(spec)})));
    return kOk;
  }

  if (orient4->parsed()) {
    const auto inst = load_instance(o4_in);
    if (inst.points.size() != 4) throw UsageError("orient4 needs exactly four points");
    const auto assignment = orient_quadruplet(inst.points);
    ConfigFile cfg;
    cfg.mode = "orient4";
    for (const auto& p : inst.points) cfg.antennas.push_back(assignment.entries[*assignment.find(p)].wedge());
    const bool covered = check_coverage(cfg.antennas);
    const bool connected = check_connected(cfg.antennas);
    cfg.extras["summary"] = Json{{"covered", covered}, {"connected", connected}};
    return emit(cfg, o4_out, covered && connected);
  }

  if (repl->parsed()) {
    const auto inst = load_instance(r_in);
    ReplacementResult res;
    try {
      res = replace(inst.points, r_mode == "basic" ? ReplacementMode::kBasic : ReplacementMode::kRefined);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    ConfigFile cfg;
    cfg.mode = mode_name(res.mode);
    cfg.antennas = res.configs;
    const bool connected = check_connected(cfg.antennas);
    const auto stretch = check_stretch(inst.points, cfg.antennas, res.stretch_bound());
    std::size_t full = 0;
    for (const auto& c : res.partition.cells) full += c.status == CellStatus::kFull;
    cfg.extras["summary"] = Json{{"connected", connected},
                                 {"max_stretch", stretch_json(stretch.max_stretch)},
                                 {"stretch_bound", res.stretch_bound()},
                                 {"range", kReplacementRange},
                                 {"full_cells", full},
                                 {"cells", res.partition.cells.size()}};
    cfg.extras["grid"] = Json{{"origin_x", res.partition.grid.origin.x},
                              {"origin_y", res.partition.grid.origin.y},
                              {"side", res.partition.grid.side}};
    return emit(cfg, r_out, connected && stretch.ok);
  }

  if (power->parsed()) {
    const auto inst = load_instance(p_in);
    PowerResult res;
    try {
      res = orient_and_assign(inst.points, beta);
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    ConfigFile cfg;
    cfg.mode = "power";
    cfg.antennas = res.assignment.configs;
    cfg.extras["beta"] = beta;
    const bool connected = check_connected(cfg.antennas);
    Json summary{{"connected", connected},
                 {"cost", res.assignment.cost()},
                 {"mst_cost", mst_cost(inst.points, beta)}};
    summary["ratio_mst"] = summary["cost"].get<double>() / summary["mst_cost"].get<double>();
    bool ok = connected;
    if (res.tour) {
      cfg.extras["tour"] = res.tour->order;
      const auto chain = cost_chain_check(inst.points, res);
      summary["cost_chain"] = chain_json(chain);
      ok = ok && chain.ok();
    }
    cfg.extras["summary"] = summary;
    return emit(cfg, p_out, ok);
  }

  if (verify->parsed()) {
    const auto inst = load_instance(v_inst);
    const auto cfg = load_config(v_cfg);
    if (apexes(cfg.antennas) != inst.points) throw UsageError("config antennas do not match the instance points");
    static const std::set<std::string> known{"connected", "coverage", "stretch", "cost_chain"};
    if (v_checks.empty()) {
      v_checks.push_back("connected");
      if (cfg.mode == "orient4") v_checks.push_back("coverage");
      if (cfg.mode.rfind("replace", 0) == 0) v_checks.push_back("stretch");
      if (cfg.mode == "power" && cfg.extras.contains("tour")) v_checks.push_back("cost_chain");
    }
    for (const auto& c : v_checks)
      if (!known.count(c)) throw UsageError("unknown check " + c);
    Json report = Json::object();
    bool ok = true;
    for (const auto& c : v_checks) {
      if (c == "connected") {
        const bool v = check_connected(cfg.antennas);
        report["connected"] = v;
        ok = ok && v;
      } else if (c == "coverage") {
        const bool v = check_coverage(cfg.antennas);
        report["coverage"] = v;
        ok = ok && v;
      } else if (c == "stretch") {
        const std::size_t t = v_t ? v_t : stretch_bound_for(cfg.mode);
        const auto r = check_stretch(inst.points, cfg.antennas, t);
        report["max_stretch"] = stretch_json(r.max_stretch);
        report["stretch_bound"] = t;
        report["stretch"] = r.ok;
        ok = ok && r.ok;
      } else if (c == "cost_chain") {
        const auto r = check_cost_chain(inst.points, cfg);
        report["cost_chain"] = chain_json(r);
        ok = ok && r.ok();
      }
    }
    report["ok"] = ok;
    write_text_file(v_out, dump(report));
    return ok ? kOk : kVerifyFailed;
  }

  if (render->parsed()) {
    const auto inst = load_instance(s_inst);
    const auto cfg = load_config(s_cfg);
    if (apexes(cfg.antennas) != inst.points) throw UsageError("config antennas do not match the instance points");
    RenderOptions opt;
    if (cfg.extras.contains("grid")) {
      const auto& g = cfg.extras.at("grid");
      opt.grid = RenderGrid{{g.at("origin_x").get<double>(), g.at("origin_y").get<double>()},
                            g.at("side").get<double>()};
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    if (!no_edges) edges = build_scg(cfg.antennas).edges();
    write_text_file(s_out, render_svg(cfg.antennas, edges, opt));
    return kOk;
  }
  return kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
