// Command-line front end: end probes, the chopping pipeline, cubings,
// minimum cuts, and the syntactic pattern checkers over scenario files.
//
// Exit codes: 0 success, 2 capability error, 3 budget error, 1 otherwise.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hsp/chop/report.hpp"
#include "hsp/errors.hpp"
#include "hsp/graph/serialize.hpp"
#include "hsp/scenario/scenario.hpp"
#include "hsp/splitting/window.hpp"

using namespace hsp;

namespace {

struct CommonOpts {
  int inner = -1;
  int radius = -1;
  long long budget = -1;
  bool json = false;
  std::string dot_path;
};

void add_common(CLI::App* cmd, CommonOpts* o) {
  cmd->add_option("-r,--inner", o->inner, "inner probe radius");
  cmd->add_option("-R,--probe", o->radius, "probe/window radius");
  cmd->add_option("--budget", o->budget, "vertex budget");
  cmd->add_flag("--json", o->json, "emit the JSON report");
  cmd->add_option("--dot", o->dot_path, "write DOT output to this path");
}

void apply_common(Scenario& sc, const CommonOpts& o) {
  if (o.inner >= 0) sc.probe_inner = o.inner;
  if (o.radius >= 0) sc.probe_radius = o.radius;
  if (o.budget >= 0) sc.budget = std::size_t(o.budget);
  if (const char* env = std::getenv("HSP_BUDGET"); env && o.budget < 0)
    sc.budget = std::size_t(std::atoll(env));
}

void write_dot(const std::string& path, const std::string& dot) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw invalid_input_error("cannot write DOT file: " + path);
  f << dot;
}

std::string describe(const EndReport& r) {
  std::string s = std::to_string(r.unbounded_count) + " unbounded component" +
                  (r.unbounded_count == 1 ? "" : "s");
  if (r.stable)
    s += " (stable)";
  else if (r.unbounded_count >= 2 && r.prev_unbounded_count >= 2)
    s += " (>= 2 at both probe radii)";
  else
    s += " (unstable: grow the window)";
  return s;
}

int cmd_ends(const std::string& path, const CommonOpts& opts,
             const std::string& side) {
  Scenario sc = load_scenario_file(path);
  apply_common(sc, opts);
  nlohmann::ordered_json out;
  out["schema"] = "ends-report/1";
  out["scenario"] = sc.name;

  if (!sc.splitting) {
    auto rep = end_probe(sc.main_oracle(), "1", sc.probe_inner,
                         sc.probe_radius, sc.budget);
    std::cout << sc.name << ": " << rep.unbounded_count << " end"
              << (rep.unbounded_count == 1 ? "" : "s")
              << (rep.stable ? " (stable)" : " (unstable)") << "\n";
    out["group_probe"] = end_report_to_json(rep);
    if (opts.json) std::cout << out.dump(2) << "\n";
    return 0;
  }

  auto spec = sc.require_splitting();
  auto probe_side = [&](bool far) {
    auto hs = halfspace_window(spec, spec->base_edge(), far, sc.probe_radius,
                               sc.budget);
    auto rep = halfspace_end_probe(hs, sc.probe_inner);
    std::string tag = far ? "far" : "near";
    std::cout << sc.name << " halfspace (" << tag
              << " side): " << describe(rep)
              << (hs.connected ? "" : " [window disconnected]") << "\n";
    nlohmann::ordered_json hj;
    hj["side"] = tag;
    hj["window_vertices"] = hs.window.vertex_count();
    hj["wall_vertices"] = hs.wall.size();
    hj["window_connected"] = hs.connected;
    hj["probe"] = end_report_to_json(rep);
    if (!opts.dot_path.empty()) write_dot(opts.dot_path, ball_to_dot(hs.window));
    return hj;
  };

  auto sides = nlohmann::ordered_json::array();
  if (side.empty() || side == "near" || side == "A" || side == "left" ||
      side == "plus")
    sides.push_back(probe_side(false));
  if (side.empty() || side == "far" || side == "B" || side == "right" ||
      side == "minus")
    sides.push_back(probe_side(true));
  if (sides.empty())
    throw invalid_input_error("unknown --side (use near/far, A/B, left/right)");
  out["halfspaces"] = std::move(sides);
  if (opts.json) std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_chop(const std::string& path, const CommonOpts& opts, int rounds) {
  Scenario sc = load_scenario_file(path);
  apply_common(sc, opts);
  auto spec = sc.require_splitting();
  ChopParams params;
  params.radius = sc.probe_radius;
  params.inner_radius = sc.probe_inner;
  params.budget = sc.budget;
  int max_rounds = rounds > 0 ? rounds : sc.rounds;
  auto report = iterate_chop(spec, max_rounds, params);

  if (report.no_chop_needed) {
    std::cout << sc.name << ": no chop needed (halfspace windows probe "
              << "one-ended)\n";
  } else {
    std::cout << sc.name << ": " << report.rounds_completed
              << " round(s) completed; "
              << (report.terminated
                      ? "final halfspace windows probe one-ended"
                      : "not terminated at this window scale")
              << "\n";
    for (const auto& r : report.rounds) {
      if (!r.chopped) continue;
      std::cout << "  cut |dC| = " << r.cut.cut.boundary_size
                << ", W = " << r.cut.cut.wall_weight << ", "
                << r.p0.translates.size() << " translates, "
                << r.p0.classes.class_count << " classes, T' "
                << (r.tprime.is_tree ? "tree" : "NOT a tree") << " with "
                << r.tprime.tprime.vertices.size() << " vertices\n";
      std::cout << "  checks: (a) " << (r.check_edge_trees ? "pass" : "FAIL")
                << "  (b) " << (r.check_some_nontrivial ? "pass" : "FAIL") << "  (c) "
                << (r.check_edge_map_injective ? "pass" : "FAIL") << "\n";
    }
  }
  for (const auto& s : report.capability_stops)
    std::cout << "  capability stop: " << s << "\n";
  if (opts.json) std::cout << chop_report_to_json(report).dump(2) << "\n";
  write_dot(opts.dot_path, chop_report_tprime_dot(report));
  return 0;
}

int cmd_cube(const std::string& path, const CommonOpts& opts) {
  std::ifstream f(path);
  if (!f) throw invalid_input_error("cannot open pocset file: " + path);
  nlohmann::json j = nlohmann::json::parse(f);
  Pocset p = Pocset::from_json(j);
  auto skel = cube(p);
  std::cout << "cubing: " << skel.vertices.size() << " vertices, "
            << skel.edges.size() << " edges, dimension " << skel.dimension
            << (is_tree_check(skel) ? " (tree)" : " (not a tree)") << "\n";
  if (opts.json) std::cout << skel.to_json(p).dump(2) << "\n";
  write_dot(opts.dot_path, skel.to_dot(p));
  return 0;
}

int cmd_mincut(const std::string& path, const std::string& src,
               const std::string& dst, const CommonOpts& opts) {
  std::ifstream f(path);
  if (!f) throw invalid_input_error("cannot open graph file: " + path);
  BallGraph ball = ball_from_json(nlohmann::json::parse(f));
  auto cut = min_vertex_set_cut(ball, {ball.vertex(src)}, {ball.vertex(dst)});
  std::cout << "min cut: |dC| = " << cut.boundary_size << ", side "
            << cut.side.size() << " vertices\n";
  if (opts.json) std::cout << cut_to_json(ball, cut).dump(2) << "\n";
  return 0;
}

int cmd_check(const std::string& path, const CommonOpts& opts) {
  Scenario sc = load_scenario_file(path);
  apply_common(sc, opts);
  if (!sc.splitting) throw invalid_input_error("scenario has no splitting");
  auto rep = syntactic_checks(*sc.splitting, sc.probe_inner,
                              std::min(sc.probe_radius, 3), sc.budget);
  std::cout << sc.name << ":\n";
  std::cout << "  central-stable-letter pattern: "
            << (rep.hnn_central_match ? "matched" : "not matched") << "\n";
  std::cout << "  double pattern: "
            << (rep.double_match ? "matched" : "not matched") << "\n";
  for (const auto& c : rep.conclusions) std::cout << "  conclusion " << c << "\n";
  for (const auto& nt : rep.notes) std::cout << "  note: " << nt << "\n";
  if (opts.json) std::cout << syntactic_report_to_json(rep).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "halfspaces of group splittings: end probes, minimal cuts, cubings, "
      "and the halfspace chopping pipeline"};
  app.require_subcommand(1);

  std::string scenario_path, side, pocset_path, graph_path, src, dst;
  int rounds = 0;
  CommonOpts ends_opts, chop_opts, cube_opts, mincut_opts, check_opts;

  auto* ends = app.add_subcommand("ends", "end probe of a scenario");
  ends->add_option("scenario", scenario_path)->required();
  ends->add_option("--side", side, "halfspace side: near/far (A/B)");
  add_common(ends, &ends_opts);

  auto* chop = app.add_subcommand("chop", "run the chopping pipeline");
  chop->add_option("scenario", scenario_path)->required();
  chop->add_option("--rounds", rounds, "maximum rounds");
  add_common(chop, &chop_opts);

  auto* cube_cmd = app.add_subcommand("cube", "cube a pocset JSON file");
  cube_cmd->add_option("pocset", pocset_path)->required();
  add_common(cube_cmd, &cube_opts);

  auto* mincut = app.add_subcommand("mincut", "minimum cut in a graph JSON");
  mincut->add_option("graph", graph_path)->required();
  mincut->add_option("source", src)->required();
  mincut->add_option("sink", dst)->required();
  add_common(mincut, &mincut_opts);

  auto* check = app.add_subcommand("check", "syntactic pattern checks");
  check->add_option("scenario", scenario_path)->required();
  add_common(check, &check_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (ends->parsed()) return cmd_ends(scenario_path, ends_opts, side);
    if (chop->parsed()) return cmd_chop(scenario_path, chop_opts, rounds);
    if (cube_cmd->parsed()) return cmd_cube(pocset_path, cube_opts);
    if (mincut->parsed())
      return cmd_mincut(graph_path, src, dst, mincut_opts);
    if (check->parsed()) return cmd_check(scenario_path, check_opts);
  } catch (const capability_error& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return 2;
  } catch (const budget_error& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
