#include "hsp/chop/report.hpp"

#include "hsp/graph/serialize.hpp"

namespace hsp {

using ordered = nlohmann::ordered_json;

namespace {

ordered cut_json(const HalfspaceCut& hc) {
  ordered j;
  j["boundary_size"] = hc.cut.boundary_size;
  j["wall_weight"] = hc.cut.wall_weight;
  j["side_size"] = hc.cut.side.size();
  j["wall_edge_in_boundary"] = hc.wall_edge_in_boundary;
  j["wall_sides_reach_frontier"] = hc.wall_sides_reach_frontier;
  j["anomalies"] = hc.anomalies;
  return j;
}

ordered skeleton_json(const CubeComplexSkeleton& s) {
  ordered j;
  j["vertices"] = s.vertices.size();
  j["edges"] = s.edges.size();
  j["dimension"] = s.dimension;
  j["window"] = s.window;
  return j;
}

ordered round_json(const RoundReport& r) {
  ordered j;
  j["near_probe"] = end_report_to_json(r.near_probe);
  j["far_probe"] = end_report_to_json(r.far_probe);
  j["chopped"] = r.chopped;
  if (r.chopped) {
    j["chose_far_side"] = r.chose_far;
    j["cut"] = cut_json(r.cut);
    j["multiedge_n"] = r.multiedge_n;
    ordered p0;
    p0["translates"] = r.p0.translates.size();
    p0["kron_nested"] = r.p0.nested;
    p0["t0"] = skeleton_json(r.p0.t0);
    p0["t0_is_tree"] = r.p0.t0_is_tree;
    p0["classes"] = r.p0.classes.class_count;
    int deep = 0;
    for (char d : r.p0.classes.deep) deep += d;
    p0["deep_classes"] = deep;
    p0["translation_witness"] =
        r.p0.translation_witness ? *r.p0.translation_witness : "";
    p0["translate_stabilizer_sizes"] = r.p0.translate_stabilizer_sizes;
    p0["notes"] = r.p0.notes;
    j["p0"] = std::move(p0);
    ordered p;
    p["pairs"] = r.p.element_of_pair.size();
    p["axioms_ok"] = r.p.axioms_ok;
    p["no_transverse_pairs"] = r.p.no_transverse;
    p["exactly_one_row"] = r.p.one_row_ok;
    p["violations"] = r.p.violations;
    j["p_window"] = std::move(p);
    ordered t;
    t["tprime"] = skeleton_json(r.tprime.tprime);
    t["is_tree"] = r.tprime.is_tree;
    t["tau_injective"] = r.tprime.tau_injective;
    t["phi_complete"] = r.tprime.phi_complete;
    t["phi_consistent"] = r.tprime.phi_consistent;
    j["tprime"] = std::move(t);
    ordered props;
    props["every_edge_tree_trivial_or_finite_split"] = r.check_edge_trees;
    props["some_edge_tree_nontrivial"] = r.check_some_nontrivial;
    props["edge_map_injective"] = r.check_edge_map_injective;
    props["hyperbolic_witness"] =
        r.hyperbolic_witness ? *r.hyperbolic_witness : "";
    props["subhalfspaces_on_one_side"] = r.subhalfspaces_one_side;
    props["split_subhalfspaces_one_deep_piece"] =
        r.split_subhalfspaces_one_deep;
    props["class_fibers_equivariant"] = r.class_fibers_equivariant;
    j["splitting_checks"] = std::move(props);
    auto probes = nlohmann::json::array();
    for (const auto& pr : r.region_probes)
      probes.push_back(end_report_to_json(pr));
    j["region_probes"] = std::move(probes);
    j["regions_one_ended"] = r.regions_one_ended;
  }
  j["notes"] = r.notes;
  return j;
}

}  // namespace

nlohmann::json chop_report_to_json(const ChopReport& report) {
  ordered j;
  j["schema"] = "chop/1";
  j["scenario"] = report.scenario;
  j["window_radius"] = report.radius;
  j["no_chop_needed"] = report.no_chop_needed;
  j["rounds_completed"] = report.rounds_completed;
  j["terminated"] = report.terminated;
  auto rounds = ordered::array();
  for (const auto& r : report.rounds) rounds.push_back(round_json(r));
  j["rounds"] = std::move(rounds);
  j["capability_stops"] = report.capability_stops;
  return j;
}

std::string chop_report_tprime_dot(const ChopReport& report) {
  for (auto it = report.rounds.rbegin(); it != report.rounds.rend(); ++it)
    if (it->chopped && it->tprime.is_tree) {
      Pocset dummy({});
      return it->tprime.tprime.to_dot(dummy);
    }
  return "";
}

}  // namespace hsp
