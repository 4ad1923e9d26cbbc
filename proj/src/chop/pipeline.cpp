#include "hsp/chop/pipeline.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "hsp/errors.hpp"

namespace hsp {

ChopInput chop_input_from_window(const TreeOfSpacesWindow& X, bool far_side) {
  ChopInput in;
  in.graph = X.graph;
  in.edge_in_wall = X.edge_in_wall;
  in.h0 = X.base_halfspace(far_side);
  in.wall = X.wall_fibers[X.base_wall_index()];
  in.probe_radius = X.radius;
  return in;
}

namespace {

// Fill translation tables for the wall-stabilizer elements over a support
// set only (full tables would cost |wall| * |window| normalizations).
void build_wall_action(const TreeOfSpacesWindow& X, ChopInput& in,
                       const std::vector<VertexId>& support) {
  in.wall_action.clear();
  const std::size_t n = X.graph.vertex_count();
  for (VertexId m : in.wall) {
    const std::string& lab = X.element[m];
    GNormalForm gamma = X.spec->lookup(lab);
    Translation tr;
    tr.label = lab;
    tr.image.assign(n, Translation::kNowhere);
    for (VertexId v : support) {
      VertexId out;
      if (X.translate(gamma, v, &out)) tr.image[v] = out;
    }
    in.wall_action.push_back(std::move(tr));
  }
}

void extend_wall_action(const TreeOfSpacesWindow& X, ChopInput& in,
                        const std::vector<VertexId>& more) {
  for (auto& tr : in.wall_action) {
    GNormalForm gamma = X.spec->lookup(tr.label);
    for (VertexId v : more) {
      if (tr.image[v] != Translation::kNowhere) continue;
      VertexId out;
      if (X.translate(gamma, v, &out)) tr.image[v] = out;
    }
  }
}

int tree_distance_of_coset(const Splitting& spec, const std::string& coset) {
  if (coset == "1") return 0;
  GNormalForm g = spec.element_of_label(coset);
  if (spec.is_amalgam())
    return int(std::get<AmalgamNF>(g.form).syls.size());
  return int(std::get<HnnNF>(g.form).blocks.size());
}

}  // namespace

std::vector<WallData> wall_data_from_window(const TreeOfSpacesWindow& X,
                                            bool far_side, const P0Result& p0,
                                            const ChopInput& in,
                                            const ChopParams& params) {
  const auto& spec = X.spec;
  const std::size_t n = X.graph.vertex_count();

  // rank the visible walls by tree distance, cap the selection
  std::vector<std::pair<int, std::size_t>> ranked;
  for (std::size_t w = 0; w < X.wall_ids.size(); ++w) {
    std::string coset = X.wall_ids[w].substr(2);  // drop "e|"
    int dist = tree_distance_of_coset(*spec, coset);
    if (dist > params.wall_tree_radius) continue;
    ranked.push_back({dist, w});
  }
  std::sort(ranked.begin(), ranked.end(), [&](auto& a, auto& b) {
    return std::tie(a.first, X.wall_ids[a.second]) <
           std::tie(b.first, X.wall_ids[b.second]);
  });
  if (ranked.size() > params.max_walls) ranked.resize(params.max_walls);

  std::vector<WallData> walls;
  for (auto [dist, w] : ranked) {
    (void)dist;
    std::string coset = X.wall_ids[w].substr(2);
    WallData wd;
    wd.id = coset;
    wd.in_base_orbit = true;
    wd.side_support.assign(n, 0);
    wd.wall_vertices.assign(n, 0);
    for (VertexId v : X.wall_fibers[w]) wd.wall_vertices[v] = 1;

    GNormalForm gw = spec->element_of_label(coset);
    GNormalForm gw_inv = spec->inverse_nf(gw);
    // memoized translated side test per underlying element label
    std::map<std::string, GNormalForm> moved;
    auto local_of = [&](const std::string& elem) -> const GNormalForm& {
      auto it = moved.find(elem);
      if (it == moved.end())
        it = moved
                 .emplace(elem, spec->mult(gw_inv, spec->lookup(elem)))
                 .first;
      return it->second;
    };
    GMul tplus{GMul::Tag::stable, Element{}, +1, "t"};
    auto vertex_far = [&](const GNormalForm& local, bool b_side) {
      TreeVertex tv = b_side ? spec->project_b(local) : spec->project(local);
      return spec->base_far_side(tv);
    };
    for (VertexId v = 0; v < n; ++v) {
      const GNormalForm& local = local_of(X.element[v]);
      if (X.kind[v] == TreeOfSpacesWindow::VertexKind::midpoint) {
        if (wd.wall_vertices[v]) {
          wd.side_support[v] = 1;  // the wall lies in both closed sides
          continue;
        }
        bool near_ok, far_ok;
        if (spec->is_amalgam()) {
          near_ok = vertex_far(local, false) == far_side;
          far_ok = vertex_far(local, true) == far_side;
        } else {
          near_ok = vertex_far(local, false) == far_side;
          far_ok = vertex_far(spec->mult(local, tplus), false) == far_side;
        }
        wd.side_support[v] = near_ok && far_ok;
      } else {
        bool b_side = X.kind[v] == TreeOfSpacesWindow::VertexKind::layer_b;
        wd.side_support[v] = vertex_far(local, b_side) == far_side;
      }
    }

    // translated class map of the base cut
    wd.class_of.assign(n, -1);
    wd.class_count = p0.classes.class_count;
    for (VertexId v = 0; v < n; ++v) {
      if (coset == "1") {
        wd.class_of[v] = p0.classes.class_of[v];
        continue;
      }
      VertexId pre;
      if (X.translate(gw_inv, v, &pre))
        wd.class_of[v] = p0.classes.class_of[pre];
    }
    // deep classes for this wall: meet the frontier off the wall's
    // 1-neighborhood
    std::vector<char> near_wall(n, 0);
    for (VertexId v : X.wall_fibers[w]) {
      near_wall[v] = 1;
      for (const auto& [u, mlt] : X.graph.neighbors(v)) {
        (void)mlt;
        near_wall[u] = 1;
      }
    }
    wd.deep.assign(std::size_t(wd.class_count), 0);
    for (VertexId v = 0; v < n; ++v)
      if (wd.class_of[v] >= 0 && X.graph.is_frontier(v) && !near_wall[v])
        wd.deep[std::size_t(wd.class_of[v])] = 1;

    // a wall whose far side is barely visible carries no usable splitting
    // data at this window scale; keep the base wall regardless
    if (coset != "1") {
      std::size_t pos = 0, neg = 0;
      for (VertexId v = 0; v < n; ++v) {
        if (X.kind[v] == TreeOfSpacesWindow::VertexKind::midpoint) continue;
        if (wd.wall_vertices[v]) continue;
        (wd.side_support[v] ? pos : neg)++;
      }
      if (pos < 3 || neg < 3) continue;
    }
    walls.push_back(std::move(wd));
  }
  (void)in;
  (void)far_side;
  return walls;
}

namespace {

std::vector<VertexId> delta_endpoints(const HalfspaceCut& hc) {
  std::vector<VertexId> out;
  for (const auto& e : hc.cut.boundary) {
    out.push_back(e.u);
    out.push_back(e.v);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

ChopReport iterate_chop(const SplittingPtr& spec, int max_rounds,
                        const ChopParams& params) {
  if (max_rounds < 1)
    throw invalid_input_error("iterate_chop: maxRounds must be >= 1");
  spec->require_nontrivial();

  ChopReport report;
  report.scenario = spec->name();
  report.radius = params.radius;

  auto X = tree_of_spaces(spec, params.radius, params.budget);
  ChopInput near_in = chop_input_from_window(X, false);
  ChopInput far_in = chop_input_from_window(X, true);

  RoundReport round;
  round.near_probe = chop_end_probe(near_in, params.inner_radius);
  round.far_probe = chop_end_probe(far_in, params.inner_radius);

  if (round.near_probe.unbounded_count <= 1 &&
      round.far_probe.unbounded_count <= 1) {
    report.no_chop_needed = true;
    report.terminated = true;
    round.regions_one_ended = true;
    report.rounds.push_back(std::move(round));
    return report;
  }

  round.chose_far =
      round.far_probe.unbounded_count > round.near_probe.unbounded_count;
  ChopInput& in = round.chose_far ? far_in : near_in;

  auto hc = find_halfspace_cut(in, params.inner_radius);
  if (!hc) {
    report.capability_stops.push_back(
        "multi-ended probe but no separating cut at this window scale");
    report.rounds.push_back(std::move(round));
    return report;
  }
  round.cut = *hc;
  round.chopped = true;

  if (params.apply_multiedge) {
    // multi-edge modification with n = N + 1; the (W, |dC|) ranking already
    // realizes its conclusion, so re-finding the cut must agree
    round.multiedge_n = round.cut.cut.boundary_size + 1;
    ChopInput modified = in;
    multiedge_modify(modified, round.multiedge_n);
    auto hc2 = find_halfspace_cut(modified, params.inner_radius);
    if (hc2 && hc2->cut.side != round.cut.cut.side)
      round.notes.push_back(
          "multi-edge modification selected a different W-minimal side");
  }

  // wall action tables over the cut boundary, then over the translates
  auto support = delta_endpoints(*hc);
  build_wall_action(X, in, support);
  round.p0 = build_p0_t0(in, *hc);
  if (round.p0.nested) {
    std::vector<VertexId> more;
    for (const auto& ct : round.p0.translates)
      for (const auto& e : ct.edges) {
        more.push_back(e.u);
        more.push_back(e.v);
      }
    std::sort(more.begin(), more.end());
    more.erase(std::unique(more.begin(), more.end()), more.end());
    extend_wall_action(X, in, more);
    round.p0 = build_p0_t0(in, *hc);
  }

  if (!round.p0.nested || !round.p0.t0_is_tree) {
    report.capability_stops.push_back(
        "no Kron-nested candidate cut at this window scale");
    report.rounds.push_back(std::move(round));
    return report;
  }

  auto walls =
      wall_data_from_window(X, round.chose_far, round.p0, in, params);
  round.p = build_p_order(walls);
  if (round.p.axioms_ok && round.p.no_transverse)
    round.tprime = cube_to_tprime(walls, round.p);
  else
    report.capability_stops.push_back(
        "P window failed the pocset checks; see violations");

  round.check_edge_trees = round.p0.t0_is_tree && round.p0.t0.vertices.size() >= 2;
  round.check_some_nontrivial = round.check_edge_trees && round.p0.translation_witness.has_value();
  round.check_edge_map_injective = round.tprime.tau_injective;

  // W-minimal cut sanity: visible sub-halfspaces of h0 stay on one side of
  // the cut; a split one leaves at most one frontier-reaching piece
  {
    const std::size_t n = X.graph.vertex_count();
    std::vector<char> h0_mask(n, 0), side_mask(n, 0);
    for (VertexId v : in.h0) h0_mask[v] = 1;
    for (VertexId v : round.cut.cut.side) side_mask[v] = 1;
    std::set<std::pair<VertexId, VertexId>> blocked;
    for (const auto& e : round.cut.cut.boundary) {
      blocked.insert({e.u, e.v});
      blocked.insert({e.v, e.u});
    }
    for (const auto& wd : walls) {
      if (wd.id == "1") continue;
      for (bool positive : {true, false}) {
        std::vector<VertexId> sup;
        bool inside = true;
        for (VertexId v = 0; v < n; ++v) {
          bool in_sup = positive ? bool(wd.side_support[v])
                                 : (!wd.side_support[v] || wd.wall_vertices[v]);
          if (!in_sup) continue;
          if (!h0_mask[v]) {
            inside = false;
            break;
          }
          sup.push_back(v);
        }
        if (!inside || sup.empty() || sup.size() == in.h0.size()) continue;
        bool has_in = false, has_out = false;
        for (VertexId v : sup) (side_mask[v] ? has_in : has_out) = true;
        if (has_in && has_out) {
          round.subhalfspaces_one_side = false;
          // components of the split sub-halfspace, not crossing the cut
          std::vector<char> seen(n, 0);
          int deep_pieces = 0;
          for (VertexId s : sup) {
            if (seen[s]) continue;
            std::deque<VertexId> q = {s};
            seen[s] = 1;
            bool deep = false;
            std::vector<char> in_sup_mask(n, 0);
            for (VertexId v : sup) in_sup_mask[v] = 1;
            while (!q.empty()) {
              VertexId v = q.front();
              q.pop_front();
              if (X.graph.is_frontier(v)) deep = true;
              for (const auto& [w2, m2] : X.graph.neighbors(v)) {
                (void)m2;
                if (!in_sup_mask[w2] || seen[w2]) continue;
                if (blocked.count({v, w2})) continue;
                seen[w2] = 1;
                q.push_back(w2);
              }
            }
            if (deep) ++deep_pieces;
          }
          if (deep_pieces > 1) round.split_subhalfspaces_one_deep = false;
        }
      }
    }
  }

  // the wall action permutes the stored translates compatibly with their
  // side labelings (sampled); this is the window-visible content of the
  // equivariance of lambda
  {
    auto edge_key = [](std::vector<std::pair<VertexId, VertexId>> es) {
      for (auto& e : es)
        if (e.first > e.second) std::swap(e.first, e.second);
      std::sort(es.begin(), es.end());
      return es;
    };
    std::map<std::vector<std::pair<VertexId, VertexId>>, std::size_t> index;
    for (std::size_t i = 0; i < round.p0.translates.size(); ++i) {
      std::vector<std::pair<VertexId, VertexId>> es;
      for (const auto& e : round.p0.translates[i].edges)
        es.push_back({e.u, e.v});
      index[edge_key(es)] = i;
    }
    std::size_t sampled = 0;
    for (const auto& tr : in.wall_action) {
      if (sampled >= 100 || !round.class_fibers_equivariant) break;
      ++sampled;
      GNormalForm gamma = X.spec->lookup(tr.label);
      for (std::size_t i = 0;
           i < round.p0.translates.size() && round.class_fibers_equivariant;
           ++i) {
        std::vector<std::pair<VertexId, VertexId>> moved;
        bool visible = true;
        for (const auto& e : round.p0.translates[i].edges) {
          VertexId mu = tr.image[e.u], mv = tr.image[e.v];
          if (mu == Translation::kNowhere || mv == Translation::kNowhere) {
            visible = false;
            break;
          }
          moved.push_back({mu, mv});
        }
        if (!visible) continue;
        auto it = index.find(edge_key(std::move(moved)));
        if (it == index.end()) continue;  // image translate not stored
        std::size_t j = it->second;
        // side labelings must transport, up to one consistent orientation
        // flip: side_j(gamma v) == +-side_i(v)
        int orient = 0;  // 0 unknown, +1 same, -1 flipped
        int checked = 0;
        for (VertexId v = 0;
             v < X.graph.vertex_count() && checked < 50; ++v) {
          int si = round.p0.translates[i].side[v];
          if (si < 0) continue;
          VertexId out;
          if (!X.translate(gamma, v, &out)) continue;
          int sj = round.p0.translates[j].side[out];
          if (sj < 0) continue;
          ++checked;
          int rel = (si == sj) ? +1 : -1;
          if (orient == 0)
            orient = rel;
          else if (orient != rel)
            round.class_fibers_equivariant = false;
        }
      }
    }
  }

  // hyperbolic witness: a vertex-group element outside the edge group
  {
    GroupPtr vg = round.chose_far && spec->is_amalgam()
                      ? spec->vertex_group_b()
                      : spec->vertex_group_a();
    const EnginePtr& eng = round.chose_far && spec->is_amalgam()
                               ? spec->engine_b()
                               : spec->engine_a();
    for (std::size_t i = 0; i < vg->ngens(); ++i) {
      if (!eng->contains(vg->generator(i))) {
        round.hyperbolic_witness =
            print_element(vg->generator(i)) +
            " lies in the vertex group but not the edge group";
        break;
      }
    }
  }

  // final probes: the T'-halfspace regions (deep classes and complements)
  round.regions_one_ended = true;
  for (int c = 0; c < round.p0.classes.class_count; ++c) {
    if (!round.p0.classes.deep[std::size_t(c)]) continue;
    std::vector<VertexId> region, corgion;
    for (VertexId v = 0; v < X.graph.vertex_count(); ++v) {
      if (round.p0.classes.class_of[v] == c)
        region.push_back(v);
      else
        corgion.push_back(v);
    }
    auto pr = end_probe_on_ball(X.graph, params.inner_radius,
                                params.radius, region);
    auto pc = end_probe_on_ball(X.graph, params.inner_radius,
                                params.radius, corgion);
    if (pr.unbounded_count > 1 || pc.unbounded_count > 1)
      round.regions_one_ended = false;
    round.region_probes.push_back(pr);
    round.region_probes.push_back(pc);
  }

  report.rounds_completed = 1;
  report.terminated = round.regions_one_ended;
  if (!report.terminated && max_rounds > 1)
    report.capability_stops.push_back(
        "a further round needs edge-group extraction outside the supported "
        "engine classes");
  report.rounds.push_back(std::move(round));
  return report;
}

}  // namespace hsp
