#include "hsp/chop/chop.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "hsp/errors.hpp"

namespace hsp {

namespace {

std::vector<char> to_mask(std::size_t n, const std::vector<VertexId>& verts) {
  std::vector<char> m(n, 0);
  for (VertexId v : verts) m[v] = 1;
  return m;
}

}  // namespace

EndReport chop_end_probe(const ChopInput& in, int inner_radius) {
  return end_probe_on_ball(in.graph, inner_radius, in.probe_radius, in.h0);
}

std::optional<HalfspaceCut> find_halfspace_cut(const ChopInput& in,
                                               int inner_radius) {
  EndReport probe = chop_end_probe(in, inner_radius);
  if (probe.unbounded_count < 2) return std::nullopt;

  // unbounded components of h0 minus the inner ball
  std::vector<VertexId> outer;
  for (VertexId v : in.h0)
    if (in.graph.depth(v) > inner_radius) outer.push_back(v);
  int ncomp = 0;
  auto comp = induced_components(in.graph, outer, &ncomp);
  std::vector<std::vector<VertexId>> groups(ncomp);
  std::vector<char> unbounded(ncomp, 0);
  for (std::size_t i = 0; i < outer.size(); ++i) {
    groups[comp[i]].push_back(outer[i]);
    if (in.graph.is_frontier(outer[i])) unbounded[comp[i]] = 1;
  }

  // the cut lives inside the halfspace window
  BallGraph hgraph = induce_subgraph(in.graph, in.h0);
  std::map<std::string, VertexId> hindex;
  for (VertexId v = 0; v < hgraph.vertex_count(); ++v)
    hindex[hgraph.label(v)] = v;
  std::vector<char> wall_mask(in.graph.vertex_count(), 0);
  for (VertexId v : in.wall) wall_mask[v] = 1;
  auto wall_edge = [&](VertexId u, VertexId v) {
    // an induced edge is a wall edge iff it was one in the ambient window
    VertexId au = in.graph.vertex(hgraph.label(u));
    VertexId av = in.graph.vertex(hgraph.label(v));
    for (std::size_t e = 0; e < in.graph.edges().size(); ++e) {
      const auto& ed = in.graph.edges()[e];
      if ((ed.u == au && ed.v == av) || (ed.u == av && ed.v == au))
        return bool(in.edge_in_wall[e]);
    }
    return false;
  };

  std::optional<Cut> best;
  for (int i = 0; i < ncomp; ++i) {
    if (!unbounded[i]) continue;
    for (int j = i + 1; j < ncomp; ++j) {
      if (!unbounded[j]) continue;
      std::vector<VertexId> src, dst;
      for (VertexId v : groups[i]) src.push_back(hindex.at(in.graph.label(v)));
      for (VertexId v : groups[j]) dst.push_back(hindex.at(in.graph.label(v)));
      Cut cut;
      try {
        cut = min_vertex_set_cut(hgraph, src, dst, wall_edge);
      } catch (const disconnected_input_error&) {
        continue;
      }
      if (!best || std::tie(cut.wall_weight, cut.boundary_size) <
                       std::tie(best->wall_weight, best->boundary_size)) {
        best = cut;
      }
    }
  }
  if (!best) return std::nullopt;

  HalfspaceCut hc;
  // translate side ids back into ambient window ids
  Cut ambient;
  for (VertexId v : best->side)
    ambient.side.push_back(in.graph.vertex(hgraph.label(v)));
  std::sort(ambient.side.begin(), ambient.side.end());
  // recompute boundary within the halfspace subgraph, in ambient ids
  std::vector<char> in_side = to_mask(in.graph.vertex_count(), ambient.side);
  std::vector<char> in_h0 = to_mask(in.graph.vertex_count(), in.h0);
  for (std::size_t e = 0; e < in.graph.edges().size(); ++e) {
    const auto& ed = in.graph.edges()[e];
    if (!in_h0[ed.u] || !in_h0[ed.v]) continue;
    if (in_side[ed.u] != in_side[ed.v]) {
      ambient.boundary.push_back(ed);
      ambient.boundary_size += ed.mult;
      if (in.edge_in_wall[e]) ambient.wall_weight += ed.mult;
    }
  }
  hc.cut = std::move(ambient);

  // finite-window cut sanity: the boundary must meet the wall and both
  // wall sides must reach the frontier
  hc.wall_edge_in_boundary = hc.cut.wall_weight > 0;
  bool side_wall_deep = false, coside_wall_deep = false;
  for (VertexId v : in.wall) {
    if (!in.graph.is_frontier(v)) continue;
    (in_side[v] ? side_wall_deep : coside_wall_deep) = true;
  }
  hc.wall_sides_reach_frontier = side_wall_deep && coside_wall_deep;
  if (!hc.wall_edge_in_boundary)
    hc.anomalies.push_back(
        "cut anomaly: no wall edge in the cut boundary (window too small)");
  if (!hc.wall_sides_reach_frontier)
    hc.anomalies.push_back(
        "cut anomaly: a wall side stays away from the frontier");
  return hc;
}

void multiedge_modify(ChopInput& in, std::int64_t n) {
  if (n < 1) throw invalid_input_error("multiedge_modify needs n >= 1");
  if (n == 1) return;
  auto& edges = in.graph.mutable_edges();
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (in.edge_in_wall[e]) edges[e].mult *= n;
}

Cut multiedge_adjust(const ChopInput& in, const Cut& cut, std::int64_t n) {
  Cut out = cut;
  std::vector<char> wall_mask(in.graph.vertex_count(), 0);
  out.boundary_size = 0;
  out.wall_weight = 0;
  for (auto& e : out.boundary) {
    bool wall = false;
    for (std::size_t i = 0; i < in.graph.edges().size(); ++i) {
      const auto& ed = in.graph.edges()[i];
      if (ed.u == e.u && ed.v == e.v) {
        wall = bool(in.edge_in_wall[i]);
        break;
      }
    }
    if (wall) {
      e.mult *= n;
      out.wall_weight += e.mult;
    }
    out.boundary_size += e.mult;
  }
  (void)wall_mask;
  return out;
}

P0Result build_p0_t0(const ChopInput& in, const HalfspaceCut& hc) {
  P0Result res;
  const std::size_t n = in.graph.vertex_count();
  std::vector<char> in_h0 = to_mask(n, in.h0);
  std::vector<char> in_side = to_mask(n, hc.cut.side);

  // ordered boundary endpoints: (inside, outside) per boundary edge
  std::vector<std::pair<VertexId, VertexId>> delta;
  for (const auto& e : hc.cut.boundary)
    delta.push_back(in_side[e.u] ? std::make_pair(e.u, e.v)
                                 : std::make_pair(e.v, e.u));

  // adjacency restricted to h0, with boundary-edge removal on demand
  std::vector<std::vector<VertexId>> adj(n);
  for (const auto& e : in.graph.edges()) {
    if (!in_h0[e.u] || !in_h0[e.v]) continue;
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }

  auto side_label = [&](const std::vector<std::pair<VertexId, VertexId>>& cut_edges)
      -> std::pair<std::vector<int>, std::size_t> {
    std::set<std::pair<VertexId, VertexId>> blocked;
    for (auto [a, b] : cut_edges) {
      blocked.insert({a, b});
      blocked.insert({b, a});
    }
    std::vector<int> side(n, -1);
    auto sweep = [&](const std::vector<VertexId>& seeds, int tag) {
      std::deque<VertexId> q;
      for (VertexId s : seeds)
        if (in_h0[s] && side[s] < 0) {
          side[s] = tag;
          q.push_back(s);
        }
      while (!q.empty()) {
        VertexId v = q.front();
        q.pop_front();
        for (VertexId w : adj[v]) {
          if (!in_h0[w] || side[w] >= 0) continue;
          if (blocked.count({v, w})) continue;
          side[w] = tag;
          q.push_back(w);
        }
      }
    };
    std::vector<VertexId> seeds_in, seeds_out;
    for (auto [a, b] : cut_edges) {
      seeds_in.push_back(a);
      seeds_out.push_back(b);
    }
    sweep(seeds_in, 1);
    // collision check: an out-seed already reached from the in side means
    // the translate is not a 2-sided cut at this window scale
    for (VertexId s : seeds_out)
      if (side[s] == 1) return {std::vector<int>(), std::size_t(0)};
    sweep(seeds_out, 0);
    std::size_t unknown = 0;
    for (VertexId v = 0; v < n; ++v)
      if (in_h0[v] && side[v] < 0) ++unknown;
    return {std::move(side), unknown};
  };

  // collect translates of delta under the wall action (identity included)
  std::set<std::vector<std::pair<VertexId, VertexId>>> seen_edges;
  for (const auto& tr : in.wall_action) {
    std::vector<std::pair<VertexId, VertexId>> moved;
    bool visible = true;
    for (auto [a, b] : delta) {
      VertexId ma = tr.image[a], mb = tr.image[b];
      if (ma == Translation::kNowhere || mb == Translation::kNowhere) {
        visible = false;
        break;
      }
      moved.push_back({ma, mb});
    }
    if (!visible) continue;
    auto canon = moved;
    for (auto& pr : canon)
      if (pr.first > pr.second) std::swap(pr.first, pr.second);
    std::sort(canon.begin(), canon.end());
    if (!seen_edges.insert(canon).second) continue;
    auto [side, unknown] = side_label(moved);
    if (side.empty()) {
      res.notes.push_back("translate " + tr.label +
                          " is not 2-sided at this window scale; dropped");
      continue;
    }
    CutTranslate ct;
    ct.label = tr.label;
    for (auto [a, b] : moved) {
      WeightedEdge e{std::min(a, b), std::max(a, b), 1};
      ct.edges.push_back(e);
    }
    std::sort(ct.edges.begin(), ct.edges.end(),
              [](const WeightedEdge& x, const WeightedEdge& y) {
                return std::tie(x.u, x.v) < std::tie(y.u, y.v);
              });
    ct.side = std::move(side);
    ct.unknown_count = unknown;
    res.translates.push_back(std::move(ct));
  }
  // dedup by the induced side labeling as well (window may blur translates)
  {
    std::set<std::vector<int>> seen_sides;
    std::vector<CutTranslate> keep;
    for (auto& ct : res.translates)
      if (seen_sides.insert(ct.side).second) keep.push_back(std::move(ct));
    res.translates = std::move(keep);
  }

  const std::size_t k = res.translates.size();
  // pairwise nestedness (Kron's criterion at window scale)
  res.nested = true;
  for (std::size_t i = 0; i < k && res.nested; ++i)
    for (std::size_t j = i + 1; j < k && res.nested; ++j) {
      bool corner[2][2] = {{false, false}, {false, false}};
      for (VertexId v = 0; v < n; ++v) {
        int a = res.translates[i].side[v];
        int b = res.translates[j].side[v];
        if (a < 0 || b < 0) continue;
        corner[a][b] = true;
      }
      if (corner[0][0] && corner[0][1] && corner[1][0] && corner[1][1])
        res.nested = false;
    }
  if (!res.nested) return res;

  // window pocset P0: inclusion order on classified side sets
  std::vector<std::string> names;
  for (const auto& ct : res.translates) names.push_back(ct.label + "C");
  Pocset p0(names);
  p0.set_window_mode(true);
  auto leq_sets = [&](std::size_t i, int si, std::size_t j, int sj) {
    // side si of translate i contained in side sj of translate j (on the
    // vertices classified by both)
    for (VertexId v = 0; v < n; ++v) {
      int a = res.translates[i].side[v];
      int b = res.translates[j].side[v];
      if (a < 0 || b < 0) continue;
      if (a == si && b != sj) return false;
    }
    return true;
  };
  auto strictly = [&](std::size_t i, int si, std::size_t j, int sj) {
    bool proper = false;
    for (VertexId v = 0; v < n; ++v) {
      int a = res.translates[i].side[v];
      int b = res.translates[j].side[v];
      if (a < 0 || b < 0) continue;
      if (b == sj && a != si) proper = true;
    }
    return proper;
  };
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      for (int si : {1, 0})
        for (int sj : {1, 0}) {
          if (leq_sets(i, si, j, sj) && strictly(i, si, j, sj)) {
            std::size_t a = 2 * i + (si == 1 ? 0 : 1);
            std::size_t b = 2 * j + (sj == 1 ? 0 : 1);
            p0.add_less(a, b);
          }
        }
    }
  p0.finalize();
  res.p0 = p0;
  res.t0 = cube(p0);
  res.t0_is_tree = is_tree_check(res.t0);

  // lambda classes: signature of side bits per fully classified vertex
  res.classes.class_of.assign(n, -1);
  std::map<std::vector<char>, int> sig_ids;
  for (VertexId v = 0; v < n; ++v) {
    if (!in_h0[v]) continue;
    std::vector<char> sig(k);
    bool full = true;
    for (std::size_t i = 0; i < k; ++i) {
      int s = res.translates[i].side[v];
      if (s < 0) {
        full = false;
        break;
      }
      sig[i] = char(s);
    }
    if (!full) continue;
    auto [it, fresh] = sig_ids.emplace(sig, int(sig_ids.size()));
    if (fresh) res.classes.signature.push_back(sig);
    res.classes.class_of[v] = it->second;
  }
  res.classes.class_count = int(sig_ids.size());

  // deep classes: meet the frontier outside the wall's 1-neighborhood
  std::vector<char> near_wall(n, 0);
  for (VertexId v : in.wall) {
    near_wall[v] = 1;
    for (const auto& [w, m] : in.graph.neighbors(v)) {
      (void)m;
      near_wall[w] = 1;
    }
  }
  res.classes.deep.assign(res.classes.class_count, 0);
  for (VertexId v = 0; v < n; ++v)
    if (res.classes.class_of[v] >= 0 && in.graph.is_frontier(v) &&
        !near_wall[v])
      res.classes.deep[res.classes.class_of[v]] = 1;

  // lambda image: the ultrafilter choosing, per translate, the side that
  // contains the class
  res.lambda_vertex.assign(res.classes.class_count, -1);
  for (int c = 0; c < res.classes.class_count; ++c) {
    Ultrafilter uf;
    for (std::size_t i = 0; i < k; ++i)
      uf.chosen.push_back(
          std::uint32_t(2 * i + (res.classes.signature[c][i] ? 0 : 1)));
    for (std::size_t t = 0; t < res.t0.vertices.size(); ++t)
      if (res.t0.vertices[t] == uf) {
        res.lambda_vertex[c] = int(t);
        break;
      }
  }

  // translation witness: g D strictly inside D among stored translate sides
  for (std::size_t i = 0; i < k && !res.translation_witness; ++i)
    for (std::size_t j = 0; j < k && !res.translation_witness; ++j) {
      if (i == j) continue;
      if (leq_sets(j, 1, i, 1) && strictly(j, 1, i, 1) &&
          res.translates[i].label != res.translates[j].label) {
        res.translation_witness = res.translates[j].label + " after " +
                                  res.translates[i].label + "^-1";
      }
    }

  // stabilizer sizes of each stored translate (finite in the window)
  for (const auto& ct : res.translates) {
    int stab = 0;
    for (const auto& tr : in.wall_action) {
      std::vector<std::pair<VertexId, VertexId>> moved;
      bool visible = true;
      for (const auto& e : ct.edges) {
        VertexId ma = tr.image[e.u], mb = tr.image[e.v];
        if (ma == Translation::kNowhere || mb == Translation::kNowhere) {
          visible = false;
          break;
        }
        moved.push_back({std::min(ma, mb), std::max(ma, mb)});
      }
      if (!visible) continue;
      std::sort(moved.begin(), moved.end());
      bool same = moved.size() == ct.edges.size();
      for (std::size_t e = 0; same && e < moved.size(); ++e)
        same = moved[e] == std::make_pair(ct.edges[e].u, ct.edges[e].v);
      if (same) ++stab;
    }
    res.translate_stabilizer_sizes.push_back(stab);
  }
  return res;
}

// ------------------------------------------------------------------- P

namespace {

// containment of visible supports: a <= b on commonly visible vertices
bool support_subset(const std::vector<char>& a, const std::vector<char>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

bool support_equal(const std::vector<char>& a, const std::vector<char>& b) {
  return a == b;
}

}  // namespace

PResult build_p_order(const std::vector<WallData>& walls) {
  PResult res;
  // enumerate elements: per base-orbit wall one pair per deep class; per
  // plain wall a single pair
  std::vector<PElementKey> keys;
  std::vector<std::string> names;
  for (std::size_t w = 0; w < walls.size(); ++w) {
    if (walls[w].in_base_orbit) {
      for (int c = 0; c < walls[w].class_count; ++c) {
        if (!walls[w].deep.empty() && !walls[w].deep[c]) continue;
        keys.push_back({w, c, true});
        names.push_back(walls[w].id + "/[" + std::to_string(c) + "]");
      }
    } else {
      keys.push_back({w, -1, true});
      names.push_back(walls[w].id);
    }
  }
  Pocset p(names);
  p.set_window_mode(true);
  const std::size_t n =
      walls.empty() ? 0 : walls.front().side_support.size();

  // The unique class of wall w containing a region: the
  // consistent value of the wall's class map over the region's classified
  // vertices.  Mixed values mean the window is too small; flagged.
  auto unique_class_over = [&](std::size_t w, const std::vector<char>& region)
      -> std::optional<int> {
    if (walls[w].class_of.size() != n) return std::nullopt;
    int found = -1;
    bool any = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (!region[v]) continue;
      if (walls[w].wall_vertices[v]) continue;
      int c = walls[w].class_of[v];
      if (c < 0) continue;
      if (!any) {
        found = c;
        any = true;
      } else if (found != c) {
        res.violations.push_back("window-instability: region meets several "
                                 "classes of wall " + walls[w].id);
        return std::nullopt;
      }
    }
    if (!any) return std::nullopt;
    return found;
  };

  // strict tree nesting of oriented wall supports (positive side = the
  // stored support, negative side = its complement within the window)
  auto oriented_support = [&](std::size_t w, bool positive) {
    if (positive) return walls[w].side_support;
    std::vector<char> s(n, 0);
    for (std::size_t v = 0; v < n; ++v)
      s[v] = !walls[w].side_support[v] || walls[w].wall_vertices[v];
    return s;
  };

  auto strict_nested = [&](const std::vector<char>& a,
                           const std::vector<char>& b) {
    return support_subset(a, b) && !support_equal(a, b);
  };

  // within one wall, a class side sits below every other class co-side
  std::map<PElementKey, std::size_t> index;
  for (std::size_t i = 0; i < keys.size(); ++i) index[keys[i]] = 2 * i;
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (std::size_t j = 0; j < keys.size(); ++j) {
      if (i == j) continue;
      const auto& a = keys[i];
      const auto& b = keys[j];
      if (a.wall == b.wall && walls[a.wall].in_base_orbit) {
        // ([x], h0) <= ([y]*, h0*) for distinct classes
        p.add_less(2 * i, 2 * j + 1);
        continue;
      }
      if (a.wall == b.wall) continue;
      // across walls: the six structural cases, keyed by strict nesting of
      // the oriented supports h1 < h2
      for (bool o1 : {true, false})
        for (bool o2 : {true, false}) {
          auto h1 = oriented_support(a.wall, o1);
          auto h2 = oriented_support(b.wall, o2);
          if (!strict_nested(h1, h2)) continue;
          // element side of pair a for orientation o1: positive <-> class
          // side lives on the positive support
          std::size_t ea, eb;
          bool a_ok = true, b_ok = true;
          if (walls[a.wall].in_base_orbit) {
            if (o1) {
              // h1 = g1 h0: all classes work
              ea = 2 * i;
            } else {
              // h1 = g1 h0*: only the class containing h2^* qualifies
              auto h2c = oriented_support(b.wall, !o2);
              auto cls = unique_class_over(a.wall, h2c);
              a_ok = cls.has_value() && *cls == a.cls;
              ea = 2 * i + 1;
            }
          } else {
            a_ok = o1;  // plain halfspace: positive orientation only
            ea = 2 * i;
          }
          if (walls[b.wall].in_base_orbit) {
            if (!o2) {
              // h2 = g2 h0*: all classes
              eb = 2 * j + 1;
            } else {
              // h2 = g2 h0: only the class containing h1
              auto cls = unique_class_over(b.wall, h1);
              b_ok = cls.has_value() && *cls == b.cls;
              eb = 2 * j;
            }
          } else {
            b_ok = o2;
            eb = 2 * j;
          }
          if (a_ok && b_ok) p.add_less(ea, eb);
        }
    }

  try {
    p.finalize();
    res.axioms_ok = true;
  } catch (const invalid_input_error& e) {
    res.axioms_ok = false;
    res.violations.push_back(e.what());
    res.p = Pocset({});
    return res;
  }
  res.p = p;
  res.element_of_pair = keys;

  res.no_transverse = true;
  for (std::size_t a = 0; a < p.size() && res.no_transverse; ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b)
      if (p.transverse(a, b)) {
        res.no_transverse = false;
        res.violations.push_back("transverse pair: " + p.element_name(a) +
                                 " vs " + p.element_name(b));
        break;
      }

  // exactly-one-row property for distinct non-dual pairs
  res.one_row_ok = true;
  for (std::size_t i = 0; i < keys.size() && res.one_row_ok; ++i)
    for (std::size_t j = i + 1; j < keys.size(); ++j) {
      std::size_t a = 2 * i, b = 2 * j;
      int rows = int(p.leq(a, b)) + int(p.leq(a, Pocset::star(b))) +
                 int(p.leq(Pocset::star(a), b)) + int(p.leq(b, a));
      if (rows != 1) {
        res.one_row_ok = false;
        res.violations.push_back("row count " + std::to_string(rows) +
                                 " for " + p.element_name(a) + " vs " +
                                 p.element_name(b));
        break;
      }
    }
  return res;
}

TPrimeResult cube_to_tprime(const std::vector<WallData>& walls,
                            const PResult& p) {
  TPrimeResult res;
  res.tprime = cube(p.p);
  res.is_tree = is_tree_check(res.tprime);

  // tau on edges = pairs of P
  std::set<std::string> images;
  res.tau_injective = true;
  for (std::size_t i = 0; i < p.element_of_pair.size(); ++i) {
    const auto& k = p.element_of_pair[i];
    std::string img;
    if (k.cls >= 0)
      img = "(T0:" + std::to_string(k.cls) + ", coset:" + walls[k.wall].id +
            ")";
    else
      img = "(Te:" + walls[k.wall].id + ")";
    res.tau.push_back(img);
    if (!images.insert(img).second) res.tau_injective = false;
  }

  // phi: per T' vertex choose an orientation of every wall
  res.phi_complete = true;
  res.phi_consistent = true;
  for (const auto& uf : res.tprime.vertices) {
    // wall -> chosen orientation: +1 positive, -1 starred, 0 undecided
    std::map<std::size_t, int> orient;
    for (std::size_t i = 0; i < p.element_of_pair.size(); ++i) {
      const auto& k = p.element_of_pair[i];
      bool positive = uf.chosen[i] == 2 * i;  // picked the class side
      if (k.cls < 0) {
        orient[k.wall] = positive ? +1 : -1;
        continue;
      }
      auto it = orient.find(k.wall);
      if (positive) {
        // g h0 in phi(v) iff some class side is chosen
        if (it == orient.end() || it->second == -1) orient[k.wall] = +1;
      } else if (it == orient.end()) {
        orient[k.wall] = -1;
      }
    }
    for (auto& [w, o] : orient) {
      (void)w;
      if (o == 0) res.phi_complete = false;
    }
    // consistency against support nesting: if h1 subset h2 (oriented) and
    // h1 chosen then h2 chosen
    const std::size_t n =
        walls.empty() ? 0 : walls.front().side_support.size();
    auto oriented_support = [&](std::size_t w, int o) {
      if (o > 0) return walls[w].side_support;
      std::vector<char> s(n, 0);
      for (std::size_t v = 0; v < n; ++v)
        s[v] = !walls[w].side_support[v] || walls[w].wall_vertices[v];
      return s;
    };
    for (const auto& [w1, o1] : orient)
      for (const auto& [w2, o2] : orient) {
        if (w1 == w2) continue;
        auto h1 = oriented_support(w1, o1);
        auto h2o = oriented_support(w2, o2);
        auto h2star = oriented_support(w2, -o2);
        if (support_subset(h1, h2star) && !support_equal(h1, h2star) &&
            !support_subset(h1, h2o)) {
          // h1 is chosen and nests strictly inside the rejected side only
          res.phi_consistent = false;
        }
      }
  }
  return res;
}

}  // namespace hsp
