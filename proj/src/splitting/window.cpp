#include "hsp/splitting/window.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hsp/errors.hpp"

namespace hsp {

BallGraph induce_subgraph(const BallGraph& ball,
                          const std::vector<VertexId>& keep) {
  BallGraph out;
  out.set_radius(ball.radius());
  std::map<VertexId, VertexId> remap;
  std::vector<VertexId> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (VertexId v : sorted) {
    VertexId nv = out.add_vertex(ball.label(v), ball.depth(v));
    out.set_frontier(nv, ball.is_frontier(v));
    remap[v] = nv;
  }
  for (const auto& e : ball.edges()) {
    auto iu = remap.find(e.u);
    auto iv = remap.find(e.v);
    if (iu != remap.end() && iv != remap.end())
      out.add_edge(iu->second, iv->second, e.mult);
  }
  out.finalize();
  return out;
}

HalfspaceBall halfspace_window(const SplittingPtr& spec, const TreeEdge& edge,
                               bool side_far, int radius,
                               std::size_t budget) {
  spec->require_nontrivial();
  if (radius < 1) throw invalid_input_error("halfspace_window needs R >= 1");
  CayleyWindow w = spec->grow_window(radius, budget);

  // Orient the edge against its defining translate of the base edge.
  GNormalForm g0 = spec->element_of_label(edge.coset);
  TreeEdge base = spec->base_edge();
  TreeVertex tn = spec->translate_vertex(g0, base.near);
  TreeVertex tf = spec->translate_vertex(g0, base.far);
  bool flipped = false;
  if (edge.near == tn && edge.far == tf) {
    flipped = false;
  } else if (edge.near == tf && edge.far == tn) {
    flipped = true;
  } else {
    throw invalid_input_error("halfspace_window: inconsistent tree edge");
  }
  bool want_far = side_far != flipped;

  GNormalForm g0inv = spec->inverse_nf(g0);
  HalfspaceBall hs;
  hs.edge = edge;
  hs.far_side = side_far;
  hs.radius = radius;
  std::vector<VertexId> keep;
  for (VertexId v = 0; v < w.ball.vertex_count(); ++v) {
    GNormalForm local = spec->mult(g0inv, w.forms[v]);
    bool wall = spec->in_base_wall(local);
    bool far = spec->element_far_side(local);
    if (wall) hs.wall.push_back(w.ball.label(v));
    if (wall || far == want_far) keep.push_back(v);
  }
  hs.window = induce_subgraph(w.ball, keep);
  std::vector<VertexId> all(hs.window.vertex_count());
  for (VertexId v = 0; v < hs.window.vertex_count(); ++v) all[v] = v;
  int ncomp = 0;
  induced_components(hs.window, all, &ncomp);
  hs.connected = (ncomp <= 1);
  return hs;
}

EndReport halfspace_end_probe(const HalfspaceBall& hs, int inner_radius) {
  return end_probe_on_ball(hs.window, inner_radius, hs.radius);
}

// ------------------------------------------------------------ Bass-Serre

std::string BassSerreOracle::key(const TreeVertex& v) {
  return std::to_string(v.orbit) + "|" + v.coset;
}

TreeVertex BassSerreOracle::vertex_of_key(const std::string& k) {
  auto bar = k.find('|');
  if (bar == std::string::npos)
    throw invalid_input_error("bad tree vertex key: " + k);
  return TreeVertex{k.substr(bar + 1), std::stoi(k.substr(0, bar))};
}

BassSerreOracle::BassSerreOracle(SplittingPtr spec, int coset_radius,
                                 std::size_t coset_budget)
    : spec_(std::move(spec)),
      coset_radius_(coset_radius),
      coset_budget_(coset_budget) {
  spec_->require_nontrivial();
  enumerate_reps();
}

void BassSerreOracle::enumerate_reps() {
  auto collect = [&](GroupPtr grp, const EnginePtr& eng) {
    std::vector<Element> gens;
    for (std::size_t i = 0; i < grp->ngens(); ++i) {
      gens.push_back(grp->generator(i));
      gens.push_back(inverse(grp->generator(i)));
    }
    std::vector<Element> reps;
    std::set<std::string> seen;
    auto oracle = ball_oracle(grp, gens);
    BallGraph ball = grow_ball(oracle, "1", coset_radius_, coset_budget_ * 4);
    for (VertexId v = 0; v < ball.vertex_count(); ++v) {
      Element x = parse_word(*grp, ball.label(v));
      Element rep = eng->left_coset_rep(x);
      std::string key = print_element(rep);
      if (seen.insert(key).second) {
        reps.push_back(rep);
        if (reps.size() >= coset_budget_) {
          frontier_limited_ = true;
          break;
        }
      }
    }
    // if the last ball layer still discovered new cosets, the enumeration
    // is radius-limited (infinite index shows up this way)
    return reps;
  };
  reps_a_ = collect(spec_->vertex_group_a(), spec_->engine_a());
  if (spec_->is_amalgam())
    reps_b_ = collect(spec_->vertex_group_b(), spec_->engine_b());
  else
    reps_b_ = collect(spec_->vertex_group_a(), spec_->engine_b());
  // heuristic truncation flag: a frontier-radius rep means more may exist
  if (!frontier_limited_) {
    auto check_growth = [&](GroupPtr grp, const EnginePtr& eng,
                            std::size_t have) {
      std::vector<Element> gens;
      for (std::size_t i = 0; i < grp->ngens(); ++i) {
        gens.push_back(grp->generator(i));
        gens.push_back(inverse(grp->generator(i)));
      }
      auto oracle = ball_oracle(grp, gens);
      BallGraph bigger =
          grow_ball(oracle, "1", coset_radius_ + 1, coset_budget_ * 8);
      std::set<std::string> seen;
      for (VertexId v = 0; v < bigger.vertex_count(); ++v) {
        Element x = parse_word(*grp, bigger.label(v));
        seen.insert(print_element(eng->left_coset_rep(x)));
        if (seen.size() > have) return true;
      }
      return seen.size() > have;
    };
    if (check_growth(spec_->vertex_group_a(), spec_->engine_a(),
                     reps_a_.size()))
      frontier_limited_ = true;
    else if (check_growth(spec_->is_amalgam() ? spec_->vertex_group_b()
                                              : spec_->vertex_group_a(),
                          spec_->engine_b(), reps_b_.size()))
      frontier_limited_ = true;
  }
}

std::vector<std::string> BassSerreOracle::neighbors(
    const std::string& vertex_key) {
  TreeVertex v = vertex_of_key(vertex_key);
  GNormalForm g0 = spec_->element_of_label(v.coset);
  std::vector<std::string> out;
  if (spec_->is_amalgam()) {
    if (v.orbit == 0) {
      for (const auto& r : reps_a_) {
        GMul m{GMul::Tag::a_elt, r, 0, ""};
        GNormalForm gr = is_identity(r) ? g0 : spec_->mult(g0, m);
        out.push_back(key(spec_->project_b(gr)));
      }
    } else {
      for (const auto& r : reps_b_) {
        GMul m{GMul::Tag::b_elt, r, 0, ""};
        GNormalForm gr = is_identity(r) ? g0 : spec_->mult(g0, m);
        out.push_back(key(spec_->project(gr)));
      }
    }
  } else {
    GMul tp{GMul::Tag::stable, Element{}, +1, "t"};
    GMul tm{GMul::Tag::stable, Element{}, -1, "t^-1"};
    for (const auto& r : reps_a_) {
      GMul m{GMul::Tag::a_elt, r, 0, ""};
      GNormalForm gr = is_identity(r) ? g0 : spec_->mult(g0, m);
      out.push_back(key(spec_->project(spec_->mult(gr, tp))));
    }
    for (const auto& r : reps_b_) {
      GMul m{GMul::Tag::a_elt, r, 0, ""};
      GNormalForm gr = is_identity(r) ? g0 : spec_->mult(g0, m);
      out.push_back(key(spec_->project(spec_->mult(gr, tm))));
    }
  }
  std::sort(out.begin(), out.end(), shortlex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

NeighborOracle BassSerreOracle::as_neighbor_oracle() {
  auto self = std::make_shared<BassSerreOracle>(*this);
  return [self](const std::string& k) { return self->neighbors(k); };
}

// -------------------------------------------------------- tree of spaces

namespace {

std::string edge_coset_label(const Splitting& spec, const GNormalForm& g) {
  if (spec.is_amalgam()) {
    AmalgamNF nf = std::get<AmalgamNF>(g.form);
    nf.tail = spec.edge_group()->identity();
    return spec.label(GNormalForm{std::move(nf)});
  }
  HnnNF nf = std::get<HnnNF>(g.form);
  nf.tail = spec.engine_a()->left_coset_rep(nf.tail);
  return spec.label(GNormalForm{std::move(nf)});
}

}  // namespace

TreeOfSpacesWindow tree_of_spaces(const SplittingPtr& spec, int radius,
                                  std::size_t budget) {
  spec->require_nontrivial();
  if (radius < 2) throw invalid_input_error("tree_of_spaces needs R >= 2");
  CayleyWindow w = spec->grow_window(radius, budget);
  const bool amal = spec->is_amalgam();

  TreeOfSpacesWindow X;
  X.spec = spec;
  X.radius = radius;
  X.graph.set_radius(radius);

  const std::size_t n = w.ball.vertex_count();
  std::vector<VertexId> va(n), vb(n), mid(n, VertexId(-1));
  auto add = [&](const std::string& lab, VertexId src,
                 TreeOfSpacesWindow::VertexKind k, const std::string& pim) {
    VertexId id = X.graph.add_vertex(lab, w.ball.depth(src));
    X.graph.set_frontier(id, w.ball.is_frontier(src));
    X.kind.push_back(k);
    X.element.push_back(w.ball.label(src));
    X.p_image.push_back(pim);
    return id;
  };

  // t-image per element for HNN midpoints
  std::vector<VertexId> t_to(n, VertexId(-1));
  GMul tplus{GMul::Tag::stable, Element{}, +1, "t"};

  for (VertexId v = 0; v < n; ++v) {
    const std::string& lab = w.ball.label(v);
    if (amal) {
      va[v] = add(lab + "|va", v, TreeOfSpacesWindow::VertexKind::layer_a,
                  BassSerreOracle::key(spec->project(w.forms[v])));
      vb[v] = add(lab + "|vb", v, TreeOfSpacesWindow::VertexKind::layer_b,
                  BassSerreOracle::key(spec->project_b(w.forms[v])));
      mid[v] = add(lab + "|w", v, TreeOfSpacesWindow::VertexKind::midpoint,
                   "e|" + edge_coset_label(*spec, w.forms[v]));
    } else {
      va[v] = add(lab + "|v", v, TreeOfSpacesWindow::VertexKind::layer_a,
                  BassSerreOracle::key(spec->project(w.forms[v])));
    }
  }
  if (!amal) {
    for (VertexId v = 0; v < n; ++v) {
      std::string tl = spec->label(spec->mult(w.forms[v], tplus));
      if (w.ball.has_vertex(tl)) {
        t_to[v] = w.ball.vertex(tl);
        mid[v] = add(w.ball.label(v) + "|w", v,
                     TreeOfSpacesWindow::VertexKind::midpoint,
                     "e|" + edge_coset_label(*spec, w.forms[v]));
      }
    }
  }

  std::set<std::pair<VertexId, VertexId>> eset;
  auto add_edge = [&](VertexId x, VertexId y) {
    if (x == y) return;
    auto k = std::minmax(x, y);
    if (eset.insert({k.first, k.second}).second)
      X.graph.add_edge(k.first, k.second);
  };

  // wall-generator multipliers: edge-group generator images and inverses
  std::vector<GMul> wall_movers;
  for (const auto& img : spec->engine_a()->generator_images()) {
    if (is_identity(img)) continue;
    wall_movers.push_back({GMul::Tag::a_elt, img, 0, ""});
    wall_movers.push_back({GMul::Tag::a_elt, inverse(img), 0, ""});
  }

  for (VertexId v = 0; v < n; ++v) {
    for (const auto& s : spec->generating_set()) {
      std::string hl = spec->label(spec->mult(w.forms[v], s));
      if (!w.ball.has_vertex(hl)) continue;
      VertexId hv = w.ball.vertex(hl);
      if (s.tag == GMul::Tag::a_elt) add_edge(va[v], va[hv]);
      if (amal && s.tag == GMul::Tag::b_elt) add_edge(vb[v], vb[hv]);
      // stable-letter edges become the subdivided verticals below
    }
    if (amal) {
      add_edge(va[v], mid[v]);
      add_edge(mid[v], vb[v]);
    } else if (mid[v] != VertexId(-1)) {
      add_edge(va[v], mid[v]);
      add_edge(mid[v], va[t_to[v]]);
    }
    // wall-fiber edges between midpoints over the same edge coset
    if (mid[v] != VertexId(-1)) {
      for (const auto& mvr : wall_movers) {
        std::string hl = spec->label(spec->mult(w.forms[v], mvr));
        if (!w.ball.has_vertex(hl)) continue;
        VertexId hv = w.ball.vertex(hl);
        if (mid[hv] != VertexId(-1) &&
            X.p_image[mid[v]] == X.p_image[mid[hv]])
          add_edge(mid[v], mid[hv]);
      }
    }
  }
  X.graph.finalize();

  // wall-edge marking: edges between midpoint vertices
  for (const auto& e : X.graph.edges())
    X.edge_in_wall.push_back(
        X.kind[e.u] == TreeOfSpacesWindow::VertexKind::midpoint &&
        X.kind[e.v] == TreeOfSpacesWindow::VertexKind::midpoint);

  // fibers and their connectivity
  std::map<std::string, std::vector<VertexId>> walls, vfibers;
  for (VertexId v = 0; v < X.graph.vertex_count(); ++v) {
    if (X.kind[v] == TreeOfSpacesWindow::VertexKind::midpoint)
      walls[X.p_image[v]].push_back(v);
    else
      vfibers[X.p_image[v]].push_back(v);
  }
  for (auto& [id, fiber] : walls) {
    X.wall_ids.push_back(id);
    int ncomp = 0;
    induced_components(X.graph, fiber, &ncomp);
    X.wall_fiber_connected.push_back(ncomp <= 1);
    X.wall_fibers.push_back(std::move(fiber));
  }
  for (auto& [id, fiber] : vfibers) {
    int ncomp = 0;
    induced_components(X.graph, fiber, &ncomp);
    X.vertex_fiber_connected[id] = (ncomp <= 1);
    if (ncomp > 1) ++X.disconnected_vertex_fibers;
  }
  return X;
}

bool TreeOfSpacesWindow::base_fibers_connected() const {
  auto check = [&](const std::string& id) {
    auto it = vertex_fiber_connected.find(id);
    return it != vertex_fiber_connected.end() && it->second;
  };
  bool ok = check("0|1");
  if (spec->is_amalgam()) ok = ok && check("1|1");
  std::size_t w = base_wall_index();
  return ok && wall_fiber_connected[w];
}

std::vector<VertexId> TreeOfSpacesWindow::base_halfspace(bool far_side) const {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < graph.vertex_count(); ++v) {
    if (kind[v] == VertexKind::midpoint) {
      if (p_image[v] == "e|1") {
        out.push_back(v);
        continue;
      }
      // an off-boundary edge lies in the halfspace iff both endpoints do
      const GNormalForm& g = spec->lookup(element[v]);
      bool near_ok, far_ok;
      if (spec->is_amalgam()) {
        near_ok = spec->base_far_side(spec->project(g)) == far_side;
        far_ok = spec->base_far_side(spec->project_b(g)) == far_side;
      } else {
        GMul tplus{GMul::Tag::stable, Element{}, +1, "t"};
        near_ok = spec->base_far_side(spec->project(g)) == far_side;
        far_ok =
            spec->base_far_side(spec->project(spec->mult(g, tplus))) ==
            far_side;
      }
      if (near_ok && far_ok) out.push_back(v);
    } else {
      TreeVertex tv = BassSerreOracle::vertex_of_key(p_image[v]);
      if (spec->base_far_side(tv) == far_side) out.push_back(v);
    }
  }
  return out;
}

std::size_t TreeOfSpacesWindow::base_wall_index() const {
  for (std::size_t i = 0; i < wall_ids.size(); ++i)
    if (wall_ids[i] == "e|1") return i;
  throw invalid_input_error("base wall not present in the window");
}

bool TreeOfSpacesWindow::translate(const GNormalForm& g, VertexId v,
                                   VertexId* out) const {
  const GNormalForm& h = spec->lookup(element[v]);
  std::string moved = spec->label(spec->mult(g, h));
  std::string suffix = graph.label(v).substr(element[v].size());
  std::string target = moved + suffix;
  if (!graph.has_vertex(target)) return false;
  VertexId t = graph.vertex(target);
  if (kind[t] != kind[v]) return false;
  *out = t;
  return true;
}

}  // namespace hsp
