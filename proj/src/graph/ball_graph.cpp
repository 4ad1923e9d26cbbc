#include "hsp/graph/ball_graph.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "hsp/errors.hpp"

namespace hsp {

VertexId BallGraph::add_vertex(const std::string& label, int depth) {
  auto [it, fresh] = index_.emplace(label, VertexId(labels_.size()));
  if (!fresh)
    throw invalid_input_error("duplicate vertex label: " + label);
  labels_.push_back(label);
  depths_.push_back(depth);
  frontier_.push_back(false);
  adj_valid_ = false;
  return it->second;
}

void BallGraph::add_edge(VertexId u, VertexId v, std::int64_t mult) {
  if (u == v) throw invalid_input_error("self-loop at " + labels_.at(u));
  if (u >= labels_.size() || v >= labels_.size())
    throw invalid_input_error("edge endpoint out of range");
  if (mult <= 0) throw invalid_input_error("non-positive edge multiplicity");
  if (u > v) std::swap(u, v);
  edges_.push_back({u, v, mult});
  adj_valid_ = false;
}

void BallGraph::set_frontier(VertexId v, bool on) { frontier_.at(v) = on; }

void BallGraph::finalize() {
  std::sort(edges_.begin(), edges_.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) {
              return std::tie(a.u, a.v) < std::tie(b.u, b.v);
            });
  std::vector<WeightedEdge> merged;
  for (const auto& e : edges_) {
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v)
      merged.back().mult += e.mult;
    else
      merged.push_back(e);
  }
  edges_ = std::move(merged);
  adj_valid_ = false;
}

const std::vector<std::pair<VertexId, std::int64_t>>& BallGraph::neighbors(
    VertexId v) const {
  if (!adj_valid_) {
    adj_.assign(labels_.size(), {});
    for (const auto& e : edges_) {
      adj_[e.u].push_back({e.v, e.mult});
      adj_[e.v].push_back({e.u, e.mult});
    }
    for (auto& lst : adj_) std::sort(lst.begin(), lst.end());
    adj_valid_ = true;
  }
  return adj_[v];
}

std::int64_t BallGraph::total_degree(VertexId v) const {
  std::int64_t d = 0;
  for (const auto& [w, m] : neighbors(v)) {
    (void)w;
    d += m;
  }
  return d;
}

void BallGraph::validate() const {
  std::set<std::string> seen;
  for (const auto& l : labels_)
    if (!seen.insert(l).second)
      throw invalid_input_error("duplicate label: " + l);
  for (const auto& e : edges_) {
    if (e.u >= labels_.size() || e.v >= labels_.size())
      throw invalid_input_error("edge endpoint out of range");
    if (e.u == e.v) throw invalid_input_error("self-loop");
    if (e.mult <= 0) throw invalid_input_error("bad multiplicity");
  }
}

BallGraph grow_ball(const NeighborOracle& oracle, const std::string& center,
                    int radius, std::size_t budget) {
  if (radius < 0) throw invalid_input_error("negative radius");
  BallGraph ball;
  ball.set_radius(radius);
  ball.add_vertex(center, 0);

  std::deque<VertexId> queue = {0};
  std::set<std::pair<VertexId, VertexId>> edge_seen;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    int d = ball.depth(v);
    auto nbrs = oracle(ball.label(v));
    std::sort(nbrs.begin(), nbrs.end(), shortlex_less);
    for (const auto& nl : nbrs) {
      if (nl == ball.label(v)) continue;  // drop oracle self-loops
      VertexId w;
      if (ball.has_vertex(nl)) {
        w = ball.vertex(nl);
      } else {
        if (d == radius) continue;  // frontier: no new vertices
        if (ball.vertex_count() >= budget)
          throw budget_error("grow_ball: vertex budget " +
                             std::to_string(budget) + " exceeded");
        w = ball.add_vertex(nl, d + 1);
        queue.push_back(w);
      }
      auto key = std::minmax(v, w);
      if (edge_seen.insert({key.first, key.second}).second)
        ball.add_edge(v, w);
    }
  }
  for (VertexId v = 0; v < ball.vertex_count(); ++v)
    if (ball.depth(v) == radius && radius > 0) ball.set_frontier(v);
  ball.finalize();
  return ball;
}

std::vector<int> induced_components(const BallGraph& ball,
                                    const std::vector<VertexId>& verts,
                                    int* component_count) {
  std::vector<char> in_set(ball.vertex_count(), 0);
  for (VertexId v : verts) in_set[v] = 1;
  std::vector<int> comp(ball.vertex_count(), -1);
  int next = 0;
  std::vector<VertexId> sorted = verts;
  std::sort(sorted.begin(), sorted.end());
  for (VertexId start : sorted) {
    if (comp[start] >= 0) continue;
    comp[start] = next;
    std::deque<VertexId> q = {start};
    while (!q.empty()) {
      VertexId v = q.front();
      q.pop_front();
      for (const auto& [w, m] : ball.neighbors(v)) {
        (void)m;
        if (in_set[w] && comp[w] < 0) {
          comp[w] = next;
          q.push_back(w);
        }
      }
    }
    ++next;
  }
  if (component_count) *component_count = next;
  std::vector<int> out(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i) out[i] = comp[verts[i]];
  return out;
}

namespace {

// One-shot classification at a fixed probe radius within a grown ball.
std::pair<int, int> classify_components(const BallGraph& ball, int r, int R,
                                        const std::vector<char>& allowed) {
  std::vector<VertexId> verts;
  for (VertexId v = 0; v < ball.vertex_count(); ++v)
    if (allowed[v] && ball.depth(v) > r && ball.depth(v) <= R)
      verts.push_back(v);
  int count = 0;
  std::vector<int> comp = induced_components(ball, verts, &count);
  std::vector<char> meets_frontier(count, 0);
  for (std::size_t i = 0; i < verts.size(); ++i)
    if (ball.depth(verts[i]) == R) meets_frontier[comp[i]] = 1;
  int unbounded = 0, bounded = 0;
  for (int c = 0; c < count; ++c)
    meets_frontier[c] ? ++unbounded : ++bounded;
  return {unbounded, bounded};
}

}  // namespace

EndReport end_probe_on_ball(const BallGraph& ball, int r, int R,
                            const std::vector<VertexId>& restrict_to) {
  if (!(R > r && r >= 0)) throw invalid_input_error("end_probe needs R > r >= 0");
  if (R > ball.radius())
    throw invalid_input_error("probe radius exceeds ball radius");
  std::vector<char> allowed(ball.vertex_count(), restrict_to.empty() ? 1 : 0);
  for (VertexId v : restrict_to) allowed[v] = 1;

  EndReport rep;
  rep.inner_radius = r;
  rep.probe_radius = R;
  auto [unb, bnd] = classify_components(ball, r, R, allowed);
  rep.unbounded_count = unb;
  rep.bounded_count = bnd;
  rep.stable = false;
  if (R >= r + 2) {
    auto [unb_prev, bnd_prev] = classify_components(ball, r, R - 1, allowed);
    (void)bnd_prev;
    rep.prev_unbounded_count = unb_prev;
    rep.stable = (unb_prev == unb);
  }
  return rep;
}

EndReport end_probe(const NeighborOracle& oracle, const std::string& center,
                    int r, int R, std::size_t budget) {
  if (!(R > r && r >= 0)) throw invalid_input_error("end_probe needs R > r >= 0");
  BallGraph ball = grow_ball(oracle, center, R, budget);
  return end_probe_on_ball(ball, r, R);
}

}  // namespace hsp
