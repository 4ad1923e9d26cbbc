#include "hsp/graph/mincut.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>

#include "hsp/errors.hpp"

namespace hsp {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

// Dinic max-flow over the window plus a supersource/supersink.  Undirected
// edges become arc pairs that serve as each other's reverse.
struct FlowNet {
  struct Arc {
    int to;
    std::int64_t cap;
    int rev;  // index of reverse arc in adj[to]
  };
  int n = 0;
  std::vector<std::vector<Arc>> adj;
  int s = 0, t = 0;

  explicit FlowNet(int vertices) : n(vertices + 2), adj(vertices + 2) {
    s = vertices;
    t = vertices + 1;
  }

  void add_arc(int u, int v, std::int64_t cap_uv, std::int64_t cap_vu) {
    adj[u].push_back({v, cap_uv, int(adj[v].size())});
    adj[v].push_back({u, cap_vu, int(adj[u].size()) - 1});
  }

  std::vector<int> level;
  std::vector<std::size_t> iter;

  bool bfs() {
    level.assign(n, -1);
    std::deque<int> q = {s};
    level[s] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (const Arc& a : adj[v])
        if (a.cap > 0 && level[a.to] < 0) {
          level[a.to] = level[v] + 1;
          q.push_back(a.to);
        }
    }
    return level[t] >= 0;
  }

  std::int64_t dfs(int v, std::int64_t limit) {
    if (v == t) return limit;
    for (std::size_t& i = iter[v]; i < adj[v].size(); ++i) {
      Arc& a = adj[v][i];
      if (a.cap <= 0 || level[a.to] != level[v] + 1) continue;
      std::int64_t got = dfs(a.to, std::min(limit, a.cap));
      if (got > 0) {
        a.cap -= got;
        adj[a.to][a.rev].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::int64_t max_flow() {
    std::int64_t flow = 0;
    while (bfs()) {
      iter.assign(n, 0);
      while (std::int64_t f = dfs(s, kInf)) flow += f;
    }
    return flow;
  }

};

std::vector<VertexId> sorted_unique(std::vector<VertexId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

Cut make_cut(const BallGraph& ball, std::vector<VertexId> side,
             const WallEdgePredicate& wall) {
  Cut cut;
  cut.side = sorted_unique(std::move(side));
  std::vector<char> in(ball.vertex_count(), 0);
  for (VertexId v : cut.side) in[v] = 1;
  for (const auto& e : ball.edges())
    if (in[e.u] != in[e.v]) {
      cut.boundary.push_back(e);
      cut.boundary_size += e.mult;
      if (wall && wall(e.u, e.v)) cut.wall_weight += e.mult;
    }
  return cut;
}

Cut min_vertex_set_cut(const BallGraph& ball,
                       const std::vector<VertexId>& sources_in,
                       const std::vector<VertexId>& sinks_in,
                       const WallEdgePredicate& wall) {
  auto sources = sorted_unique(sources_in);
  auto sinks = sorted_unique(sinks_in);
  if (sources.empty() || sinks.empty())
    throw invalid_input_error("min_vertex_set_cut: empty sources or sinks");
  for (VertexId v : sources)
    if (std::binary_search(sinks.begin(), sinks.end(), v))
      throw invalid_input_error("min_vertex_set_cut: sources meet sinks");

  // Connectivity precondition: all terminals in one component.
  std::vector<VertexId> all(ball.vertex_count());
  for (VertexId v = 0; v < ball.vertex_count(); ++v) all[v] = v;
  int ncomp = 0;
  auto comp = induced_components(ball, all, &ncomp);
  for (VertexId v : sources)
    if (comp[v] != comp[sources[0]])
      throw disconnected_input_error("sources span several components");
  for (VertexId v : sinks)
    if (comp[v] != comp[sources[0]])
      throw disconnected_input_error("sources and sinks are disconnected");

  const int n = int(ball.vertex_count());
  FlowNet net(n);
  for (const auto& e : ball.edges()) net.add_arc(int(e.u), int(e.v), e.mult, e.mult);
  for (VertexId v : sources) net.add_arc(net.s, int(v), kInf, 0);
  for (VertexId v : sinks) net.add_arc(int(v), net.t, kInf, 0);
  const std::int64_t flow = net.max_flow();

  // Minimum cuts are exactly the residual-closed vertex sets squeezed
  // between the source closure and the sink co-closure.  The
  // lexicographically least sorted side is built by a greedy walk over that
  // lattice: forced side members are emitted in shortlex order, a smaller
  // free vertex is inserted whenever its closure stays off the sink side,
  // and the walk stops once nothing is forced (any extension could only
  // lengthen the list).
  auto residual_reach = [&](std::vector<char>& in_set, std::deque<int> seeds) {
    while (!seeds.empty()) {
      int v = seeds.front();
      seeds.pop_front();
      for (const auto& a : net.adj[v])
        if (a.cap > 0 && a.to < n && !in_set[a.to]) {
          in_set[a.to] = 1;
          seeds.push_back(a.to);
        }
    }
  };
  auto residual_coreach = [&](std::vector<char>& in_set,
                              std::deque<int> seeds) {
    while (!seeds.empty()) {
      int v = seeds.front();
      seeds.pop_front();
      for (const auto& a : net.adj[v]) {
        // the arc (a.to -> v) has positive residual iff its twin stored at
        // a.to does
        if (a.to >= n || in_set[a.to]) continue;
        const auto& twin = net.adj[a.to][std::size_t(a.rev)];
        if (twin.cap > 0) {
          in_set[a.to] = 1;
          seeds.push_back(a.to);
        }
      }
    }
  };

  std::vector<char> in_side(n, 0), excluded(n, 0);
  {
    std::deque<int> seeds;
    for (VertexId v : sources) {
      in_side[v] = 1;
      seeds.push_back(int(v));
    }
    residual_reach(in_side, std::move(seeds));
  }
  {
    std::deque<int> seeds;
    for (VertexId v : sinks) {
      excluded[v] = 1;
      seeds.push_back(int(v));
    }
    residual_coreach(excluded, std::move(seeds));
  }
  for (int v = 0; v < n; ++v)
    if (in_side[v] && excluded[v])
      throw invalid_input_error("residual closures overlap: flow not maximum");

  std::vector<VertexId> order(all);
  std::sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    return shortlex_less(ball.label(a), ball.label(b));
  });
  std::vector<std::size_t> rnk(order.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) rnk[order[i]] = i;

  std::set<std::size_t> forced;  // side members not yet emitted, by rank
  for (int v = 0; v < n; ++v)
    if (in_side[v]) forced.insert(rnk[std::size_t(v)]);

  auto include = [&](VertexId v) {
    std::vector<char> before = in_side;
    in_side[v] = 1;
    residual_reach(in_side, {int(v)});
    for (int u = 0; u < n; ++u)
      if (in_side[u] && !before[u]) forced.insert(rnk[std::size_t(u)]);
  };

  while (!forced.empty()) {
    std::size_t next = *forced.begin();
    bool inserted = false;
    for (std::size_t r = 0; r < next; ++r) {
      VertexId v = order[r];
      if (in_side[v] || excluded[v]) continue;
      include(v);
      inserted = true;
      break;
    }
    if (inserted) continue;
    forced.erase(forced.begin());
    // emitting `next` permanently excludes every free vertex below it
    for (std::size_t r = 0; r < next; ++r)
      if (!in_side[order[r]]) excluded[order[r]] = 1;
  }

  std::vector<VertexId> side;
  for (int v = 0; v < n; ++v)
    if (in_side[v]) side.push_back(VertexId(v));
  Cut cut = make_cut(ball, side, wall);
  if (cut.boundary_size != flow)
    throw invalid_input_error("canonical side does not realize the min cut");
  return cut;
}

std::vector<Cut> enumerate_cuts_bruteforce(const BallGraph& ball,
                                           std::int64_t max_boundary,
                                           const WallEdgePredicate& wall) {
  const std::size_t n = ball.vertex_count();
  if (n > 16)
    throw budget_error("enumerate_cuts_bruteforce refuses > 16 vertices");
  if (n < 2) return {};

  // Canonical kept side contains the shortlex-least label.
  VertexId least = 0;
  for (VertexId v = 1; v < n; ++v)
    if (shortlex_less(ball.label(v), ball.label(least))) least = v;

  std::vector<Cut> cuts;
  for (std::uint32_t mask = 1; mask + 1 < (1u << n); ++mask) {
    if (!(mask & (1u << least))) continue;  // complement will be visited
    std::vector<VertexId> side, other;
    for (VertexId v = 0; v < n; ++v)
      (mask & (1u << v)) ? side.push_back(v) : other.push_back(v);
    int c1 = 0, c2 = 0;
    induced_components(ball, side, &c1);
    if (c1 != 1) continue;
    induced_components(ball, other, &c2);
    if (c2 != 1) continue;
    Cut cut = make_cut(ball, side, wall);
    if (cut.boundary_size <= max_boundary) cuts.push_back(std::move(cut));
  }
  std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) {
    if (a.boundary_size != b.boundary_size)
      return a.boundary_size < b.boundary_size;
    return a.side < b.side;
  });
  return cuts;
}

}  // namespace hsp
