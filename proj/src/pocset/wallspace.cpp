#include "hsp/pocset/wallspace.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "hsp/errors.hpp"

namespace hsp {

Pocset tree_halfspace_pocset(const BallGraph& tree) {
  const std::size_t n = tree.vertex_count();
  if (tree.edges().size() + 1 != n)
    throw invalid_input_error("tree_halfspace_pocset: not a tree");
  // side sets per (edge, direction): bitset of vertices on the chosen side
  const auto& edges = tree.edges();
  std::vector<std::string> names;
  for (const auto& e : edges)
    names.push_back(tree.label(e.u) + "|" + tree.label(e.v));

  auto side_of = [&](std::size_t ei, bool toward_v) {
    std::vector<char> blocked_side(n, 0);
    VertexId start = toward_v ? edges[ei].v : edges[ei].u;
    VertexId other = toward_v ? edges[ei].u : edges[ei].v;
    std::deque<VertexId> q = {start};
    blocked_side[start] = 1;
    while (!q.empty()) {
      VertexId x = q.front();
      q.pop_front();
      for (const auto& [y, m] : tree.neighbors(x)) {
        (void)m;
        if (x == start && y == other) continue;
        if ((x == edges[ei].u && y == edges[ei].v) ||
            (x == edges[ei].v && y == edges[ei].u))
          continue;
        if (!blocked_side[y]) {
          blocked_side[y] = 1;
          q.push_back(y);
        }
      }
    }
    return blocked_side;
  };

  std::vector<std::vector<char>> sides(2 * edges.size());
  for (std::size_t ei = 0; ei < edges.size(); ++ei) {
    sides[2 * ei] = side_of(ei, true);       // element 2ei: side containing v
    sides[2 * ei + 1] = side_of(ei, false);  // its star: side containing u
  }

  Pocset p(names);
  auto subset = [&](const std::vector<char>& a, const std::vector<char>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] && !b[i]) return false;
    return true;
  };
  for (std::size_t a = 0; a < sides.size(); ++a)
    for (std::size_t b = 0; b < sides.size(); ++b)
      if (a != b && Pocset::star(a) != b && subset(sides[a], sides[b]) &&
          sides[a] != sides[b])
        p.add_less(a, b);
  p.finalize();
  return p;
}

Wallspace wallspace_pocset(std::size_t npoints,
                           const std::vector<std::vector<std::size_t>>& walls,
                           const std::vector<std::string>& wall_names) {
  // normalize: proper nonempty sides, dedup pairs {A, complement}
  std::vector<std::vector<char>> sides;
  std::vector<std::string> names;
  std::set<std::vector<char>> seen;
  for (std::size_t w = 0; w < walls.size(); ++w) {
    std::vector<char> in(npoints, 0);
    for (std::size_t x : walls[w]) {
      if (x >= npoints) throw invalid_input_error("wall point out of range");
      in[x] = 1;
    }
    std::vector<char> comp(npoints, 0);
    for (std::size_t i = 0; i < npoints; ++i) comp[i] = !in[i];
    bool empty = std::none_of(in.begin(), in.end(), [](char c) { return c; });
    bool full = std::all_of(in.begin(), in.end(), [](char c) { return c; });
    if (empty || full)
      throw invalid_input_error("walls must be proper nonempty subsets");
    if (seen.count(in) || seen.count(comp)) continue;
    seen.insert(in);
    sides.push_back(in);
    sides.push_back(comp);
    names.push_back(wall_names.size() > w ? wall_names[w]
                                          : "w" + std::to_string(w));
  }

  Pocset p(names);
  auto subset = [&](const std::vector<char>& a, const std::vector<char>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] && !b[i]) return false;
    return true;
  };
  for (std::size_t a = 0; a < sides.size(); ++a)
    for (std::size_t b = 0; b < sides.size(); ++b)
      if (a != b && Pocset::star(a) != b && sides[a] != sides[b] &&
          subset(sides[a], sides[b]))
        p.add_less(a, b);
  p.finalize();

  Wallspace ws{std::move(p), {}};
  for (std::size_t x = 0; x < npoints; ++x) {
    Ultrafilter uf;
    for (std::size_t pr = 0; pr < ws.pocset.pair_count(); ++pr)
      uf.chosen.push_back(std::uint32_t(2 * pr + (sides[2 * pr][x] ? 0 : 1)));
    ws.lambda.push_back(std::move(uf));
  }
  return ws;
}

}  // namespace hsp
