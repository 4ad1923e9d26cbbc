#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "hsp/errors.hpp"
#include "hsp/graph/ball_graph.hpp"
#include "hsp/graph/mincut.hpp"
#include "hsp/graph/serialize.hpp"

using namespace hsp;

namespace {

NeighborOracle line_oracle() {
  return [](const std::string& l) {
    long long x = std::stoll(l);
    return std::vector<std::string>{std::to_string(x - 1),
                                    std::to_string(x + 1)};
  };
}

NeighborOracle grid_oracle() {
  return [](const std::string& l) {
    auto comma = l.find(',');
    long long x = std::stoll(l.substr(0, comma));
    long long y = std::stoll(l.substr(comma + 1));
    auto lab = [](long long a, long long b) {
      return std::to_string(a) + "," + std::to_string(b);
    };
    return std::vector<std::string>{lab(x - 1, y), lab(x + 1, y),
                                    lab(x, y - 1), lab(x, y + 1)};
  };
}

NeighborOracle cube_oracle() {  // Z^3
  return [](const std::string& l) {
    long long c[3];
    std::size_t pos = 0;
    for (int i = 0; i < 3; ++i) {
      auto comma = l.find(',', pos);
      c[i] = std::stoll(l.substr(pos, comma - pos));
      pos = comma + 1;
    }
    std::vector<std::string> out;
    for (int i = 0; i < 3; ++i)
      for (int d : {-1, 1}) {
        long long m[3] = {c[0], c[1], c[2]};
        m[i] += d;
        out.push_back(std::to_string(m[0]) + "," + std::to_string(m[1]) + "," +
                      std::to_string(m[2]));
      }
    return out;
  };
}

// Reduced words over a,A,b,B; identity is the empty string.
NeighborOracle f2_tree_oracle() {
  return [](const std::string& w) {
    const std::string letters = "aAbB";
    auto inverse = [](char c) -> char {
      switch (c) {
        case 'a': return 'A';
        case 'A': return 'a';
        case 'b': return 'B';
        default: return 'b';
      }
    };
    std::vector<std::string> out;
    for (char x : letters) {
      if (!w.empty() && w.back() == inverse(x))
        out.push_back(w.substr(0, w.size() - 1));
      else
        out.push_back(w + x);
    }
    return out;
  };
}

BallGraph make_path(int n) {
  BallGraph b;
  for (int i = 0; i < n; ++i) b.add_vertex(std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1);
  b.finalize();
  return b;
}

BallGraph make_cycle(int n) {
  BallGraph b;
  for (int i = 0; i < n; ++i) b.add_vertex(std::to_string(i));
  for (int i = 0; i < n; ++i) b.add_edge(i, (i + 1) % n);
  b.finalize();
  return b;
}

BallGraph make_complete(int n) {
  BallGraph b;
  for (int i = 0; i < n; ++i) b.add_vertex(std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) b.add_edge(i, j);
  b.finalize();
  return b;
}

BallGraph make_ladder(int half_length) {
  BallGraph b;
  std::map<std::pair<int, int>, VertexId> id;
  for (int i = -half_length; i <= half_length; ++i)
    for (int j = 0; j < 2; ++j)
      id[{i, j}] =
          b.add_vertex(std::to_string(i) + "," + std::to_string(j),
                       std::abs(i));
  for (int i = -half_length; i <= half_length; ++i) {
    b.add_edge(id[{i, 0}], id[{i, 1}]);
    if (i < half_length) {
      b.add_edge(id[{i, 0}], id[{i + 1, 0}]);
      b.add_edge(id[{i, 1}], id[{i + 1, 1}]);
    }
  }
  for (int j = 0; j < 2; ++j) {
    b.set_frontier(id[{-half_length, j}]);
    b.set_frontier(id[{half_length, j}]);
  }
  b.set_radius(half_length);
  b.finalize();
  return b;
}

// Independent min-cut oracle: minimum boundary multiplicity over all vertex
// partitions separating sources from sinks.
std::int64_t bruteforce_min_separating(const BallGraph& b,
                                       const std::vector<VertexId>& sources,
                                       const std::vector<VertexId>& sinks) {
  const std::size_t n = b.vertex_count();
  std::int64_t best = -1;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (VertexId s : sources) ok &= bool(mask & (1u << s));
    for (VertexId t : sinks) ok &= !(mask & (1u << t));
    if (!ok) continue;
    std::int64_t cost = 0;
    for (const auto& e : b.edges())
      if (bool(mask & (1u << e.u)) != bool(mask & (1u << e.v))) cost += e.mult;
    if (best < 0 || cost < best) best = cost;
  }
  return best;
}

// Lexicographically least (shortlex element order, shorter-list-first) side
// among all minimum separating partitions.
std::vector<VertexId> bruteforce_lex_least_side(
    const BallGraph& b, const std::vector<VertexId>& sources,
    const std::vector<VertexId>& sinks) {
  const std::size_t n = b.vertex_count();
  std::int64_t best = bruteforce_min_separating(b, sources, sinks);
  std::vector<std::string> best_list;
  std::vector<VertexId> best_side;
  auto list_less = [](const std::vector<std::string>& a,
                      const std::vector<std::string>& bl) {
    std::size_t m = std::min(a.size(), bl.size());
    for (std::size_t i = 0; i < m; ++i) {
      if (shortlex_less(a[i], bl[i])) return true;
      if (shortlex_less(bl[i], a[i])) return false;
    }
    return a.size() < bl.size();
  };
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (VertexId s : sources) ok &= bool(mask & (1u << s));
    for (VertexId t : sinks) ok &= !(mask & (1u << t));
    if (!ok) continue;
    std::int64_t cost = 0;
    for (const auto& e : b.edges())
      if (bool(mask & (1u << e.u)) != bool(mask & (1u << e.v))) cost += e.mult;
    if (cost != best) continue;
    std::vector<std::string> list;
    std::vector<VertexId> side;
    for (VertexId v = 0; v < n; ++v)
      if (mask & (1u << v)) {
        list.push_back(b.label(v));
        side.push_back(v);
      }
    std::sort(list.begin(), list.end(), shortlex_less);
    if (best_list.empty() && best_side.empty() && list.empty()) continue;
    if (best_side.empty() || list_less(list, best_list)) {
      best_list = list;
      best_side = side;
    }
  }
  return best_side;
}

BallGraph random_connected_multigraph(std::mt19937& rng, int n, int extra,
                                      int max_mult) {
  BallGraph b;
  for (int i = 0; i < n; ++i) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "v%02d", i);
    b.add_vertex(buf);
  }
  std::uniform_int_distribution<int> mult(1, max_mult);
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    b.add_edge(parent(rng), i, mult(rng));
  }
  for (int k = 0; k < extra; ++k) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    int u = pick(rng), v = pick(rng);
    if (u != v) b.add_edge(u, v, mult(rng));
  }
  b.finalize();
  return b;
}

}  // namespace

TEST_CASE("grow_ball on the line") {
  auto ball = grow_ball(line_oracle(), "0", 3);
  CHECK(ball.vertex_count() == 7);
  std::set<std::string> frontier;
  for (VertexId v = 0; v < ball.vertex_count(); ++v)
    if (ball.is_frontier(v)) frontier.insert(ball.label(v));
  CHECK(frontier == std::set<std::string>{"-3", "3"});
}

TEST_CASE("grow_ball on the 4-regular tree") {
  auto ball = grow_ball(f2_tree_oracle(), "", 2);
  CHECK(ball.vertex_count() == 17);  // 1 + 4 + 12
  int frontier = 0;
  for (VertexId v = 0; v < ball.vertex_count(); ++v)
    if (ball.is_frontier(v)) ++frontier;
  CHECK(frontier == 12);
}

TEST_CASE("grow_ball on the grid") {
  auto ball = grow_ball(grid_oracle(), "0,0", 2);
  CHECK(ball.vertex_count() == 13);  // 2r^2 + 2r + 1
  auto r4 = grow_ball(grid_oracle(), "0,0", 4);
  CHECK(r4.vertex_count() == 41);
}

TEST_CASE("grow_ball determinism") {
  auto b1 = grow_ball(grid_oracle(), "0,0", 4);
  auto b2 = grow_ball(grid_oracle(), "0,0", 4);
  CHECK(b1.labels() == b2.labels());
  CHECK(b1.edges() == b2.edges());
}

TEST_CASE("grow_ball vertex budget") {
  CHECK_THROWS_AS(grow_ball(grid_oracle(), "0,0", 10, 50), budget_error);
}

TEST_CASE("end_probe on line, grid, tree") {
  auto rep_line = end_probe(line_oracle(), "0", 1, 5);
  CHECK(rep_line.unbounded_count == 2);
  CHECK(rep_line.stable);

  auto rep_grid = end_probe(grid_oracle(), "0,0", 2, 8);
  CHECK(rep_grid.unbounded_count == 1);
  CHECK(rep_grid.stable);

  auto rep_tree = end_probe(f2_tree_oracle(), "", 1, 4);
  CHECK(rep_tree.unbounded_count == 12);
  CHECK(rep_tree.stable);

  // Independent check of the tree count: components of B(4)-B(1) via
  // union-find over the grown ball's edges.
  auto ball = grow_ball(f2_tree_oracle(), "", 4);
  std::vector<int> parent(ball.vertex_count());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = int(i);
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& e : ball.edges())
    if (ball.depth(e.u) > 1 && ball.depth(e.v) > 1)
      parent[find(int(e.u))] = find(int(e.v));
  std::set<int> roots;
  for (VertexId v = 0; v < ball.vertex_count(); ++v)
    if (ball.depth(v) > 1) roots.insert(find(int(v)));
  CHECK(roots.size() == 12);
}

TEST_CASE("end_probe counts for Z^n over a radius sweep") {
  for (int r = 1; r + 1 < 11; ++r)
    for (int R = r + 2; R <= 11; ++R) {
      auto rl = end_probe(line_oracle(), "0", r, R);
      CHECK(rl.unbounded_count == 2);
      auto rg = end_probe(grid_oracle(), "0,0", r, R);
      CHECK(rg.unbounded_count == 1);
    }
  auto r3 = end_probe(cube_oracle(), "0,0,0", 2, 6);
  CHECK(r3.unbounded_count == 1);
  CHECK(r3.stable);
}

TEST_CASE("min cut on a path") {
  auto b = make_path(3);
  auto cut = min_vertex_set_cut(b, {0}, {2});
  CHECK(cut.boundary_size == 1);
  CHECK(cut.side == std::vector<VertexId>{0});
}

TEST_CASE("min cut on K4 matches exhaustive enumeration") {
  auto b = make_complete(4);
  auto cut = min_vertex_set_cut(b, {0}, {3});
  CHECK(cut.boundary_size == 3);
  CHECK(cut.boundary_size == bruteforce_min_separating(b, {0}, {3}));
}

TEST_CASE("min cut on the truncated ladder") {
  auto b = make_ladder(6);
  std::vector<VertexId> left = {b.vertex("-6,0"), b.vertex("-6,1")};
  std::vector<VertexId> right = {b.vertex("6,0"), b.vertex("6,1")};
  auto cut = min_vertex_set_cut(b, left, right);
  CHECK(cut.boundary_size == 2);

  // Exhaustive oracle agreement on a truncation small enough to enumerate.
  auto small = make_ladder(3);
  std::vector<VertexId> l2 = {small.vertex("-3,0"), small.vertex("-3,1")};
  std::vector<VertexId> r2 = {small.vertex("3,0"), small.vertex("3,1")};
  auto cut2 = min_vertex_set_cut(small, l2, r2);
  CHECK(cut2.boundary_size == bruteforce_min_separating(small, l2, r2));
  CHECK(cut2.boundary_size == 2);
}

TEST_CASE("min cut rejects disconnected input") {
  BallGraph b;
  b.add_vertex("p");
  b.add_vertex("q");
  b.finalize();
  CHECK_THROWS_AS(min_vertex_set_cut(b, {0}, {1}), disconnected_input_error);
}

TEST_CASE("min cut agrees with brute force on random multigraphs") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 4 + int(rng() % 7);  // 4..10
    auto b = random_connected_multigraph(rng, n, n, 3);
    VertexId s = 0, t = VertexId(n - 1);
    auto cut = min_vertex_set_cut(b, {s}, {t});
    CHECK(cut.boundary_size == bruteforce_min_separating(b, {s}, {t}));
    auto want = bruteforce_lex_least_side(b, {s}, {t});
    CHECK(cut.side == want);
  }
}

TEST_CASE("doubling multiplicities doubles every boundary and keeps sides") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 4 + int(rng() % 6);
    auto b = random_connected_multigraph(rng, n, n / 2, 2);
    auto cut = min_vertex_set_cut(b, {0}, {VertexId(n - 1)});
    BallGraph doubled = b;
    for (auto& e : doubled.mutable_edges()) e.mult *= 2;
    auto cut2 = min_vertex_set_cut(doubled, {0}, {VertexId(n - 1)});
    CHECK(cut2.boundary_size == 2 * cut.boundary_size);
    CHECK(cut2.side == cut.side);
  }
}

TEST_CASE("enumerate_cuts_bruteforce on tiny graphs") {
  auto path = make_path(3);
  auto cuts = enumerate_cuts_bruteforce(path, 1);
  REQUIRE(cuts.size() == 2);
  CHECK(cuts[0].side == std::vector<VertexId>{0});
  CHECK(cuts[1].side == std::vector<VertexId>{0, 1});

  // 4-cycle with boundary <= 2: four single-vertex sides plus the two
  // adjacent-pair sides (each counted once up to complementation).
  auto cyc = make_cycle(4);
  auto c2 = enumerate_cuts_bruteforce(cyc, 2);
  CHECK(c2.size() == 6);
  for (const auto& c : c2) CHECK(c.boundary_size == 2);

  auto tri = make_cycle(3);
  CHECK(enumerate_cuts_bruteforce(tri, 1).empty());

  BallGraph big;
  for (int i = 0; i < 17; ++i) big.add_vertex(std::to_string(i));
  big.finalize();
  CHECK_THROWS_AS(enumerate_cuts_bruteforce(big, 1), budget_error);
}

TEST_CASE("min cut equals brute-force cut enumeration minimum") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 4 + int(rng() % 9);  // 4..12
    auto b = random_connected_multigraph(rng, n, n / 2, 2);
    auto cuts = enumerate_cuts_bruteforce(b, 1'000'000);
    if (cuts.empty()) continue;
    std::int64_t best = cuts.front().boundary_size;
    // Compare against the best terminal pair realizing it.
    std::int64_t best_flow = -1;
    for (VertexId s = 0; s < VertexId(n); ++s)
      for (VertexId t = 0; t < VertexId(n); ++t) {
        if (s == t) continue;
        auto cut = min_vertex_set_cut(b, {s}, {t});
        if (best_flow < 0 || cut.boundary_size < best_flow)
          best_flow = cut.boundary_size;
      }
    CHECK(best_flow == best);
  }
}

TEST_CASE("ball JSON and DOT round trip") {
  auto ball = grow_ball(grid_oracle(), "0,0", 2);
  auto j = ball_to_json(ball);
  auto back = ball_from_json(j);
  CHECK(back.labels() == ball.labels());
  CHECK(back.edges() == ball.edges());
  for (VertexId v = 0; v < ball.vertex_count(); ++v)
    CHECK(back.is_frontier(v) == ball.is_frontier(v));
  auto dot = ball_to_dot(ball);
  CHECK(dot.find("style=dashed") != std::string::npos);
  CHECK(ball_to_json(back) == j);
}
