#include <deque>
#include <random>
#include <set>

#include "doctest.h"
#include "hsp/errors.hpp"
#include "hsp/pocset/pocset.hpp"
#include "hsp/pocset/wallspace.hpp"
#include "tree_iso.hpp"

using namespace hsp;

namespace {

Pocset independent_pairs(int k) {
  std::vector<std::string> names;
  for (int i = 0; i < k; ++i) names.push_back("p" + std::to_string(i));
  Pocset p(names);
  p.finalize();
  return p;
}

BallGraph random_tree(std::mt19937& rng, int n) {
  BallGraph t;
  for (int i = 0; i < n; ++i) t.add_vertex("t" + std::to_string(i));
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> parent(0, i - 1);
    t.add_edge(VertexId(parent(rng)), VertexId(i));
  }
  t.finalize();
  return t;
}

std::vector<std::vector<std::size_t>> skeleton_adj(
    const CubeComplexSkeleton& s) {
  std::vector<std::vector<std::size_t>> adj(s.vertices.size());
  for (auto [u, v] : s.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

std::vector<std::vector<std::size_t>> ball_adj(const BallGraph& b) {
  std::vector<std::vector<std::size_t>> adj(b.vertex_count());
  for (const auto& e : b.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

}  // namespace

TEST_CASE("width of small pocsets") {
  CHECK(pocset_width(independent_pairs(1)) == 1);

  // two nested pairs A < B
  Pocset nested({"A", "B"});
  nested.add_less(0, 2);
  nested.finalize();
  CHECK(pocset_width(nested) == 1);

  for (int k = 1; k <= 4; ++k)
    CHECK(pocset_width(independent_pairs(k)) == k);

  CHECK_THROWS_AS(pocset_width(independent_pairs(13)), budget_error);
}

TEST_CASE("cube of a single pair and of transverse pairs") {
  auto one = cube(independent_pairs(1));
  CHECK(one.vertices.size() == 2);
  CHECK(one.edges.size() == 1);
  CHECK(one.dimension == 1);
  CHECK(is_tree_check(one));

  auto square = cube(independent_pairs(2));
  CHECK(square.vertices.size() == 4);
  CHECK(square.edges.size() == 4);
  CHECK(square.dimension == 2);
  CHECK(!is_tree_check(square));

  for (int k = 1; k <= 4; ++k) {
    auto c = cube(independent_pairs(k));
    CHECK(c.vertices.size() == (std::size_t(1) << k));
    CHECK(c.dimension == k);
  }
}

TEST_CASE("halfspace pocset of tiny trees") {
  // single edge
  BallGraph e;
  e.add_vertex("x");
  e.add_vertex("y");
  e.add_edge(0, 1);
  e.finalize();
  auto pe = tree_halfspace_pocset(e);
  CHECK(pe.pair_count() == 1);

  // star with three leaves: positive halfspaces pairwise incomparable but
  // never transverse (each is below the others' stars)
  BallGraph star;
  star.add_vertex("c");
  for (int i = 0; i < 3; ++i) {
    star.add_vertex("l" + std::to_string(i));
    star.add_edge(0, VertexId(i + 1));
  }
  star.finalize();
  auto ps = tree_halfspace_pocset(star);
  REQUIRE(ps.pair_count() == 3);
  // element 2i = side toward the leaf
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      if (i == j) continue;
      CHECK(!ps.leq(2 * i, 2 * j));
      CHECK(!ps.leq(2 * j, 2 * i));
      CHECK(ps.less(2 * i, Pocset::star(2 * j)));
      CHECK(!ps.transverse(2 * i, 2 * j));
    }

  // path with three edges: a chain of pairs
  BallGraph path;
  for (int i = 0; i < 4; ++i) path.add_vertex("v" + std::to_string(i));
  for (int i = 0; i < 3; ++i) path.add_edge(VertexId(i), VertexId(i + 1));
  path.finalize();
  auto pp = tree_halfspace_pocset(path);
  REQUIRE(pp.pair_count() == 3);
  int comparable = 0;
  for (std::size_t a = 0; a < pp.size(); ++a)
    for (std::size_t b = 0; b < pp.size(); ++b)
      if (a != b && pp.less(a, b)) ++comparable;
  CHECK(comparable > 0);
  auto c = cube(pp);
  CHECK(c.vertices.size() == 4);
  CHECK(is_tree_check(c));
  // path skeleton: two vertices of degree 1, two of degree 2
  auto adj = skeleton_adj(c);
  std::multiset<std::size_t> degs;
  for (auto& l : adj) degs.insert(l.size());
  CHECK(degs == std::multiset<std::size_t>{1, 1, 2, 2});
}

TEST_CASE("cube recovers the tree: random round trips") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + int(rng() % 60);  // up to 60 edges
    auto t = random_tree(rng, n + 1);
    auto p = tree_halfspace_pocset(t);
    auto c = cube(p);
    REQUIRE(is_tree_check(c));
    REQUIRE(c.vertices.size() == t.vertex_count());
    CHECK(hsp_test::canonical_tree_code(skeleton_adj(c)) ==
          hsp_test::canonical_tree_code(ball_adj(t)));
  }
}

TEST_CASE("no transverse pair implies the cubing is a tree") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 2 + int(rng() % 40);
    auto t = random_tree(rng, n);
    auto p = tree_halfspace_pocset(t);
    for (std::size_t a = 0; a < p.size(); ++a)
      for (std::size_t b = a + 1; b < p.size(); ++b)
        REQUIRE(!p.transverse(a, b));
    CHECK(is_tree_check(cube(p)));
  }
}

TEST_CASE("wallspace pocsets and the lambda map") {
  // four points on a line with initial-segment walls
  std::vector<std::vector<std::size_t>> walls = {{0}, {0, 1}, {0, 1, 2}};
  auto ws = wallspace_pocset(4, walls);
  auto c = cube(ws.pocset);
  CHECK(c.vertices.size() == 4);
  CHECK(is_tree_check(c));
  std::set<std::vector<char>> images;
  for (const auto& uf : ws.lambda) images.insert(uf.bits(ws.pocset));
  CHECK(images.size() == 4);  // lambda injective

  // one wall only: lambda has two fibers
  auto ws1 = wallspace_pocset(5, {{0, 2}});
  std::set<std::vector<char>> f1;
  for (const auto& uf : ws1.lambda) f1.insert(uf.bits(ws1.pocset));
  CHECK(f1.size() == 2);

  // 2x2 grid with one row wall and one column wall: cube is a square
  auto ws2 = wallspace_pocset(4, {{0, 1}, {0, 2}});
  auto c2 = cube(ws2.pocset);
  CHECK(c2.vertices.size() == 4);
  CHECK(c2.edges.size() == 4);
  CHECK(!is_tree_check(c2));
}

TEST_CASE("wallspace cube vertices lie between lambda images") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 3 + rng() % 5;
    std::vector<std::vector<std::size_t>> walls;
    int nwalls = 1 + int(rng() % 4);
    for (int w = 0; w < nwalls; ++w) {
      std::vector<std::size_t> side;
      for (std::size_t x = 0; x < n; ++x)
        if (rng() % 2) side.push_back(x);
      if (side.empty() || side.size() == n) continue;
      walls.push_back(side);
    }
    if (walls.empty()) continue;
    auto ws = wallspace_pocset(n, walls);
    auto c = cube(ws.pocset);
    if (c.vertices.size() > 12) continue;

    // BFS distances over the skeleton
    auto adj = skeleton_adj(c);
    auto bfs = [&](std::size_t src) {
      std::vector<int> d(adj.size(), -1);
      std::deque<std::size_t> q = {src};
      d[src] = 0;
      while (!q.empty()) {
        auto v = q.front();
        q.pop_front();
        for (auto w : adj[v])
          if (d[w] < 0) {
            d[w] = d[v] + 1;
            q.push_back(w);
          }
      }
      return d;
    };
    // indices of lambda images in the vertex list
    std::vector<std::size_t> lam;
    for (const auto& uf : ws.lambda)
      for (std::size_t i = 0; i < c.vertices.size(); ++i)
        if (c.vertices[i] == uf) {
          lam.push_back(i);
          break;
        }
    REQUIRE(lam.size() == n);
    for (std::size_t u = 0; u < c.vertices.size(); ++u) {
      bool between = false;
      auto du = bfs(u);
      for (std::size_t a : lam) {
        auto da = bfs(a);
        for (std::size_t b : lam)
          if (da[u] >= 0 && du[b] >= 0 && da[b] == da[u] + du[b]) between = true;
      }
      CHECK(between);
    }
  }
}

TEST_CASE("pocset JSON round trip") {
  Pocset nested({"A", "B"});
  nested.add_less(0, 2);
  nested.finalize();
  auto j = nested.to_json();
  auto back = Pocset::from_json(j);
  CHECK(back.to_json() == j);
  CHECK(back.less(0, 2));
  CHECK(back.less(3, 1));
}

TEST_CASE("pocset axiom violations are rejected") {
  Pocset bad({"A"});
  bad.add_less(0, 1);  // A < A*: comparable with star
  CHECK_THROWS_AS(bad.finalize(), invalid_input_error);
}
