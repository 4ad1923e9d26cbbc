#include "hsp/pocset/pocset.hpp"

#include <algorithm>
#include <deque>

#include "hsp/errors.hpp"

namespace hsp {

Pocset::Pocset(std::vector<std::string> pair_names)
    : names_(std::move(pair_names)) {
  less_.assign(size(), std::vector<char>(size(), 0));
}

std::string Pocset::element_name(std::size_t e) const {
  return e % 2 == 0 ? names_[e / 2] : names_[e / 2] + "*";
}

void Pocset::add_less(std::size_t a, std::size_t b) {
  if (a >= size() || b >= size())
    throw invalid_input_error("pocset element out of range");
  if (a == b) return;
  less_[a][b] = 1;
  less_[star(b)][star(a)] = 1;
  finalized_ = false;
}

void Pocset::finalize() {
  const std::size_t n = size();
  // Floyd-Warshall style transitive closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (less_[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (less_[k][j]) less_[i][j] = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (less_[i][i])
      throw invalid_input_error("pocset order has a cycle at " +
                                element_name(i));
    if (less_[i][star(i)] || less_[star(i)][i])
      throw invalid_input_error("element comparable with its star: " +
                                element_name(i));
  }
  finalized_ = true;
}

bool Pocset::less(std::size_t a, std::size_t b) const {
  if (!finalized_) throw invalid_input_error("pocset not finalized");
  return less_[a][b];
}

bool Pocset::leq(std::size_t a, std::size_t b) const {
  return a == b || less(a, b);
}

bool Pocset::nested(std::size_t a, std::size_t b) const {
  return leq(a, b) || leq(b, a);
}

bool Pocset::transverse(std::size_t a, std::size_t b) const {
  if (a == b || a == star(b)) return false;
  return !nested(a, b) && !nested(a, star(b));
}

nlohmann::json Pocset::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "pocset/1";
  j["window"] = window_;
  j["pairs"] = names_;
  auto order = nlohmann::json::array();
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < size(); ++b)
      if (less_[a][b]) order.push_back({element_name(a), element_name(b)});
  j["strict_order"] = std::move(order);
  return j;
}

Pocset Pocset::from_json(const nlohmann::json& j) {
  if (j.value("schema", "") != std::string("pocset/1"))
    throw invalid_input_error("unknown pocset schema");
  std::vector<std::string> names;
  for (const auto& n : j.at("pairs")) names.push_back(n.get<std::string>());
  Pocset p(names);
  p.set_window_mode(j.value("window", false));
  auto find = [&](const std::string& s) -> std::size_t {
    bool starred = !s.empty() && s.back() == '*';
    std::string base = starred ? s.substr(0, s.size() - 1) : s;
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == base) return 2 * i + (starred ? 1 : 0);
    throw invalid_input_error("unknown pocset element " + s);
  };
  for (const auto& pr : j.at("strict_order"))
    p.add_less(find(pr[0].get<std::string>()), find(pr[1].get<std::string>()));
  p.finalize();
  return p;
}

int pocset_width(const Pocset& p) {
  if (p.size() > 24) throw budget_error("width refuses > 24 elements");
  // Max clique in the transversality graph, branch and bound over pairs:
  // at most one element per involution pair can join a transverse clique.
  int best = 0;
  std::vector<std::size_t> clique;
  std::function<void(std::size_t)> go = [&](std::size_t pair) {
    best = std::max(best, int(clique.size()));
    if (pair >= p.pair_count()) return;
    if (int(clique.size() + (p.pair_count() - pair)) <= best) return;
    for (std::size_t e : {2 * pair, 2 * pair + 1}) {
      bool ok = true;
      for (std::size_t c : clique)
        if (!p.transverse(c, e)) {
          ok = false;
          break;
        }
      if (ok) {
        clique.push_back(e);
        go(pair + 1);
        clique.pop_back();
      }
    }
    go(pair + 1);
  };
  go(0);
  return best;
}

std::vector<char> Ultrafilter::bits(const Pocset& p) const {
  std::vector<char> b(p.pair_count(), 0);
  for (std::size_t i = 0; i < chosen.size(); ++i) b[i] = char(chosen[i] & 1);
  return b;
}

CubeComplexSkeleton cube(const Pocset& p, std::size_t vertex_budget) {
  const std::size_t np = p.pair_count();
  // DFS over pairs with consistency propagation: choosing A forces every
  // B with A <= B; i.e. we may not choose B* when A < B for a chosen A.
  std::vector<Ultrafilter> out;
  std::vector<std::uint32_t> pick(np, 0);

  // consistency: chosen set S must be upward closed: if a in S and a < b
  // then b in S. Since exactly one per pair is chosen, check pairwise.
  std::function<void(std::size_t)> go = [&](std::size_t pair) {
    if (out.size() > vertex_budget)
      throw budget_error("cube: ultrafilter budget exceeded");
    if (pair == np) {
      out.push_back(Ultrafilter{pick});
      return;
    }
    for (std::uint32_t e : {std::uint32_t(2 * pair), std::uint32_t(2 * pair + 1)}) {
      bool ok = true;
      for (std::size_t q = 0; q < pair && ok; ++q) {
        std::size_t c = pick[q];
        // violation: c < e* (then e* is forced in) or e < c* (c* forced)
        if (p.less(c, Pocset::star(e)) || p.less(e, Pocset::star(c))) ok = false;
      }
      if (!ok) continue;
      pick[pair] = e;
      go(pair + 1);
    }
  };
  go(0);

  std::sort(out.begin(), out.end(),
            [&](const Ultrafilter& a, const Ultrafilter& b) {
              return a.bits(p) < b.bits(p);
            });

  CubeComplexSkeleton skel;
  skel.window = p.window_mode();
  skel.vertices = std::move(out);
  for (std::size_t i = 0; i < skel.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < skel.vertices.size(); ++j) {
      int diff = 0;
      for (std::size_t q = 0; q < np; ++q)
        if (skel.vertices[i].chosen[q] != skel.vertices[j].chosen[q]) ++diff;
      if (diff == 1) skel.edges.push_back({std::uint32_t(i), std::uint32_t(j)});
    }
  // Dimension = width.  Pocsets with no transverse pair have width <= 1
  // regardless of size; only genuinely wide pocsets need the clique search.
  bool any_transverse = false;
  for (std::size_t a = 0; a < p.size() && !any_transverse; ++a)
    for (std::size_t b = a + 1; b < p.size() && !any_transverse; ++b)
      if (p.transverse(a, b)) any_transverse = true;
  skel.dimension = any_transverse ? pocset_width(p) : (np > 0 ? 1 : 0);
  return skel;
}

bool is_tree_check(const CubeComplexSkeleton& skel) {
  const std::size_t n = skel.vertices.size();
  if (n == 0) return false;
  if (skel.edges.size() + 1 != n) return false;
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (auto [u, v] : skel.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<char> seen(n, 0);
  std::deque<std::uint32_t> q = {0};
  seen[0] = 1;
  std::size_t cnt = 1;
  while (!q.empty()) {
    auto v = q.front();
    q.pop_front();
    for (auto w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        ++cnt;
        q.push_back(w);
      }
  }
  return cnt == n;
}

nlohmann::json CubeComplexSkeleton::to_json(const Pocset& p) const {
  nlohmann::ordered_json j;
  j["schema"] = "cube/1";
  j["window"] = window;
  auto verts = nlohmann::json::array();
  for (const auto& uf : vertices) {
    auto names = nlohmann::json::array();
    for (auto e : uf.chosen) names.push_back(p.element_name(e));
    verts.push_back(std::move(names));
  }
  j["vertices"] = std::move(verts);
  auto es = nlohmann::json::array();
  for (auto [u, v] : edges) es.push_back({u, v});
  j["edges"] = std::move(es);
  j["dimension"] = dimension;
  return j;
}

std::string CubeComplexSkeleton::to_dot(const Pocset& p) const {
  (void)p;
  std::string out = "graph cube {\n";
  for (std::size_t i = 0; i < vertices.size(); ++i)
    out += "  u" + std::to_string(i) + ";\n";
  for (auto [u, v] : edges)
    out += "  u" + std::to_string(u) + " -- u" + std::to_string(v) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace hsp
