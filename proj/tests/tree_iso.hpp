#pragma once

// Canonical rooted-tree codes (AHU) for unlabeled tree isomorphism, shared
// by the unit tests and the acceptance suite.

#include <algorithm>
#include <deque>
#include <string>
#include <vector>

namespace hsp_test {

inline std::string ahu_code(const std::vector<std::vector<std::size_t>>& adj,
                            std::size_t root, std::size_t parent) {
  std::vector<std::string> kids;
  for (std::size_t w : adj[root])
    if (w != parent) kids.push_back(ahu_code(adj, w, root));
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (auto& k : kids) out += k;
  out += ")";
  return out;
}

/// Canonical code of an unrooted tree: root at the centroid(s), take the
/// lexicographically least code.
inline std::string canonical_tree_code(
    const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  if (n == 0) return "";
  // peel leaves to find the 1- or 2-vertex center
  std::vector<std::size_t> degree(n);
  std::deque<std::size_t> leaves;
  std::size_t remaining = n;
  for (std::size_t v = 0; v < n; ++v) {
    degree[v] = adj[v].size();
    if (degree[v] <= 1) leaves.push_back(v);
  }
  std::vector<char> removed(n, 0);
  while (remaining > 2) {
    std::deque<std::size_t> next;
    for (std::size_t v : leaves) {
      removed[v] = 1;
      --remaining;
      for (std::size_t w : adj[v])
        if (!removed[w] && --degree[w] == 1) next.push_back(w);
    }
    leaves = std::move(next);
  }
  std::vector<std::string> codes;
  for (std::size_t v = 0; v < n; ++v)
    if (!removed[v]) codes.push_back(ahu_code(adj, v, v));
  std::sort(codes.begin(), codes.end());
  return codes.front();
}

}  // namespace hsp_test
