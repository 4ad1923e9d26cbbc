#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace hsp {

// Locally finite graphs are given by neighbor oracles over canonical label
// strings; the label doubles as the vertex identity.  A BallGraph is the
// finite BFS window cut out of such a graph.

using VertexId = std::uint32_t;

/// Neighbor oracle: canonical label -> neighbor labels.  Must be
/// deterministic; grow_ball sorts neighbor lists shortlex anyway so any
/// stable enumeration order is acceptable.
using NeighborOracle =
    std::function<std::vector<std::string>(const std::string&)>;

/// Shortlex order on labels: length first, then lexicographic.
inline bool shortlex_less(const std::string& a, const std::string& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct WeightedEdge {
  VertexId u, v;         // u < v
  std::int64_t mult = 1; // positive multiplicity (parallel-edge count)

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

class BallGraph {
 public:
  BallGraph() = default;

  // Construction helpers (used both by grow_ball and by hand-built windows).
  VertexId add_vertex(const std::string& label, int depth = 0);
  void add_edge(VertexId u, VertexId v, std::int64_t mult = 1);
  void set_radius(int r) { radius_ = r; }
  void set_frontier(VertexId v, bool on = true);

  std::size_t vertex_count() const { return labels_.size(); }
  const std::string& label(VertexId v) const { return labels_[v]; }
  const std::vector<std::string>& labels() const { return labels_; }
  int depth(VertexId v) const { return depths_[v]; }
  int radius() const { return radius_; }
  bool is_frontier(VertexId v) const { return frontier_[v]; }
  bool has_vertex(const std::string& label) const {
    return index_.count(label) > 0;
  }
  VertexId vertex(const std::string& label) const { return index_.at(label); }

  /// Sorted edge list; each unordered pair occurs once with its multiplicity.
  const std::vector<WeightedEdge>& edges() const { return edges_; }
  std::vector<WeightedEdge>& mutable_edges() { return edges_; }

  /// Adjacency as (neighbor, multiplicity) pairs, ordered by neighbor id.
  const std::vector<std::pair<VertexId, std::int64_t>>& neighbors(
      VertexId v) const;

  std::int64_t total_degree(VertexId v) const;

  /// Finalize after hand-construction: sorts/merges the edge list and
  /// rebuilds adjacency.  grow_ball calls this internally.
  void finalize();

  /// Structural checks from the type invariants: no self-loops, edges in
  /// range, distinct labels.  Throws invalid_input_error on violation.
  void validate() const;

 private:
  std::vector<std::string> labels_;
  std::vector<int> depths_;
  std::vector<bool> frontier_;
  std::map<std::string, VertexId> index_;
  std::vector<WeightedEdge> edges_;
  mutable std::vector<std::vector<std::pair<VertexId, std::int64_t>>> adj_;
  mutable bool adj_valid_ = false;
  int radius_ = 0;
};

struct Cut {
  std::vector<VertexId> side;        // sorted source-side vertex ids
  std::vector<WeightedEdge> boundary;  // sorted, with multiplicities
  std::int64_t boundary_size = 0;      // sum of boundary multiplicities
  std::int64_t wall_weight = 0;        // W(C): boundary edges lying in walls
};

struct EndReport {
  int inner_radius = 0;
  int probe_radius = 0;
  int unbounded_count = 0;  // components meeting the probe frontier
  int bounded_count = 0;
  int prev_unbounded_count = -1;  // the count at probe radius R-1
  bool stable = false;  // same unbounded count at R-1 and R
};

/// Default vertex budget for ball growth.
inline constexpr std::size_t kDefaultVertexBudget = 2'000'000;

/// BFS-exact ball of the given radius around `center`.  Deterministic:
/// vertices are discovered layer by layer, neighbors in shortlex order.
/// Throws budget_error when the vertex budget would be exceeded.
BallGraph grow_ball(const NeighborOracle& oracle, const std::string& center,
                    int radius, std::size_t budget = kDefaultVertexBudget);

/// Finite-scale end probe: classify components of B(R) - B(r).  A component
/// counts as unbounded iff it meets the R-frontier.  The report is marked
/// stable when the unbounded count agrees at probe radii R-1 and R.
EndReport end_probe(const NeighborOracle& oracle, const std::string& center,
                    int r, int R, std::size_t budget = kDefaultVertexBudget);

/// Same probe evaluated on an already-grown ball (depths must be set).
/// `restrict_to` limits the probe to an induced vertex subset (empty = all).
EndReport end_probe_on_ball(const BallGraph& ball, int r, int R,
                            const std::vector<VertexId>& restrict_to = {});

/// Connected components of an induced subgraph; returns component index per
/// listed vertex, components numbered in order of their least vertex id.
std::vector<int> induced_components(const BallGraph& ball,
                                    const std::vector<VertexId>& verts,
                                    int* component_count);

}  // namespace hsp
