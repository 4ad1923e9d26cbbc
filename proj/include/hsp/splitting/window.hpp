#pragma once

#include "hsp/splitting/splitting.hpp"

namespace hsp {

/// Induced subgraph on a vertex subset, keeping labels, depths, frontier.
BallGraph induce_subgraph(const BallGraph& ball,
                          const std::vector<VertexId>& keep);

/// A halfspace of the splitting, truncated to a radius-R Cayley window:
/// vertices projecting into the chosen tree side plus the wall coset.
struct HalfspaceBall {
  TreeEdge edge;
  bool far_side = false;     // which component of T minus the edge midpoint
  BallGraph window;          // induced subgraph of the Cayley window
  std::vector<std::string> wall;  // wall vertex labels (edge-group coset)
  bool connected = true;     // disconnected-window warning when false
  int radius = 0;
};

/// Cayley halfspace window for a tree edge and side (both windows carry the wall:
/// both windows contain the wall).  `side_far` selects the component of
/// T - edge midpoint containing edge.far.
HalfspaceBall halfspace_window(const SplittingPtr& spec, const TreeEdge& edge,
                               bool side_far, int radius,
                               std::size_t budget = kDefaultVertexBudget);

/// End probe evaluated on a halfspace window (components of the window
/// minus the inner ball, unbounded iff they meet the window frontier).
EndReport halfspace_end_probe(const HalfspaceBall& hs, int inner_radius);

/// Lazy Bass-Serre tree: neighbor oracle over tree-vertex keys
/// "orbit|coset".  Vertex-degree enumeration is limited by the coset
/// enumeration radius; `frontier_limited()` reports whether any neighbor
/// list was truncated by it.
class BassSerreOracle {
 public:
  BassSerreOracle(SplittingPtr spec, int coset_radius,
                  std::size_t coset_budget = 4096);
  std::vector<std::string> neighbors(const std::string& vertex_key);
  NeighborOracle as_neighbor_oracle();
  bool frontier_limited() const { return frontier_limited_; }
  static std::string key(const TreeVertex& v);
  static TreeVertex vertex_of_key(const std::string& key);

 private:
  SplittingPtr spec_;
  int coset_radius_;
  std::size_t coset_budget_;
  bool frontier_limited_ = false;
  std::vector<Element> reps_a_;   // coset reps of C in A (left cosets)
  std::vector<Element> reps_b_;   // amalgam: C in B; HNN: C' in A
  void enumerate_reps();
};

/// Tree-of-spaces window X: the Cayley window with one layer per vertex
/// type and stable-letter/vertical edges subdivided at wall midpoints; the
/// projection p maps layer vertices to tree vertices and midpoints to edge
/// midpoints, and every fiber is connected (checked within the window).
struct TreeOfSpacesWindow {
  SplittingPtr spec;
  BallGraph graph;  // X window
  int radius = 0;

  enum class VertexKind { layer_a, layer_b, midpoint };
  std::vector<VertexKind> kind;            // per X-vertex
  std::vector<std::string> element;        // underlying group element label
  std::vector<std::string> p_image;        // tree vertex/edge coset key
  std::vector<char> edge_in_wall;          // per X-edge: lies inside a wall

  std::vector<std::string> wall_ids;                 // distinct edge cosets
  std::vector<std::vector<VertexId>> wall_fibers;    // vertices per wall
  std::vector<char> wall_fiber_connected;
  // fiber connectivity within the window: fibers disconnected by the
  // window truncation are flagged, not fatal.
  std::map<std::string, bool> vertex_fiber_connected;
  std::size_t disconnected_vertex_fibers = 0;

  /// The fibers over the base edge's endpoints and the base wall are the
  /// least truncated; they must be connected in any usable window.
  bool base_fibers_connected() const;

  /// X-vertices of the halfspace p^{-1}(side of the base edge):
  /// layer vertices over tree vertices on that side plus the wall fiber.
  std::vector<VertexId> base_halfspace(bool far_side) const;

  /// Wall fiber index of the base edge (coset "1").
  std::size_t base_wall_index() const;

  /// Translate an X-vertex by a group element; returns false when the
  /// image leaves the window.
  bool translate(const GNormalForm& g, VertexId v, VertexId* out) const;
};

TreeOfSpacesWindow tree_of_spaces(const SplittingPtr& spec, int radius,
                                  std::size_t budget = kDefaultVertexBudget);

}  // namespace hsp
