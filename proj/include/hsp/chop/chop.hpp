#pragma once

#include <optional>

#include "hsp/graph/mincut.hpp"
#include "hsp/pocset/pocset.hpp"
#include "hsp/splitting/window.hpp"

namespace hsp {

// The chopping pipeline: from a multi-ended halfspace window to the new
// tree T'.  Everything runs on a ChopInput -- a finite window of a
// halfspace with its wall and a list of partial translations -- so both
// spec-backed windows and synthetic fixtures use the same code.

/// A partial isometry of the window (the action of one group element),
/// given as a partial vertex map; kNowhere marks images outside the window.
struct Translation {
  std::string label;
  std::vector<VertexId> image;  // per window vertex; kNowhere if unmapped
  static constexpr VertexId kNowhere = VertexId(-1);
};

struct ChopInput {
  BallGraph graph;                 // the ambient window (X)
  std::vector<char> edge_in_wall;  // per graph edge
  std::vector<VertexId> h0;        // the halfspace vertex set
  std::vector<VertexId> wall;      // its wall (subset of h0)
  std::vector<Translation> wall_action;  // stabilizer elements acting
  int probe_radius = 0;
};

struct HalfspaceCut {
  Cut cut;                 // side within h0, boundary, W(C)
  bool wall_edge_in_boundary = false;      // delta C meets the wall
  bool wall_sides_reach_frontier = false;  // both wall sides reach the frontier
  std::vector<std::string> anomalies;
};

/// End probe of the halfspace window: components of h0 minus the
/// inner-radius ball, unbounded iff they meet the window frontier.
EndReport chop_end_probe(const ChopInput& in, int inner_radius);

/// Minimum cuts between all pairs of unbounded components of the halfspace
/// window, ranked by (wall weight, boundary size, side labels); returns
/// none when the halfspace probes one-ended.  Cut-sanity violations are
/// reported in the result, not silently dropped.
std::optional<HalfspaceCut> find_halfspace_cut(const ChopInput& in,
                                               int inner_radius);

/// Multi-edge modification: multiply every wall edge multiplicity by n.
void multiedge_modify(ChopInput& in, std::int64_t n);
/// Exact bookkeeping for a stored cut: new |dC| = |dC| + (n-1) W(C).
Cut multiedge_adjust(const ChopInput& in, const Cut& cut, std::int64_t n);

/// One stored wall translate g*delta and the side labeling it induces.
struct CutTranslate {
  std::string label;             // acting element
  std::vector<WeightedEdge> edges;
  std::vector<int> side;         // per window vertex: 1 / 0 / -1 unknown
  std::size_t unknown_count = 0;
};

struct ClassMap {
  std::vector<int> class_of;        // per window vertex; -1 = unclassified
  int class_count = 0;
  std::vector<char> deep;           // per class: meets frontier off the wall
  std::vector<std::vector<char>> signature;  // per class: side bits
};

struct P0Result {
  bool nested = false;              // Kron criterion at window scale
  std::vector<CutTranslate> translates;
  Pocset p0 = Pocset({});
  CubeComplexSkeleton t0;
  bool t0_is_tree = false;
  ClassMap classes;
  std::vector<int> lambda_vertex;   // per class: T0 vertex index
  // translation witness: g with g D strictly inside D
  std::optional<std::string> translation_witness;
  // stabilizer sizes of the stored translates (finite in the window)
  std::vector<int> translate_stabilizer_sizes;
  std::vector<std::string> notes;
};

/// Collect the wall-action translates of the cut boundary, verify pairwise
/// nestedness, cube the window pocset P0 and extract the class map.
P0Result build_p0_t0(const ChopInput& in, const HalfspaceCut& hc);

// ------------------------------------------------------------------ P

/// Oriented halfspace of the ambient window, for the P construction:
/// support plus the tree data needed by the structural order rules.
struct WallData {
  std::string id;                        // wall identifier
  bool in_base_orbit = true;             // g h0-orbit wall vs H^#
  std::vector<char> side_support;        // X-vertices of the positive side
  std::vector<char> wall_vertices;       // X-vertices of the wall itself
  // class map of the wall translate (empty when not in the base orbit or
  // not visible); class_of[v] classifies the positive-side vertices
  std::vector<int> class_of;
  int class_count = 0;
  std::vector<char> deep;
};

struct PElementKey {
  std::size_t wall;   // index into the wall list
  int cls;            // class id for base-orbit walls; -1 for plain
  bool positive;      // ClassSide / PlainHalfspace vs the starred side
  bool operator<(const PElementKey& o) const {
    return std::tie(wall, cls, positive) < std::tie(o.wall, o.cls, o.positive);
  }
  bool operator==(const PElementKey&) const = default;
};

struct PResult {
  Pocset p = Pocset({});
  std::vector<PElementKey> element_of_pair;  // pair i -> its positive key
  bool axioms_ok = false;
  bool no_transverse = false;
  bool one_row_ok = false;
  std::vector<std::string> violations;
};

/// Build the pocset P from the visible walls using the structural order
/// rules (tree nesting of halfspace supports plus class data); the coarse
/// inclusion relation is never evaluated.
PResult build_p_order(const std::vector<WallData>& walls);

struct TPrimeResult {
  CubeComplexSkeleton tprime;
  bool is_tree = false;
  // tau: T' edge pair -> (T0 vertex, wall coset) for base-orbit pairs,
  // or the single vertex of T_e for plain pairs; stored as strings.
  std::vector<std::string> tau;
  bool tau_injective = false;
  // phi: per T' vertex, the induced orientation of every wall; checked
  // complete and consistent against the support nesting.
  bool phi_complete = false;
  bool phi_consistent = false;
  std::vector<std::string> notes;
};

TPrimeResult cube_to_tprime(const std::vector<WallData>& walls,
                            const PResult& p);

}  // namespace hsp
