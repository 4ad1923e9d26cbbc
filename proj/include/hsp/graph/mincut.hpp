#pragma once

#include <optional>
#include <vector>

#include "hsp/graph/ball_graph.hpp"

namespace hsp {

/// Wall-edge predicate used to compute W(C); empty means no wall edges.
using WallEdgePredicate = std::function<bool(VertexId, VertexId)>;

/// Minimum edge cut between `sources` and `sinks` in the window, respecting
/// multiplicities (Dinic max-flow).  The returned side contains the sources.
/// Among all minimum cuts, the side whose sorted label list is
/// lexicographically least is returned (shorter list wins on ties).
/// Throws disconnected_input_error when sources and sinks live in different
/// components of the window.
Cut min_vertex_set_cut(const BallGraph& ball,
                       const std::vector<VertexId>& sources,
                       const std::vector<VertexId>& sinks,
                       const WallEdgePredicate& wall = {});

/// Exhaustive cut enumeration on tiny windows (<= 16 vertices, else refuses):
/// every side whose induced subgraphs are both connected and whose boundary
/// multiplicity total is <= max_boundary, deduplicated by complementation
/// (the side containing the shortlex-least label is kept).
std::vector<Cut> enumerate_cuts_bruteforce(const BallGraph& ball,
                                           std::int64_t max_boundary,
                                           const WallEdgePredicate& wall = {});

/// Recompute boundary, boundary_size and wall_weight of a side within a
/// window.  The side must be a valid vertex subset.
Cut make_cut(const BallGraph& ball, std::vector<VertexId> side,
             const WallEdgePredicate& wall = {});

}  // namespace hsp
