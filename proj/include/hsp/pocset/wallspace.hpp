#pragma once

#include "hsp/graph/ball_graph.hpp"
#include "hsp/pocset/pocset.hpp"

namespace hsp {

/// Halfspace pocset of a finite tree: one pair per edge, ordered by
/// inclusion of the two complementary sides.  The tree is given as a
/// BallGraph that must be connected and acyclic.
Pocset tree_halfspace_pocset(const BallGraph& tree);

struct Wallspace {
  Pocset pocset;
  /// lambda[x] = ultrafilter of point x (index into `points`)
  std::vector<Ultrafilter> lambda;
};

/// Wallspace pocset on a finite point set: walls are proper nonempty
/// subsets (complements added and deduplicated); the order is inclusion and
/// lambda(x) = the sides containing x.
Wallspace wallspace_pocset(std::size_t npoints,
                           const std::vector<std::vector<std::size_t>>& walls,
                           const std::vector<std::string>& wall_names = {});

}  // namespace hsp
