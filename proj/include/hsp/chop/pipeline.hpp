#pragma once

#include "hsp/chop/chop.hpp"

namespace hsp {

struct ChopParams {
  int radius = 4;         // tree-of-spaces window radius
  int inner_radius = 1;   // end-probe inner ball
  std::size_t budget = kDefaultVertexBudget;
  int wall_tree_radius = 2;   // include walls within this tree distance
  std::size_t max_walls = 40;
  bool apply_multiedge = false;  // multi-edge modification with n = N+1
};

/// Base-edge halfspace of a tree-of-spaces window as a ChopInput, with the
/// wall fiber elements acting as partial translations.
ChopInput chop_input_from_window(const TreeOfSpacesWindow& X, bool far_side);

/// Visible walls (up to the tree-distance and count caps), each with its
/// oriented support and the translated class map of the base wall's cut.
std::vector<WallData> wall_data_from_window(const TreeOfSpacesWindow& X,
                                            bool far_side, const P0Result& p0,
                                            const ChopInput& in,
                                            const ChopParams& params);

struct RoundReport {
  EndReport near_probe, far_probe;
  bool chopped = false;
  bool chose_far = false;
  HalfspaceCut cut;
  std::int64_t multiedge_n = 1;
  P0Result p0;
  PResult p;
  TPrimeResult tprime;
  // new-splitting window checks
  bool check_edge_trees = false;  // every T_e a vertex or a non-trivial finite split
  bool check_some_nontrivial = false;  // some T_{e0} is not a single vertex
  bool check_edge_map_injective = false;  // tau injective on the window
  std::optional<std::string> hyperbolic_witness;
  // W-minimal cut sanity on visible sub-halfspaces: each lies wholly on
  // one side; a split one has at most one frontier-reaching piece
  bool subhalfspaces_one_side = true;
  bool split_subhalfspaces_one_deep = true;
  // class fibers are permuted by the sampled wall action
  bool class_fibers_equivariant = true;
  std::vector<EndReport> region_probes;  // T'-halfspace windows
  bool regions_one_ended = false;
  std::vector<std::string> notes;
};

struct ChopReport {
  std::string scenario;
  int radius = 0;
  int rounds_completed = 0;
  bool no_chop_needed = false;
  bool terminated = false;
  std::vector<RoundReport> rounds;
  std::vector<std::string> capability_stops;
};

/// The upgrade loop at window scale: probe, cut, chop, re-probe the
/// new halfspace regions.  Termination by accessibility is replaced by
/// max_rounds; a second multi-ended round stops with a capability report
/// (re-splitting extraction is outside the engine classes).
ChopReport iterate_chop(const SplittingPtr& spec, int max_rounds,
                        const ChopParams& params = {});

}  // namespace hsp
