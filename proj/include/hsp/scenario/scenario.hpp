#pragma once

#include <iosfwd>
#include <map>
#include <optional>

#include "hsp/splitting/extras.hpp"

namespace hsp {

// Scenario files: line-oriented declarations with a versioned header.
//
//   scenario v1
//   name surface_genus2
//   group FA free a b
//   group Cz free z
//   group P  freeproduct FA FB        (references earlier groups)
//   group Q  directproduct P Zd
//   group T  trivial
//   splitting amalgam | hnn | double
//   vertex <group>                    (twice for amalgams)
//   edge <group>
//   embed <target> : z -> a b a^-1 b^-1 ; ...
//       target = vertex group name | minus | plus | base
//   flag stable-letter-central | double | assume-one-ended
//   copy-suffix _2                    (doubles)
//   main <group>                      (no splitting: probe this group)
//   probe inner 1 | probe radius 4 | budget 100000 | rounds 3
//
// Parsing failures carry the offending line number.

struct Scenario {
  std::string name;
  std::map<std::string, GroupPtr> groups;
  std::vector<std::string> group_order;
  std::optional<SplittingDescription> splitting;
  std::string main_group;
  int probe_inner = 1;
  int probe_radius = 4;
  std::size_t budget = kDefaultVertexBudget;
  int rounds = 3;

  /// The built splitting; throws capability_error with the recorded
  /// diagnostics when the edge group is outside the engine classes.
  SplittingPtr require_splitting() const;

  /// Oracle for plain end probes: the main group's Cayley graph.
  NeighborOracle main_oracle() const;
};

Scenario parse_scenario(std::istream& in);
Scenario parse_scenario_text(const std::string& text);
Scenario load_scenario_file(const std::string& path);

}  // namespace hsp
