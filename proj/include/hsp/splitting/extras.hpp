#pragma once

#include <optional>

#include "json.hpp"

#include "hsp/splitting/splitting.hpp"

namespace hsp {

/// The artificial-splitting move: given G = A *_C B and C <= D <= B,
/// rebuild G as (A *_C D) *_D B.  Supported when the composite vertex
/// group collapses into the marked-group classes: D must be presented as a
/// free product with one factor mapping isomorphically onto C (then
/// A *_C D is the free product of A with the remaining factors), or D = C
/// (pure relabeling).  Anything else is a capability error.
SplittingPtr artificial_split(const SplittingPtr& spec, GroupPtr d_abstract,
                              const EnginePtr& d_engine_in_b);

/// Word-level description of a splitting: enough to run the syntactic
/// pattern checkers even when no engine class supports the edge group.
struct SplittingDescription {
  enum class Kind { amalgam, hnn };
  Kind kind = Kind::amalgam;
  std::string name;
  GroupPtr A, B;  // B null for HNN
  GroupPtr C;
  std::vector<std::string> embed_a_words;  // per C-generator (minus side)
  std::vector<std::string> embed_b_words;  // amalgam B side / HNN plus side
  bool stable_letter_central = false;
  bool double_flag = false;
  bool assume_one_ended = false;  // literature-backed hypothesis flag
  SplittingPtr built;             // set when engines are available
  std::string engine_error;       // capability diagnostics otherwise
};

struct SyntacticReport {
  bool hnn_central_match = false;  // stable letter commutes with C
  bool double_match = false;       // B is a renamed copy of A across C
  bool relation_verified_in_g = false;  // t c = c t checked via normalize
  std::optional<nlohmann::json> delta_witness;  // {1,t,t^2,...}C sub-window
  std::optional<EndReport> g_probe;  // one-endedness probe of G when possible
  bool g_one_ended_assumed = false;
  std::optional<EndReport> c_probe;  // end probe of the edge group
  std::vector<std::string> conclusions;  // strings tagged "cited:"
  std::vector<std::string> notes;
};

/// Pattern checks for the two elementary one-ended-halfspace constructions
/// (central stable letter; doubles), with cited conclusions.  Conclusions
/// are emitted only when the one-endedness hypothesis is probed or
/// explicitly assumed, and are always tagged as cited claims.
SyntacticReport syntactic_checks(const SplittingDescription& desc,
                                 int probe_inner = 1, int probe_radius = 3,
                                 std::size_t budget = 200'000);

nlohmann::json syntactic_report_to_json(const SyntacticReport& rep);

}  // namespace hsp
