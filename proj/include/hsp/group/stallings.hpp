#pragma once

#include <deque>
#include <map>

#include "hsp/group/subgroup.hpp"

namespace hsp {

/// Folded core automaton of a finitely generated subgroup of a free group.
/// Each directed transition carries a history word over the subgroup's own
/// generators, maintained through the foldings, so that reading any
/// base-to-base path yields both the ambient word and an expression of it
/// in subgroup generators.
class StallingsEngine : public SubgroupEngine {
 public:
  StallingsEngine(GroupPtr ambient, GroupPtr abstract,
                  std::vector<Element> images,
                  std::size_t coset_budget = kDefaultCosetBudget);

  bool contains(const Element& g) const override;
  std::optional<Word> express_word(const Element& g) const override;
  Element right_coset_rep(const Element& g) const override;
  std::string kind_name() const override { return "stallings-core"; }

  /// Rank of the folded core (1 - V + E); equals the subgroup's free rank.
  std::size_t core_rank() const { return rank_; }

 private:
  struct Edge {
    int to = -1;
    Word hist;
  };
  // trans_[state][letter] with signed letters; twin invariant:
  // trans_[s][x] = {t, h}  <=>  trans_[t][-x] = {s, h^-1}.
  std::vector<std::map<Letter, Edge>> trans_;
  int base_ = 0;
  std::size_t rank_ = 0;
  std::size_t coset_budget_;

  // Lazy Schreier graph for coset representatives: core states plus tail
  // states grown on demand.  Tails are trees hanging off the core, so a
  // tail state's canonical word is its parent's word plus the forced
  // letter; the shortlex BFS itself never leaves the core.
  // Confine each engine to one worker.
  mutable std::vector<std::map<Letter, int>> schreier_;
  mutable std::vector<Word> state_rep_;     // canonical word per state
  mutable std::vector<char> rep_known_;
  mutable std::size_t core_states_ = 0;
  mutable std::vector<Letter> letter_order_;

  void build_core(const std::vector<Element>& images);
  void fold();
  int trace(const Word& w, bool* ok) const;
  int schreier_trace(const Word& w) const;
  void ensure_rep(int state) const;
};

}  // namespace hsp
