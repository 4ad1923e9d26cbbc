#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hsp/graph/ball_graph.hpp"

namespace hsp {

class MarkedGroup;
using GroupPtr = std::shared_ptr<const MarkedGroup>;

/// Signed 1-based generator index: +i / -i for the i-th generator or its
/// inverse.  Words are sequences of letters.
using Letter = std::int32_t;
using Word = std::vector<Letter>;

/// Group element in canonical normal form.  Exactly one representation is
/// populated, matching the group kind:
///   free           -> word (freely reduced letters)
///   free_abelian   -> vec (exponent vector)
///   direct_product -> comps (one element per factor)
///   free_product   -> syls (alternating nontrivial syllables)
///   trivial        -> nothing
struct Element {
  const MarkedGroup* group = nullptr;
  Word word;
  std::vector<std::int64_t> vec;
  std::vector<Element> comps;
  std::vector<std::pair<std::size_t, Element>> syls;

  bool operator==(const Element& other) const;
  bool operator!=(const Element& other) const { return !(*this == other); }
};

class MarkedGroup {
 public:
  enum class Kind { trivial, free, free_abelian, direct_product, free_product };

  static GroupPtr make_trivial(std::string name);
  static GroupPtr make_free(std::string name, std::vector<std::string> gens);
  static GroupPtr make_free_abelian(std::string name,
                                    std::vector<std::string> gens);
  static GroupPtr make_direct_product(std::string name,
                                      std::vector<GroupPtr> factors);
  static GroupPtr make_free_product(std::string name,
                                    std::vector<GroupPtr> factors);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& generator_names() const { return gens_; }
  std::size_t ngens() const { return gens_.size(); }
  const std::vector<GroupPtr>& factors() const { return factors_; }
  /// Index of the first generator of factor f within the flattened list.
  std::size_t generator_offset(std::size_t f) const { return offsets_[f]; }
  /// Which factor owns flattened generator index i (products only).
  std::size_t factor_of_generator(std::size_t i) const;

  Element identity() const;
  Element generator(std::size_t i) const;  // 0-based

 private:
  MarkedGroup() = default;
  static std::shared_ptr<MarkedGroup> build_product(std::string name,
                                                    std::vector<GroupPtr> f);
  Kind kind_ = Kind::trivial;
  std::string name_;
  std::vector<std::string> gens_;
  std::vector<GroupPtr> factors_;
  std::vector<std::size_t> offsets_;
};

bool is_identity(const Element& e);
Element multiply(const Element& a, const Element& b);
Element inverse(const Element& a);
Element power(const Element& a, std::int64_t n);

/// Flatten to a word over the group's generators (evaluating it back yields
/// the element).
Word to_word(const Element& e);
/// Canonicalize a word (fold of generator multiplications).
Element from_word(const MarkedGroup& g, const Word& w);

/// Canonical printing: `a^2*b^-1`, identity prints as `1`.  Distinct
/// elements print distinctly (labels double as vertex ids).
std::string print_element(const Element& e);

/// Parse a word in generator names: tokens split on spaces and '*', each
/// NAME or NAME^INT.  Throws invalid_input_error on unknown names.
Element parse_word(const MarkedGroup& g, const std::string& text);

/// Apply the homomorphism sending generator i of `e.group` to images[i].
Element apply_hom(const Element& e, const std::vector<Element>& images);

/// Neighbor oracle over canonical labels for the Cayley graph with respect
/// to `gens` (must be symmetric: closed under inverses).
NeighborOracle ball_oracle(GroupPtr group, std::vector<Element> gens);

/// Word length of the canonical form (number of letters).
std::size_t element_length(const Element& e);

}  // namespace hsp
