#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hsp/group/marked_group.hpp"

namespace hsp {

// Subgroup engines supply membership, expressions in the subgroup's own
// generators, and canonical coset representatives for edge groups.
// Supported classes: Stallings cores in free groups, Hermite-normal-form
// lattices in Z^n, factor selections, and (direct or free) products of
// engines.  Everything else is a capability error.

class SubgroupEngine {
 public:
  virtual ~SubgroupEngine() = default;

  const MarkedGroup* ambient() const { return ambient_.get(); }
  GroupPtr ambient_ptr() const { return ambient_; }
  /// The subgroup presented as a marked group of its own (the edge group C).
  GroupPtr abstract_group() const { return abstract_; }
  /// Images in the ambient group of the abstract group's generators.
  const std::vector<Element>& generator_images() const { return images_; }

  virtual bool contains(const Element& g) const = 0;

  /// Word over the abstract generators (1-based signed) whose image is g;
  /// nullopt iff g is not a member.
  virtual std::optional<Word> express_word(const Element& g) const = 0;

  /// Canonical representative of the right coset C*g.
  virtual Element right_coset_rep(const Element& g) const = 0;

  /// Canonical representative of the left coset g*C.
  virtual Element left_coset_rep(const Element& g) const;

  virtual std::string kind_name() const = 0;

  /// Member of the abstract group mapping onto g; throws if not a member.
  Element express(const Element& g) const;
  /// Image of an abstract-group element in the ambient group.
  Element include(const Element& c) const;

  bool is_whole_group() const;
  bool is_trivial_subgroup() const;

 protected:
  SubgroupEngine(GroupPtr ambient, GroupPtr abstract,
                 std::vector<Element> images);
  GroupPtr ambient_;
  GroupPtr abstract_;
  std::vector<Element> images_;
};

using EnginePtr = std::shared_ptr<const SubgroupEngine>;

/// Build the engine for the subgroup of `ambient` generated by `images`,
/// presented by `abstract` (generator i maps to images[i]).  The engine
/// class is inferred from the ambient kind; unsupported shapes raise
/// capability_error, structural mismatches raise invalid_input_error.
EnginePtr make_subgroup_engine(GroupPtr ambient, GroupPtr abstract,
                               std::vector<Element> images);

/// Search budget for lazy Schreier coset enumeration.
inline constexpr std::size_t kDefaultCosetBudget = 500'000;

}  // namespace hsp
