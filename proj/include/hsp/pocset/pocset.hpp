#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace hsp {

// Finite pocsets: a strict partial order with an order-reversing free
// involution.  Elements come in involution pairs (2k, 2k+1); infinite
// pocsets are only ever handled as generator-closed finite windows and all
// outputs carry the window tag.

class Pocset {
 public:
  /// `pairs` names: element 2i gets names[i], element 2i+1 its star.
  explicit Pocset(std::vector<std::string> pair_names);

  std::size_t size() const { return 2 * names_.size(); }
  std::size_t pair_count() const { return names_.size(); }
  static std::size_t star(std::size_t e) { return e ^ 1; }
  std::string element_name(std::size_t e) const;

  /// Declare a < b (strict).  Closure under involution (b* < a*) is applied
  /// automatically; call finalize() to take the transitive closure and
  /// check the pocset axioms.
  void add_less(std::size_t a, std::size_t b);
  void finalize();

  bool less(std::size_t a, std::size_t b) const;       // strict
  bool leq(std::size_t a, std::size_t b) const;
  bool nested(std::size_t a, std::size_t b) const;
  bool transverse(std::size_t a, std::size_t b) const;

  bool window_mode() const { return window_; }
  void set_window_mode(bool w) { window_ = w; }

  nlohmann::json to_json() const;
  static Pocset from_json(const nlohmann::json& j);

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<char>> less_;
  bool finalized_ = false;
  bool window_ = false;
};

/// Exact width: maximum pairwise-transverse subset size.  Exhaustive with
/// pruning; refuses pocsets with more than 24 elements.
int pocset_width(const Pocset& p);

struct Ultrafilter {
  // chosen[i] = the element picked from pair i (2i or 2i+1)
  std::vector<std::uint32_t> chosen;
  bool operator==(const Ultrafilter&) const = default;
  /// Canonical bit-vector: bit i set iff pair i chose the starred element.
  std::vector<char> bits(const Pocset& p) const;
};

struct CubeComplexSkeleton {
  std::vector<Ultrafilter> vertices;  // sorted by characteristic bit-vector
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  int dimension = 0;
  bool window = false;

  nlohmann::json to_json(const Pocset& p) const;
  std::string to_dot(const Pocset& p) const;
};

/// All complete consistent choices (DCC is automatic on finite windows),
/// edges between ultrafilters differing in exactly one pair.
/// Throws budget_error when more than `vertex_budget` ultrafilters exist.
CubeComplexSkeleton cube(const Pocset& p, std::size_t vertex_budget = 1u << 20);

/// Connected and acyclic?
bool is_tree_check(const CubeComplexSkeleton& skel);

}  // namespace hsp
