#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hsp/graph/ball_graph.hpp"
#include "hsp/group/subgroup.hpp"

namespace hsp {

// Amalgams A *_C B and HNN extensions A *_C with computable normal forms,
// the lazy Bass-Serre tree, the orbit projection, and Cayley windows.
//
// Conventions, fixed once:
//  * amalgam normal form: alternating left-coset representatives with a
//    trailing edge-group part,  g = s1 s2 ... sn * c;
//  * HNN relation t^-1 c t = phi(c); Britton form
//    g = r0 t^{e1} r1 t^{e2} ... t^{ek} * tail with left-coset reps (mod C
//    before t, mod C' = phi(C) before t^-1) and no pinches;
//  * the generating set is S_A (+ S_B or t) augmented with the edge-group
//    generator images, so walls are Cayley graphs of C.

struct AmalgamNF {
  struct Syl {
    bool in_a;    // which vertex group the representative lives in
    Element rep;  // canonical left-coset representative, not in C
    bool operator==(const Syl&) const = default;
  };
  std::vector<Syl> syls;
  Element tail;  // element of the abstract edge group C
  bool operator==(const AmalgamNF&) const = default;
};

struct HnnNF {
  struct Block {
    Element rep;  // left-coset representative in A
    int sign;     // the following stable-letter power: +1 or -1
    bool operator==(const Block&) const = default;
  };
  std::vector<Block> blocks;
  Element tail;  // arbitrary element of A
  bool operator==(const HnnNF&) const = default;
};

struct GNormalForm {
  std::variant<AmalgamNF, HnnNF> form;
  bool operator==(const GNormalForm&) const = default;
};

struct TreeVertex {
  std::string coset;  // label of the canonical coset representative
  int orbit;          // 0 = A-side, 1 = B-side (amalgams); 0 for HNN
  bool operator==(const TreeVertex&) const = default;
  bool operator<(const TreeVertex& o) const {
    return std::tie(orbit, coset) < std::tie(o.orbit, o.coset);
  }
};

struct TreeEdge {
  std::string coset;  // canonical label of the edge-group coset
  TreeVertex near;    // endpoint on the A-orbit (amalgam) / closer to base
  TreeVertex far;     // the other endpoint
  bool operator==(const TreeEdge&) const = default;
};

/// One generator of G as a multiplier.
struct GMul {
  enum class Tag { a_elt, b_elt, stable };
  Tag tag;
  Element elt;  // for a_elt / b_elt
  int tsign = 0;
  std::string print;
};

struct CayleyWindow;

class Splitting : public std::enable_shared_from_this<Splitting> {
 public:
  static std::shared_ptr<Splitting> amalgam(std::string name, GroupPtr A,
                                            GroupPtr B, GroupPtr C,
                                            EnginePtr engine_a,
                                            EnginePtr engine_b,
                                            bool double_flag = false);
  /// HNN over A with t^-1 c t = phi(c): engine_minus recognizes C <= A,
  /// engine_plus recognizes C' = phi(C) <= A; generator i of the abstract C
  /// maps to engine_minus image (as c) and engine_plus image (as phi(c)).
  static std::shared_ptr<Splitting> hnn(std::string name, GroupPtr A,
                                        GroupPtr C, EnginePtr engine_minus,
                                        EnginePtr engine_plus,
                                        bool stable_letter_central = false);

  bool is_amalgam() const { return kind_ == Kind::amalgam; }
  const std::string& name() const { return name_; }
  GroupPtr vertex_group_a() const { return A_; }
  GroupPtr vertex_group_b() const { return B_; }
  GroupPtr edge_group() const { return C_; }
  EnginePtr engine_a() const { return eng_a_; }
  EnginePtr engine_b() const { return eng_b_; }
  bool double_flag() const { return double_flag_; }
  bool stable_letter_central() const { return stable_central_; }

  /// True iff the splitting is trivial (an engine equals its vertex group;
  /// for HNN both associated subgroups equal A).  Analysis pipelines refuse
  /// trivial splittings.
  bool is_trivial_splitting() const { return trivial_; }
  void require_nontrivial() const;

  GNormalForm identity_nf() const;
  GNormalForm mult(const GNormalForm& g, const GMul& s) const;
  GNormalForm mult(const GNormalForm& g, const GNormalForm& h) const;
  GNormalForm inverse_nf(const GNormalForm& g) const;
  bool is_identity_nf(const GNormalForm& g) const;

  /// Canonical label: the product spelling of the normal form.  Labels are
  /// injective (they evaluate back to the element).
  std::string label(const GNormalForm& g) const;

  /// Flatten to generator multipliers (for products and translations).
  std::vector<GMul> multipliers(const GNormalForm& g) const;

  /// Parse a word over generator names (A-, B-generators and `t`).
  GNormalForm normalize(const std::string& word) const;

  /// The generating set (vertex-group generators, the stable letter, and
  /// the edge-group images), symmetric.
  const std::vector<GMul>& generating_set() const { return gens_; }

  /// The element is in the base-edge wall (the C-coset of the identity).
  bool in_base_wall(const GNormalForm& g) const;

  /// Orbit projection g -> gA; orbit tag distinguishes vertex types.
  TreeVertex project(const GNormalForm& g) const;
  /// The vertex whose coset contains g as an element (amalgam B-side when
  /// the form starts in B); used for halfspace side tests.
  TreeVertex project_b(const GNormalForm& g) const;

  /// Base edge: wall = C, endpoints the two basepoints (amalgam A|B, HNN
  /// A | tA).
  TreeEdge base_edge() const;

  /// Vertex of the coset containing a given element; g*vertex translation.
  TreeVertex translate_vertex(const GNormalForm& g, const TreeVertex& v) const;

  /// Does the tree vertex lie on the `far` side of the base edge?
  bool base_far_side(const TreeVertex& v) const;

  /// Side test for an arbitrary element against the base edge: far side,
  /// near side, and wall membership (wall elements are on both sides).
  bool element_far_side(const GNormalForm& g) const;

  /// Neighbor oracle over canonical element labels (feeds graph-core).
  NeighborOracle cayley_oracle() const;

  /// Cached normal form for a label previously produced by this object.
  const GNormalForm& lookup(const std::string& label) const;
  /// Normal form for any product spelling (parses and normalizes).
  GNormalForm element_of_label(const std::string& label) const;

  CayleyWindow grow_window(int radius,
                           std::size_t budget = kDefaultVertexBudget) const;

 private:
  enum class Kind { amalgam, hnn };
  Splitting() = default;
  void build_generating_set();
  GNormalForm mult_a(const GNormalForm& g, const Element& a) const;
  GNormalForm mult_b(const GNormalForm& g, const Element& b) const;
  GNormalForm mult_t(const GNormalForm& g, int sign) const;

  Kind kind_ = Kind::amalgam;
  std::string name_;
  GroupPtr A_, B_, C_;
  EnginePtr eng_a_, eng_b_;
  bool double_flag_ = false;
  bool stable_central_ = false;
  bool trivial_ = false;
  std::vector<GMul> gens_;
  mutable std::map<std::string, GNormalForm> label_cache_;
};

using SplittingPtr = std::shared_ptr<Splitting>;

/// A grown Cayley window: the ball plus the normal form of every vertex.
struct CayleyWindow {
  BallGraph ball;
  std::vector<GNormalForm> forms;  // parallel to ball vertex ids
};

}  // namespace hsp
