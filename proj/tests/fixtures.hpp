#pragma once

// Programmatic versions of the shipped scenario fixtures, shared by the
// unit tests and the acceptance suite.

#include "hsp/group/subgroup.hpp"
#include "hsp/splitting/splitting.hpp"

namespace hsp_test {

using namespace hsp;

/// Genus-2 surface splitting F2 *_<[a,b]=[c,d]> F2.
inline SplittingPtr surface_splitting() {
  auto FA = MarkedGroup::make_free("FA", {"a", "b"});
  auto FB = MarkedGroup::make_free("FB", {"c", "d"});
  auto Z = MarkedGroup::make_free("Cz", {"z"});
  auto ea = make_subgroup_engine(FA, Z, {parse_word(*FA, "a b a^-1 b^-1")});
  auto eb = make_subgroup_engine(FB, Z, {parse_word(*FB, "c d c^-1 d^-1")});
  return Splitting::amalgam("surface_genus2", FA, FB, Z, ea, eb);
}

/// BS(1,2) = HNN(Z_a over <a>, phi(a) = a^2).
inline SplittingPtr bs_splitting(int n = 2) {
  auto A = MarkedGroup::make_free_abelian("A", {"a"});
  auto C = MarkedGroup::make_free_abelian("Cz", {"z"});
  auto minus = make_subgroup_engine(A, C, {parse_word(*A, "a")});
  auto plus =
      make_subgroup_engine(A, C, {power(A->generator(0), n)});
  return Splitting::hnn("bs1" + std::to_string(n), A, C, minus, plus);
}

/// Free splitting F2 = Z_x * Z_y (trivial edge group).
inline SplittingPtr f2_free_splitting() {
  auto Za = MarkedGroup::make_free_abelian("Zx", {"x"});
  auto Zb = MarkedGroup::make_free_abelian("Zy", {"y"});
  auto T = MarkedGroup::make_trivial("C1");
  auto ta = make_subgroup_engine(Za, T, {});
  auto tb = make_subgroup_engine(Zb, T, {});
  return Splitting::amalgam("f2free", Za, Zb, T, ta, tb);
}

/// Z^2 *_Z Z^2: both vertex groups one-ended.
inline SplittingPtr z2_amalgam_splitting() {
  auto A = MarkedGroup::make_free_abelian("A2", {"a1", "a2"});
  auto B = MarkedGroup::make_free_abelian("B2", {"b1", "b2"});
  auto C = MarkedGroup::make_free_abelian("Cz", {"z"});
  auto ea = make_subgroup_engine(A, C, {parse_word(*A, "a1")});
  auto eb = make_subgroup_engine(B, C, {parse_word(*B, "b1")});
  return Splitting::amalgam("z2_amalgam", A, B, C, ea, eb);
}

/// Z *_Z Z with both inclusions of index 2 (tree is a 2-regular line).
inline SplittingPtr index2_line_splitting() {
  auto A = MarkedGroup::make_free_abelian("Zx", {"x"});
  auto B = MarkedGroup::make_free_abelian("Zy", {"y"});
  auto C = MarkedGroup::make_free_abelian("Cz", {"z"});
  auto ea = make_subgroup_engine(A, C, {parse_word(*A, "x^2")});
  auto eb = make_subgroup_engine(B, C, {parse_word(*B, "y^2")});
  return Splitting::amalgam("index2_line", A, B, C, ea, eb);
}

/// The artificial splitting of Example 7.1-type data:
///   G = (Z^3 * Z_c) *_D B,  D = (Z_a x Z_b) * Z_c,
///   B = ((Z_p x Z_q) * Z_r) x Z_d x Z_e,
/// with D embedded as <a,b,c> on the left and factor 0 on the right.
inline SplittingPtr example71_splitting() {
  auto z3 = MarkedGroup::make_free_abelian("Z3", {"a", "b", "f"});
  auto zc = MarkedGroup::make_free_abelian("Zc", {"c"});
  auto Ap = MarkedGroup::make_free_product("Ap", {z3, zc});

  auto zpq = MarkedGroup::make_free_abelian("Zpq", {"p", "q"});
  auto zr = MarkedGroup::make_free_abelian("Zr", {"r"});
  auto fac0 = MarkedGroup::make_free_product("F0", {zpq, zr});
  auto zd = MarkedGroup::make_free_abelian("Zd", {"d"});
  auto ze = MarkedGroup::make_free_abelian("Ze", {"e"});
  auto B = MarkedGroup::make_direct_product("B", {fac0, zd, ze});

  auto dab = MarkedGroup::make_free_abelian("Dab", {"u", "v"});
  auto dc = MarkedGroup::make_free_abelian("Dc", {"w"});
  auto D = MarkedGroup::make_free_product("D", {dab, dc});

  auto ea = make_subgroup_engine(Ap, D,
                                 {parse_word(*Ap, "a"), parse_word(*Ap, "b"),
                                  parse_word(*Ap, "c")});
  auto eb = make_subgroup_engine(B, D,
                                 {parse_word(*B, "p"), parse_word(*B, "q"),
                                  parse_word(*B, "r")});
  return Splitting::amalgam("example71", Ap, B, D, ea, eb);
}

/// The base splitting of Example 7.1 before the artificial move:
/// G = Z^3 *_C B with C = Z_a x Z_b.
inline SplittingPtr example71_base_splitting() {
  auto z3 = MarkedGroup::make_free_abelian("Z3", {"a", "b", "f"});
  auto zpq = MarkedGroup::make_free_abelian("Zpq", {"p", "q"});
  auto zr = MarkedGroup::make_free_abelian("Zr", {"r"});
  auto fac0 = MarkedGroup::make_free_product("F0", {zpq, zr});
  auto zd = MarkedGroup::make_free_abelian("Zd", {"d"});
  auto ze = MarkedGroup::make_free_abelian("Ze", {"e"});
  auto B = MarkedGroup::make_direct_product("B", {fac0, zd, ze});
  auto C = MarkedGroup::make_free_abelian("Cab", {"u", "v"});
  auto ea = make_subgroup_engine(z3, C,
                                 {parse_word(*z3, "a"), parse_word(*z3, "b")});
  auto eb = make_subgroup_engine(B, C,
                                 {parse_word(*B, "p"), parse_word(*B, "q")});
  return Splitting::amalgam("example71_base", z3, B, C, ea, eb);
}

}  // namespace hsp_test
