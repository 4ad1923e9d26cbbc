#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "hsp/chop/pipeline.hpp"
#include "hsp/chop/report.hpp"
#include "hsp/errors.hpp"
#include "hsp/scenario/scenario.hpp"
#include "hsp/splitting/window.hpp"

#ifndef HSP_FIXTURES_DIR
#define HSP_FIXTURES_DIR "fixtures"
#endif

using namespace hsp;

namespace {
std::string fixture(const std::string& name) {
  return std::string(HSP_FIXTURES_DIR) + "/" + name;
}
}  // namespace

TEST_CASE("all shipped fixtures parse") {
  for (const char* name : {"z.scn", "f2free.scn", "bs12.scn",
                           "surface_genus2.scn", "example71.scn",
                           "example83.scn", "example84.scn"}) {
    auto sc = load_scenario_file(fixture(name));
    CHECK(!sc.name.empty());
  }
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_scenario_text("scenario v1\nname x\ngroup A bogus a\n");
    CHECK(false);
  } catch (const scenario_parse_error& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_scenario_text("nonsense\n"), scenario_parse_error);
  CHECK_THROWS_AS(
      parse_scenario_text("scenario v1\ngroup A free a\ngroup A free b\n"),
      scenario_parse_error);
}

TEST_CASE("scenario splitting matches the programmatic fixture") {
  auto sc = load_scenario_file(fixture("surface_genus2.scn"));
  auto spec = sc.require_splitting();
  auto direct = hsp_test::surface_splitting();
  auto w1 = spec->grow_window(3);
  auto w2 = direct->grow_window(3);
  CHECK(w1.ball.vertex_count() == w2.ball.vertex_count());
  CHECK(w1.ball.edges().size() == w2.ball.edges().size());
}

TEST_CASE("capability-rejected fixtures still load for syntactic checks") {
  for (const char* name : {"example83.scn", "example84.scn"}) {
    auto sc = load_scenario_file(fixture(name));
    REQUIRE(sc.splitting.has_value());
    CHECK(!sc.splitting->built);
    CHECK(!sc.splitting->engine_error.empty());
    CHECK_THROWS_AS(sc.require_splitting(), capability_error);
  }
  auto e83 = load_scenario_file(fixture("example83.scn"));
  auto rep = syntactic_checks(*e83.splitting);
  CHECK(rep.hnn_central_match);
  CHECK(rep.delta_witness.has_value());
  CHECK(rep.c_probe.has_value());
  CHECK(rep.c_probe->unbounded_count >= 2);  // Z * F2 has many ends
  REQUIRE(rep.conclusions.size() == 2);
  for (const auto& c : rep.conclusions)
    CHECK(c.find("cited") != std::string::npos);
}

TEST_CASE("double scenarios build the renamed copy") {
  auto sc = parse_scenario_text(R"(scenario v1
name dz
group A abelian a1 a2
group C abelian z
splitting double
vertex A
edge C
embed base : z -> a1
)");
  REQUIRE(sc.splitting.has_value());
  REQUIRE(sc.splitting->built);
  auto spec = sc.splitting->built;
  CHECK(spec->double_flag());
  CHECK(spec->vertex_group_b()->generator_names() ==
        std::vector<std::string>{"a1_2", "a2_2"});
  auto rep = syntactic_checks(*sc.splitting);
  CHECK(rep.double_match);
  // the probe of the double itself runs (engines exist)
  CHECK(rep.g_probe.has_value());
}

TEST_CASE("chop report JSON is byte-identical across runs") {
  auto run = [&]() {
    auto sc = load_scenario_file(fixture("example71.scn"));
    auto spec = sc.require_splitting();
    ChopParams params;
    params.radius = sc.probe_radius;
    params.inner_radius = sc.probe_inner;
    auto rep = iterate_chop(spec, sc.rounds, params);
    return chop_report_to_json(rep).dump(2);
  };
  CHECK(run() == run());
}

TEST_CASE("artificial split reproduces the example71 shape") {
  auto base = hsp_test::example71_base_splitting();
  // D = factor 0 of B, presented as (Z_u x Z_v) * Z_w
  auto dab = MarkedGroup::make_free_abelian("Dab2", {"du", "dv"});
  auto dc = MarkedGroup::make_free_abelian("Dc2", {"dw"});
  auto D = MarkedGroup::make_free_product("D2", {dab, dc});
  GroupPtr B = base->vertex_group_b();
  auto d_engine = make_subgroup_engine(
      B, D, {parse_word(*B, "p"), parse_word(*B, "q"), parse_word(*B, "r")});
  auto split = artificial_split(base, D, d_engine);

  CHECK(split->vertex_group_a()->kind() == MarkedGroup::Kind::free_product);
  CHECK(split->edge_group().get() == D.get());
  CHECK(!split->is_trivial_splitting());
  // same Cayley window sizes as the directly declared artificial fixture
  auto direct = hsp_test::example71_splitting();
  CHECK(split->grow_window(2).ball.vertex_count() ==
        direct->grow_window(2).ball.vertex_count());
}

TEST_CASE("artificial split degenerate cases") {
  auto base = hsp_test::example71_base_splitting();
  GroupPtr B = base->vertex_group_b();

  // D = C: relabeling only
  auto c2 = MarkedGroup::make_free_abelian("Crel", {"ru", "rv"});
  auto d_engine = make_subgroup_engine(
      B, c2, {parse_word(*B, "p"), parse_word(*B, "q")});
  auto relabeled = artificial_split(base, c2, d_engine);
  CHECK(relabeled->edge_group().get() == c2.get());
  CHECK(relabeled->grow_window(2).ball.vertex_count() ==
        base->grow_window(2).ball.vertex_count());

  // D missing C: containment error
  auto zd = MarkedGroup::make_free_abelian("Zonly", {"zd"});
  auto bad = make_subgroup_engine(B, zd, {parse_word(*B, "d")});
  CHECK_THROWS_AS(artificial_split(base, zd, bad), invalid_input_error);

  // D = B: the edge group swallows a vertex group; flagged by refusal
  auto whole_abs = MarkedGroup::make_direct_product(
      "W", {MarkedGroup::make_free_product(
                "WF", {MarkedGroup::make_free_abelian("Wpq", {"wp", "wq"}),
                       MarkedGroup::make_free_abelian("Wr", {"wr"})}),
            MarkedGroup::make_free_abelian("Wd", {"wd"}),
            MarkedGroup::make_free_abelian("We", {"we"})});
  auto whole_engine = make_subgroup_engine(
      B, whole_abs,
      {parse_word(*B, "p"), parse_word(*B, "q"), parse_word(*B, "r"),
       parse_word(*B, "d"), parse_word(*B, "e")});
  try {
    artificial_split(base, whole_abs, whole_engine);
    CHECK(false);
  } catch (const invalid_input_error& e) {
    CHECK(std::string(e.what()).find("trivial") != std::string::npos);
  }
}

TEST_CASE("halfspace end profiles agree across the two definitions") {
  // the Cayley-window halfspace (first definition) and the tree-of-spaces
  // halfspace (third definition) report the same end counts on fixtures
  for (auto spec : {hsp_test::surface_splitting(), hsp_test::bs_splitting(2),
                    hsp_test::z2_amalgam_splitting()}) {
    auto X = tree_of_spaces(spec, 3);
    for (bool side : {false, true}) {
      auto cayley = halfspace_window(spec, spec->base_edge(), side, 3);
      auto cayley_probe = halfspace_end_probe(cayley, 1);
      auto in = chop_input_from_window(X, side);
      auto x_probe = chop_end_probe(in, 1);
      CHECK(cayley_probe.unbounded_count == x_probe.unbounded_count);
    }
  }
}

TEST_CASE("pocset file round trip drives the cube op") {
  // the file interface the CLI consumes
  Pocset chain({"A", "B", "C"});
  chain.add_less(0, 2);
  chain.add_less(2, 4);
  chain.finalize();
  auto j = chain.to_json();
  Pocset back = Pocset::from_json(j);
  auto skel = cube(back);
  CHECK(skel.vertices.size() == 4);
  CHECK(is_tree_check(skel));
}
