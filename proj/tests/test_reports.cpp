// Report outputs satisfy the shipped schemas (required keys and schema
// tags), and identical inputs produce byte-identical JSON.

#include <fstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "hsp/chop/report.hpp"
#include "hsp/graph/serialize.hpp"
#include "hsp/scenario/scenario.hpp"
#include "hsp/splitting/window.hpp"

#ifndef HSP_FIXTURES_DIR
#define HSP_FIXTURES_DIR "fixtures"
#endif
#ifndef HSP_SCHEMAS_DIR
#define HSP_SCHEMAS_DIR "schemas"
#endif

using namespace hsp;
using nlohmann::json;

namespace {

json load_schema(const std::string& name) {
  std::ifstream f(std::string(HSP_SCHEMAS_DIR) + "/" + name);
  REQUIRE(f.good());
  return json::parse(f);
}

void check_against(const json& doc, const std::string& schema_file) {
  json schema = load_schema(schema_file);
  for (const auto& key : schema.at("required")) {
    std::string msg = schema_file + " requires " + key.get<std::string>();
    CHECK_MESSAGE(doc.contains(key.get<std::string>()), msg);
  }
  CHECK(doc.at("schema") ==
        schema.at("properties").at("schema").at("const"));
}

}  // namespace

TEST_CASE("ball, ends and cut reports carry their schema keys") {
  auto f2 = hsp_test::f2_free_splitting();
  auto w = f2->grow_window(3);
  check_against(ball_to_json(w.ball), "ball.schema.json");

  auto rep = end_probe(f2->cayley_oracle(), "1", 1, 3);
  check_against(end_report_to_json(rep), "ends.schema.json");

  auto cut = min_vertex_set_cut(w.ball, {w.ball.vertex("x")},
                                {w.ball.vertex("y")});
  check_against(cut_to_json(w.ball, cut), "cut.schema.json");
}

TEST_CASE("pocset and cube reports carry their schema keys") {
  Pocset p({"A", "B"});
  p.add_less(0, 2);
  p.finalize();
  check_against(p.to_json(), "pocset.schema.json");
  check_against(cube(p).to_json(p), "cube.schema.json");
}

TEST_CASE("chop and syntactic reports carry their schema keys") {
  auto sc = load_scenario_file(std::string(HSP_FIXTURES_DIR) + "/bs12.scn");
  ChopParams params;
  params.radius = 3;
  auto rep = iterate_chop(sc.require_splitting(), 1, params);
  check_against(chop_report_to_json(rep), "chop.schema.json");

  auto s83 =
      load_scenario_file(std::string(HSP_FIXTURES_DIR) + "/example83.scn");
  check_against(syntactic_report_to_json(syntactic_checks(*s83.splitting)),
                "syntactic.schema.json");
}

TEST_CASE("reports are byte-identical across runs") {
  auto once = [&]() {
    auto sc =
        load_scenario_file(std::string(HSP_FIXTURES_DIR) + "/surface_genus2.scn");
    auto spec = sc.require_splitting();
    auto hs = halfspace_window(spec, spec->base_edge(), true, 3);
    return ball_to_json(hs.window).dump() +
           end_report_to_json(halfspace_end_probe(hs, 1)).dump();
  };
  CHECK(once() == once());
}
