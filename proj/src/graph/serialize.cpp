#include "hsp/graph/serialize.hpp"

#include <sstream>

#include "hsp/errors.hpp"

namespace hsp {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

json ball_to_json(const BallGraph& ball) {
  ordered j;
  j["schema"] = "ball/1";
  j["radius"] = ball.radius();
  j["vertices"] = ball.labels();
  auto edges = json::array();
  for (const auto& e : ball.edges())
    edges.push_back({ball.label(e.u), ball.label(e.v), e.mult});
  j["edges"] = std::move(edges);
  auto fr = json::array();
  for (VertexId v = 0; v < ball.vertex_count(); ++v)
    if (ball.is_frontier(v)) fr.push_back(ball.label(v));
  j["frontier"] = std::move(fr);
  auto depths = json::array();
  for (VertexId v = 0; v < ball.vertex_count(); ++v)
    depths.push_back(ball.depth(v));
  j["depths"] = std::move(depths);
  return j;
}

BallGraph ball_from_json(const json& j) {
  if (j.value("schema", "") != std::string("ball/1"))
    throw invalid_input_error("unknown ball schema");
  BallGraph ball;
  ball.set_radius(j.at("radius").get<int>());
  const auto& verts = j.at("vertices");
  const auto& depths = j.at("depths");
  for (std::size_t i = 0; i < verts.size(); ++i)
    ball.add_vertex(verts[i].get<std::string>(), depths[i].get<int>());
  for (const auto& e : j.at("edges"))
    ball.add_edge(ball.vertex(e[0].get<std::string>()),
                  ball.vertex(e[1].get<std::string>()),
                  e[2].get<std::int64_t>());
  for (const auto& f : j.at("frontier")) ball.set_frontier(ball.vertex(f.get<std::string>()));
  ball.finalize();
  ball.validate();
  return ball;
}

namespace {
std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}
}  // namespace

std::string ball_to_dot(const BallGraph& ball, const std::string& name) {
  std::ostringstream os;
  os << "graph \"" << dot_escape(name) << "\" {\n";
  for (VertexId v = 0; v < ball.vertex_count(); ++v) {
    os << "  n" << v << " [label=\"" << dot_escape(ball.label(v)) << "\"";
    if (ball.is_frontier(v)) os << ", style=dashed";
    os << "];\n";
  }
  for (const auto& e : ball.edges()) {
    os << "  n" << e.u << " -- n" << e.v;
    if (e.mult != 1) os << " [label=\"x" << e.mult << "\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

json cut_to_json(const BallGraph& ball, const Cut& cut) {
  ordered j;
  j["schema"] = "cut/1";
  auto side = json::array();
  for (VertexId v : cut.side) side.push_back(ball.label(v));
  j["side"] = std::move(side);
  auto boundary = json::array();
  for (const auto& e : cut.boundary)
    boundary.push_back({ball.label(e.u), ball.label(e.v), e.mult});
  j["boundary"] = std::move(boundary);
  j["boundary_size"] = cut.boundary_size;
  j["wall_weight"] = cut.wall_weight;
  return j;
}

json end_report_to_json(const EndReport& rep) {
  ordered j;
  j["schema"] = "ends/1";
  j["inner_radius"] = rep.inner_radius;
  j["probe_radius"] = rep.probe_radius;
  j["unbounded_components"] = rep.unbounded_count;
  j["bounded_components"] = rep.bounded_count;
  j["unbounded_components_at_previous_radius"] = rep.prev_unbounded_count;
  j["stable"] = rep.stable;
  j["note"] =
      "finite-scale proxy: a component is unbounded iff it meets the "
      "probe-radius frontier; stable means the count agrees at R-1 and R";
  return j;
}

}  // namespace hsp
