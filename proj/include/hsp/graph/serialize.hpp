#pragma once

#include <string>

#include "json.hpp"

#include "hsp/graph/ball_graph.hpp"

namespace hsp {

/// JSON schema (version "ball/1"): vertices (labels in id order), weighted
/// edge list as [u, v, mult] triples, radius, frontier label list.
nlohmann::json ball_to_json(const BallGraph& ball);
BallGraph ball_from_json(const nlohmann::json& j);

/// DOT output; frontier vertices drawn dashed.
std::string ball_to_dot(const BallGraph& ball, const std::string& name = "ball");

nlohmann::json cut_to_json(const BallGraph& ball, const Cut& cut);

nlohmann::json end_report_to_json(const EndReport& rep);

}  // namespace hsp
