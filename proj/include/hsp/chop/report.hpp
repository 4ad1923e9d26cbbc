#pragma once

#include "json.hpp"

#include "hsp/chop/pipeline.hpp"

namespace hsp {

/// Round reports as JSON: cut data, class counts, T0/T' skeletons, and the
/// property-check table.
nlohmann::json chop_report_to_json(const ChopReport& report);

/// DOT of the final T' skeleton (empty string when no round produced one).
std::string chop_report_tprime_dot(const ChopReport& report);

}  // namespace hsp
