#pragma once

#include <string>

#include <json.hpp>

#include "cyclerank/cyclotomic_q5.hpp"
#include "cyclerank/decomposition.hpp"

namespace cyclerank {

std::string to_string(SurveyMode mode);

nlohmann::json instance_json(std::uint64_t p, unsigned n);
nlohmann::json components_json(const TheoremReport& report);
/// Theorem-level keys: theorem, instance, components, direct_sum_ok, seed,
/// rng, details, pass.
nlohmann::json to_json(const TheoremReport& report);
nlohmann::json to_json(const OracleReport& report, const ExtensionContext& ctx);
nlohmann::json to_json(const q5::Section6Report& report);

/// Plain-text table of a theorem report.
std::string to_text(const TheoremReport& report);
std::string to_text(const OracleReport& report, const ExtensionContext& ctx);
std::string to_text(const q5::Section6Report& report);

}  // namespace cyclerank
