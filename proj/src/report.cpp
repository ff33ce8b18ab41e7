#include "cyclerank/report.hpp"

#include <iomanip>
#include <sstream>

namespace cyclerank {

using nlohmann::json;

std::string to_string(SurveyMode mode) { return mode == SurveyMode::Exhaustive ? "exhaustive" : "sampled"; }

namespace {

json spectrum_json(const std::map<unsigned, std::uint64_t>& spectrum) {
  json out = json::object();
  for (const auto& [r, count] : spectrum) out[std::to_string(r)] = count;
  return out;
}

std::string spectrum_text(const std::map<unsigned, std::uint64_t>& spectrum) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [r, count] : spectrum) {
    os << (first ? "" : " ") << r << ":" << count;
    first = false;
  }
  return first ? "-" : os.str();
}

}  // namespace

json instance_json(std::uint64_t p, unsigned n) {
  const auto shape = instance_shape(p, n);
  return {{"p", p}, {"n", n}, {"a", shape.a}, {"l", shape.l}, {"alpha", shape.alpha}, {"k", shape.k}};
}

json components_json(const TheoremReport& report) {
  json out = json::array();
  for (const auto& c : report.components) {
    out.push_back({{"label", c.label},
                   {"dimension", c.dimension},
                   {"expected_rank", c.expected_rank ? json(*c.expected_rank) : json(nullptr)},
                   {"checked", c.survey.checked},
                   {"mode", to_string(c.survey.mode)},
                   {"rank_spectrum", spectrum_json(c.survey.spectrum)},
                   {"pass", c.pass}});
  }
  return out;
}

json to_json(const TheoremReport& report) {
  json details = json::object();
  for (const auto& [key, value] : report.details) details[key] = value;
  return {{"theorem", to_string(report.theorem)},
          {"instance", instance_json(report.p, report.n)},
          {"components", components_json(report)},
          {"direct_sum_ok", report.direct_sum_ok},
          {"seed", report.seed},
          {"rng", kRngName},
          {"details", details},
          {"pass", report.pass()}};
}

json to_json(const OracleReport& report, const ExtensionContext& ctx) {
  json powers = json::array();
  for (const auto& h : report.powers) {
    powers.push_back({{"i", h.i},
                      {"order", h.order},
                      {"histogram", spectrum_json(h.histogram)},
                      {"predicted_support", h.predicted_support},
                      {"support_ok", h.support_ok},
                      {"support_attained", h.support_attained},
                      {"degenerate_count", h.degenerate_count},
                      {"norm_disagreements", h.norm_disagreements},
                      {"prediction_mismatches", h.prediction_mismatches}});
  }
  json out = {{"instance", instance_json(ctx.prime(), ctx.degree())},
              {"modulus", ctx.modulus()},
              {"mode", to_string(report.mode)},
              {"checked", report.checked},
              {"seed", report.seed},
              {"rng", kRngName},
              {"powers", powers},
              {"pass", report.pass()}};
  if (report.warning) out["warning"] = *report.warning;
  return out;
}

json to_json(const q5::Section6Report& report) {
  const auto& d = report.diagonalization;
  json diagonal = json::array();
  for (const auto& v : d.diagonal) diagonal.push_back(v.str());
  json transform = json::array();
  for (std::size_t r = 0; r < d.transform.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < d.transform.cols(); ++c) row.push_back(d.transform(r, c).str());
    transform.push_back(row);
  }
  json legendre = {{"mixed_signs", report.verdict.mixed_signs},
                   {"residue_mod_a", report.verdict.residue_mod_a},
                   {"residue_mod_b", report.verdict.residue_mod_b},
                   {"residue_mod_c", report.verdict.residue_mod_c},
                   {"solvable", report.legendre_form ? report.verdict.solvable() : true}};
  legendre["form"] = report.legendre_form
                         ? json::array({report.legendre_form->a, report.legendre_form->b, report.legendre_form->c})
                         : json(nullptr);
  return {{"coefficient_identity",
           {{"checked", report.coefficient_checked}, {"failures", report.coefficient_failures}}},
          {"parametrization",
           {{"checked", report.parametrization_checked}, {"failures", report.parametrization_failures}}},
          {"diagonalization",
           {{"diagonal", diagonal},
            {"squarefree", d.squarefree},
            {"transform", transform},
            {"congruence_ok", report.congruence_ok}}},
          {"legendre", legendre},
          {"anisotropic", report.anisotropic},
          {"grid", {{"N", report.grid}, {"checked", report.grid_checked}, {"failures", report.grid_failures}}},
          {"random", {{"checked", report.random_checked}, {"failures", report.random_failures}}},
          {"seed", report.seed},
          {"rng", kRngName},
          {"pass", report.pass()}};
}

std::string to_text(const TheoremReport& report) {
  std::ostringstream os;
  const auto shape = instance_shape(report.p, report.n);
  os << "theorem " << to_string(report.theorem) << "  p=" << report.p << " n=" << report.n
     << "  (a=" << shape.a << " l=" << shape.l << " alpha=" << shape.alpha << " k=" << shape.k << ")\n";
  os << std::left << std::setw(20) << "component" << std::setw(6) << "dim" << std::setw(10) << "expected"
     << std::setw(10) << "checked" << std::setw(12) << "mode" << std::setw(24) << "rank:count"
     << "pass\n";
  for (const auto& c : report.components) {
    os << std::left << std::setw(20) << c.label << std::setw(6) << c.dimension << std::setw(10)
       << (c.expected_rank ? std::to_string(*c.expected_rank) : "-") << std::setw(10) << c.survey.checked
       << std::setw(12) << to_string(c.survey.mode) << std::setw(24) << spectrum_text(c.survey.spectrum)
       << (c.pass ? "yes" : "NO") << "\n";
  }
  for (const auto& [key, value] : report.details) os << "  " << key << " = " << value << "\n";
  os << "direct sum: " << (report.direct_sum_ok ? "ok" : "FAILED") << "   seed " << report.seed << "\n";
  os << "result: " << (report.pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string to_text(const OracleReport& report, const ExtensionContext& ctx) {
  std::ostringstream os;
  os << "rank oracle  p=" << ctx.prime() << " n=" << ctx.degree() << "  " << to_string(report.mode) << ", "
     << report.checked << " elements\n";
  if (report.warning) os << "warning: " << *report.warning << "\n";
  os << std::left << std::setw(5) << "i" << std::setw(7) << "ord" << std::setw(28) << "rank:count"
     << std::setw(12) << "degenerate" << std::setw(14) << "disagreements"
     << "ok\n";
  for (const auto& h : report.powers) {
    const bool ok = h.support_ok && h.norm_disagreements == 0 && h.prediction_mismatches == 0 &&
                    (report.mode == SurveyMode::Sampled || h.support_attained);
    os << std::left << std::setw(5) << h.i << std::setw(7) << h.order << std::setw(28)
       << spectrum_text(h.histogram) << std::setw(12) << h.degenerate_count << std::setw(14)
       << h.norm_disagreements + h.prediction_mismatches << (ok ? "yes" : "NO") << "\n";
  }
  os << "result: " << (report.pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string to_text(const q5::Section6Report& report) {
  std::ostringstream os;
  const auto& d = report.diagonalization;
  os << "Q(eta_5) certificate chain\n";
  os << "  coefficient identity   " << report.coefficient_checked << " checked, " << report.coefficient_failures
     << " failures\n";
  os << "  parametrization        " << report.parametrization_checked << " checked, "
     << report.parametrization_failures << " failures\n";
  os << "  diagonal form          <";
  for (std::size_t i = 0; i < d.diagonal.size(); ++i) os << (i ? ", " : "") << d.diagonal[i].str();
  os << ">  congruence " << (report.congruence_ok ? "ok" : "FAILED") << "\n";
  if (report.legendre_form) {
    os << "  Legendre form          <" << report.legendre_form->a << ", " << report.legendre_form->b << ", "
       << report.legendre_form->c << ">  solvable: " << (report.verdict.solvable() ? "yes" : "no") << "\n";
  }
  os << "  anisotropic: " << (report.anisotropic ? "true" : "false") << "\n";
  os << "  grid N=" << report.grid << "            " << report.grid_checked << " checked, " << report.grid_failures
     << " failures\n";
  os << "  random rationals       " << report.random_checked << " checked, " << report.random_failures
     << " failures\n";
  os << "result: " << (report.pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace cyclerank
