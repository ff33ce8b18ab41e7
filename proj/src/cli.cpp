#include "cyclerank/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cyclerank/errors.hpp"
#include "cyclerank/report.hpp"

namespace cyclerank::cli {

using nlohmann::json;

namespace {

std::string format_name(Format f) { return f == Format::Json ? "json" : "text"; }

json config_json(const RunConfig& c) {
  json out = {{"command", c.command}, {"p", c.p},     {"n", c.n},
              {"seed", c.seed},       {"sample_cap", c.sample_cap}, {"format", format_name(c.format)}};
  out["theorem"] = c.theorem ? json(*c.theorem) : json(nullptr);
  out["i"] = c.i ? json(*c.i) : json(nullptr);
  if (c.command == "section6" || c.command == "report-all") out["grid"] = c.grid;
  if (c.override_form) out["override_form"] = {c.override_form->a, c.override_form->b, c.override_form->c};
  return out;
}

SurveyLimits limits_for(const RunConfig& c) {
  SurveyLimits limits;
  limits.sample_cap = c.sample_cap;
  limits.seed = c.seed;
  return limits;
}

json envelope(const RunConfig& c) {
  return {{"tool_version", kToolVersion}, {"config", config_json(c)}, {"instance", instance_json(c.p, c.n)}};
}

std::string render(const json& doc) { return doc.dump(2) + "\n"; }

TheoremReport run_theorem(const std::string& theorem, const ExtensionContext& ctx, const RunConfig& c) {
  const auto limits = limits_for(c);
  if (theorem == "T1") return verify_theorem_1(ctx, limits);
  if (theorem == "T2") return verify_theorem_2(ctx, limits);
  if (theorem == "TA") return verify_theorem_A(ctx, limits);
  if (theorem == "TC") return verify_theorem_C(ctx, limits);
  if (theorem == "direct-sum") return verify_direct_sum(ctx, limits);
  if (theorem == "RemarkC") {
    const auto shape = instance_shape(ctx.prime(), ctx.degree());
    return remark_C_check(ctx, c.i.value_or(shape.a + 1), limits);
  }
  if (theorem == "odd-order") {
    if (!c.i) raise(ErrorCode::HypothesisViolation, "--i is required for odd-order");
    return verify_corollary_odd_order(ctx, *c.i, limits);
  }
  raise(ErrorCode::HypothesisViolation,
        "unknown theorem '" + theorem + "' (expected T1, T2, TA, TC, RemarkC, direct-sum, odd-order)");
}

q5::Section6Report run_section6(const RunConfig& c) {
  q5::Section6Options options;
  options.grid = c.grid;
  options.seed = c.seed;
  options.override_form = c.override_form;
  return q5::verify_section6(options);
}

}  // namespace

void validate(const RunConfig& c) {
  if (c.p == 2 || !is_prime(c.p) || c.p >= kMaxPrime) {
    raise(ErrorCode::HypothesisViolation, "p must be an odd prime below 2^31");
  }
  if (c.n < 2 || c.n > 64) raise(ErrorCode::HypothesisViolation, "n must lie in [2, 64]");
  if (c.sample_cap < 1) raise(ErrorCode::HypothesisViolation, "sample cap must be at least 1");
  if (c.grid < 0) raise(ErrorCode::HypothesisViolation, "grid bound must be non-negative");
}

CommandResult cmd_verify(const RunConfig& config) {
  if (!config.theorem) raise(ErrorCode::HypothesisViolation, "--theorem is required");
  const ExtensionContext ctx(config.p, config.n);
  const TheoremReport report = run_theorem(*config.theorem, ctx, config);
  CommandResult out;
  out.exit_code = report.pass() ? kPass : kCheckFailed;
  if (config.format == Format::Json) {
    json doc = envelope(config);
    doc.update(to_json(report));
    out.report = render(doc);
  } else {
    out.report = to_text(report);
  }
  return out;
}

CommandResult cmd_oracle(const RunConfig& config) {
  const ExtensionContext ctx(config.p, config.n);
  SurveyLimits limits = limits_for(config);
  limits.exhaustive_limit = std::uint64_t{1} << 24;
  const OracleReport report = rank_oracle(ctx, limits);
  CommandResult out;
  out.exit_code = report.pass() ? kPass : kCheckFailed;
  if (config.format == Format::Json) {
    json doc = envelope(config);
    doc.update(to_json(report, ctx));
    out.report = render(doc);
  } else {
    out.report = to_text(report, ctx);
  }
  if (report.warning) out.message = "warning: " + *report.warning;
  return out;
}

CommandResult cmd_section6(const RunConfig& config) {
  const auto report = run_section6(config);
  CommandResult out;
  out.exit_code = report.pass() ? kPass : kCheckFailed;
  if (config.format == Format::Json) {
    json doc = {{"tool_version", kToolVersion}, {"config", config_json(config)}};
    doc.update(to_json(report));
    out.report = render(doc);
  } else {
    out.report = to_text(report);
  }
  return out;
}

CommandResult cmd_report_all(const RunConfig& config) {
  const ExtensionContext ctx(config.p, config.n);
  const unsigned n = config.n;
  const auto shape = instance_shape(config.p, n);

  std::vector<TheoremReport> reports;
  reports.push_back(run_theorem(n % 2 == 1 ? "T1" : "T2", ctx, config));
  for (unsigned i = 1; i <= (n - 1) / 2; ++i) {
    const unsigned ord = order_of(n, i);
    if (ord % 2 == 1 && ord > 1) reports.push_back(verify_corollary_odd_order(ctx, i, limits_for(config)));
  }
  if (n % 4 == 2 && n >= 6) reports.push_back(run_theorem("TA", ctx, config));
  if (config.p % 4 == 3 && shape.alpha >= 2) {
    if (shape.alpha <= shape.a + 1 || shape.l == 1) {
      reports.push_back(run_theorem("TC", ctx, config));
    } else if (ctx.field_size()) {
      for (unsigned i = shape.a + 1; i < shape.alpha; ++i) reports.push_back(remark_C_check(ctx, i, limits_for(config)));
    }
  }

  SurveyLimits oracle_limits = limits_for(config);
  oracle_limits.exhaustive_limit = std::uint64_t{1} << 24;
  const OracleReport oracle = rank_oracle(ctx, oracle_limits);
  const auto section6 = run_section6(config);

  bool pass = oracle.pass() && section6.pass();
  for (const auto& r : reports) pass = pass && r.pass();

  CommandResult out;
  out.exit_code = pass ? kPass : kCheckFailed;
  if (config.format == Format::Json) {
    json doc = envelope(config);
    json list = json::array();
    for (const auto& r : reports) list.push_back(to_json(r));
    doc["reports"] = list;
    doc["oracle"] = to_json(oracle, ctx);
    doc["section6"] = to_json(section6);
    doc["pass"] = pass;
    out.report = render(doc);
  } else {
    std::ostringstream os;
    for (const auto& r : reports) os << to_text(r) << "\n";
    os << to_text(oracle, ctx) << "\n" << to_text(section6) << "\noverall: " << (pass ? "PASS" : "FAIL") << "\n";
    out.report = os.str();
  }
  return out;
}

CommandResult run(const RunConfig& config) {
  try {
    if (config.command != "section6") validate(config);
    if (config.command == "verify") return cmd_verify(config);
    if (config.command == "oracle") return cmd_oracle(config);
    if (config.command == "section6") return cmd_section6(config);
    if (config.command == "report-all") return cmd_report_all(config);
    return {kUsageError, "", "unknown command '" + config.command + "'"};
  } catch (const MathError& e) {
    const int code = e.code() == ErrorCode::InternalInconsistency ? kCheckFailed : kUsageError;
    return {code, "", std::string(to_string(e.code())) + ": " + e.what()};
  }
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Constant-rank decompositions of alternating forms from cyclic extensions"};
  app.require_subcommand(1);
  RunConfig config;
  std::string format = "json";
  std::string override_form;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "Seed of the sampling generator");
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--output", config.output, "Write the report to PATH instead of stdout");
  };
  auto add_field = [&](CLI::App* sub) {
    sub->add_option("--p", config.p, "Odd prime p (K = GF(p))")->required();
    sub->add_option("--n", config.n, "Extension degree n")->required();
    sub->add_option("--sample-cap", config.sample_cap, "Samples drawn when a subspace is too large to enumerate");
  };

  auto* verify = app.add_subcommand("verify", "Verify one theorem instance");
  add_common(verify);
  add_field(verify);
  verify->add_option("--theorem", config.theorem, "T1 | T2 | TA | TC | RemarkC | direct-sum | odd-order")
      ->required();
  verify->add_option("--i", config.i, "Eigenspace index (RemarkC) or automorphism power (odd-order)");

  auto* oracle = app.add_subcommand("oracle", "Exhaustive rank histograms over L^x");
  add_common(oracle);
  add_field(oracle);

  auto* section6 = app.add_subcommand("section6", "Certificate chain over Q(eta_5)");
  add_common(section6);
  section6->add_option("--grid", config.grid, "Integer grid bound N for the coefficient sweep");
  section6->add_option("--override-form", override_form, "Test mode: Legendre form a,b,c to use instead");

  auto* report_all = app.add_subcommand("report-all", "Every applicable check for (p, n)");
  add_common(report_all);
  add_field(report_all);
  report_all->add_option("--grid", config.grid, "Integer grid bound N for the section6 sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsageError;
  }

  config.command = app.get_subcommands().front()->get_name();
  config.format = format == "text" ? Format::Text : Format::Json;
  if (!override_form.empty()) {
    q5::TernaryForm f;
    char sep1 = 0, sep2 = 0;
    std::istringstream is(override_form);
    if (!(is >> f.a >> sep1 >> f.b >> sep2 >> f.c) || sep1 != ',' || sep2 != ',') {
      std::cerr << "--override-form expects a,b,c\n";
      return kUsageError;
    }
    config.override_form = f;
  }

  const CommandResult result = run(config);
  if (!result.message.empty()) std::cerr << result.message << "\n";
  if (!result.report.empty()) {
    if (config.output) {
      std::ofstream file(*config.output, std::ios::binary);
      if (!file) {
        std::cerr << "cannot open " << *config.output << "\n";
        return kUsageError;
      }
      file << result.report;
    } else {
      std::cout << result.report;
    }
  }
  return result.exit_code;
}

}  // namespace cyclerank::cli
