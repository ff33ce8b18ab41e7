#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclerank/cyclotomic_q5.hpp"

namespace cyclerank::cli {

inline constexpr const char* kToolVersion = "cyclerank 1.0.0";

enum class Format { Json, Text };

struct RunConfig {
  std::string command;  // verify | oracle | section6 | report-all
  std::uint64_t p = 3;
  unsigned n = 4;
  std::optional<std::string> theorem;
  std::optional<unsigned> i;
  std::uint64_t seed = 0;
  std::uint64_t sample_cap = 10000;
  std::optional<std::string> output;
  Format format = Format::Json;
  int grid = 10;
  /// Test mode: replaces the diagonalized form in the section6 Legendre step.
  std::optional<q5::TernaryForm> override_form;
};

/// Exit codes.
inline constexpr int kPass = 0;
inline constexpr int kUsageError = 1;
inline constexpr int kCheckFailed = 2;

struct CommandResult {
  int exit_code = kPass;
  std::string report;   // the rendered document (empty on usage errors)
  std::string message;  // diagnostic for stderr
};

/// Throws MathError(HypothesisViolation) when p, n or sample_cap are out of range.
void validate(const RunConfig& config);

CommandResult cmd_verify(const RunConfig& config);
CommandResult cmd_oracle(const RunConfig& config);
CommandResult cmd_section6(const RunConfig& config);
CommandResult cmd_report_all(const RunConfig& config);

/// Validates and dispatches on config.command, mapping errors to exit codes.
CommandResult run(const RunConfig& config);

/// Full command line front end: parses, runs, writes the report.
int main_entry(int argc, char** argv);

}  // namespace cyclerank::cli
