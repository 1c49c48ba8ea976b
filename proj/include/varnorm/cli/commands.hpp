#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "varnorm/cli/config.hpp"

namespace varnorm::cli {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kReportSchemaVersion = 1;

enum ExitCode { kSuccess = 0, kVerificationFailure = 1, kInputError = 2 };

const std::vector<std::string>& command_names();

/// Named curve for CSV export.
struct CurveExport {
  std::string name;
  std::vector<double> parameters;
  std::vector<double> values;
};

struct CommandResult {
  json results;
  bool verification_failed = false;
  std::vector<CurveExport> curves;
};

/// Runs one subcommand on a validated config. Library errors propagate.
CommandResult execute(const std::string& command, const ScenarioConfig& c);

/// Full document: command, config echo, results, status, versions. Non-finite
/// numbers become null and their JSON pointers are listed under "non_finite".
json report_document(const std::string& command, const ScenarioConfig& c, const CommandResult& r);

/// Two-space indented JSON with a trailing newline.
std::string render(const json& doc);

/// "parameter,sup_value" header, one row per ladder entry.
std::string render_csv(const CurveExport& curve);

/// Writes through a temporary file in the same directory and a rename.
void write_atomic(const std::string& path, const std::string& content);

/// varnorm <command> [options]. Reports go to --out (or `out`), diagnostics to
/// `err`. Returns the process exit code.
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace varnorm::cli
