#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hodge/report.hpp"

namespace hodge::cli {

/// A fully resolved run: command name plus every parameter it reads.
struct RunConfig {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  std::string out;
  std::string csv;

  std::uint64_t seed() const;
  int threads() const;
  nlohmann::json to_json() const;
};

/// oper-monodromy, oper-eichler, oper-wk, hn-verify, rep-analyze,
/// harmonic-solve, gauge-flow, forms-build, dims, suite.
const std::vector<std::string>& command_names();
nlohmann::json default_parameters(const std::string& command);

/// Defaults, then the config file (flat, the echoed config, or a whole report),
/// then flags.
/// Unknown keys and ill-typed values raise ValidationError.
RunConfig resolve_config(const std::string& command, const nlohmann::json& file_config,
                         const nlohmann::json& overrides);

struct RunResult {
  nlohmann::json report;
  std::optional<std::string> csv;
  int exit_code = 0;
};

/// Runs a command; the report carries the config echo and tool version.
RunResult run(const RunConfig& config);

/// Parses argv, runs, writes outputs. Returns 0 on success, 2 on validation
/// errors, 3 on numerical failures.
int parse_and_dispatch(int argc, const char* const* argv);

}  // namespace hodge::cli
