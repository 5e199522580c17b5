#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace hodge::suite {

enum class Level { smoke, full };

Level parse_level(const std::string& s);
std::string level_name(Level level);

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
  nlohmann::json metrics = nlohmann::json::object();
};

struct SuiteOptions {
  Level level = Level::smoke;
  std::uint64_t seed = 7;
  /// Deliberate defects for mutation testing, e.g. "w4-constant".
  std::set<std::string> inject;
  int threads = 1;
};

/// Runs the acceptance battery; `progress` receives one line per criterion.
std::vector<CriterionResult> run_acceptance(const SuiteOptions& opts, std::ostream* progress = nullptr);

std::string format_table(const std::vector<CriterionResult>& results);
nlohmann::json results_to_json(const std::vector<CriterionResult>& results);

}  // namespace hodge::suite
