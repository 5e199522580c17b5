#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace hodge::report {

inline constexpr const char* kToolName = "hodge-lab";
inline constexpr const char* kToolVersion = "0.1.0";

/// %.17g, with non-finite values rendered as null.
std::string format_double(double x);

/// Key-sorted JSON, two-space indent, floats at 17 significant digits,
/// terminated by a newline.
std::string to_stable_json(const nlohmann::json& j);

/// Writes the text to `path`, or to stdout when path is empty or "-".
/// Unwritable paths raise NumericalError.
void write_text(const std::string& path, const std::string& text);

void emit_report(const nlohmann::json& result, const std::string& path);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_escape(const std::string& field);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  std::string to_csv() const;
};

}  // namespace hodge::report
