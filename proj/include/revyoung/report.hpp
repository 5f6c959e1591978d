#pragma once

// Tabular report documents.  JSON:
//   {"tool": ..., "version": ..., "kind": ..., "header": {...},
//    "columns": [...], "rows": [[...], ...]}
// CSV: one "# key: <compact json>" line per header entry (tool, version and kind
// first), then the column row, then data rows.  Numbers use the shortest
// round-trip representation; output is byte-stable for identical input.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace revyoung {

inline constexpr std::string_view kToolName = "revyoung";
inline constexpr std::string_view kToolVersion = "1.0.0";

enum class ReportFormat { json, csv };

struct Report {
  std::string kind;
  nlohmann::ordered_json header = nlohmann::ordered_json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::ordered_json>> rows;
};

/// Cell for a double; non-finite values become the strings "inf", "-inf", "nan".
[[nodiscard]] nlohmann::ordered_json number_cell(double x);

[[nodiscard]] std::string render(const Report& report, ReportFormat format);

/// Writes render(report, format) to `destination`.  Throws std::runtime_error
/// naming the path when the file cannot be written.
void emit_report(const Report& report, ReportFormat format, const std::filesystem::path& destination);

}  // namespace revyoung
