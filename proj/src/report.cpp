#include "revyoung/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace revyoung {
namespace {

std::string csv_field(const nlohmann::ordered_json& cell) {
  std::string text = cell.is_string() ? cell.get<std::string>() : cell.dump();
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

nlohmann::ordered_json number_cell(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

std::string render(const Report& report, ReportFormat format) {
  if (format == ReportFormat::json) {
    nlohmann::ordered_json doc;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["kind"] = report.kind;
    doc["header"] = report.header;
    doc["columns"] = report.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) doc["rows"].push_back(row);
    return doc.dump(2) + "\n";
  }

  std::ostringstream out;
  out << "# tool: " << kToolName << "\n";
  out << "# version: " << kToolVersion << "\n";
  out << "# kind: " << report.kind << "\n";
  for (const auto& [key, value] : report.header.items()) out << "# " << key << ": " << value.dump() << "\n";
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    out << (i ? "," : "") << csv_field(report.columns[i]);
  }
  out << "\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << "\n";
  }
  return out.str();
}

void emit_report(const Report& report, ReportFormat format, const std::filesystem::path& destination) {
  std::ofstream file(destination, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open report destination " + destination.string());
  file << render(report, format);
  file.flush();
  if (!file) throw std::runtime_error("failed writing report to " + destination.string());
}

}  // namespace revyoung
