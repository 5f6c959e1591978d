#include "revyoung/matrix_io.hpp"

#include <fstream>
#include <string>
#include <vector>

#include "revyoung/errors.hpp"

namespace revyoung {

SymMatrix matrix_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("rows")) {
    throw PreconditionError(R"(matrix document must be an object with fields "n" and "rows")");
  }
  if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 1) {
    throw PreconditionError(R"(matrix field "n" must be a positive integer)");
  }
  const auto n = static_cast<std::size_t>(doc["n"].get<long long>());
  const auto& rows_doc = doc["rows"];
  if (!rows_doc.is_array() || rows_doc.size() != n) {
    throw PreconditionError(R"(matrix field "rows" must be an array of n rows)");
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(n);
  for (const auto& row : rows_doc) {
    if (!row.is_array()) throw PreconditionError("each matrix row must be an array of numbers");
    std::vector<double> r;
    r.reserve(row.size());
    for (const auto& v : row) {
      if (!v.is_number()) throw PreconditionError("matrix entries must be numbers");
      r.push_back(v.get<double>());
    }
    rows.push_back(std::move(r));
  }
  return SymMatrix::from_rows(rows);
}

nlohmann::json matrix_to_json(const SymMatrix& m) {
  return nlohmann::json{{"n", m.n()}, {"rows", m.to_rows()}};
}

std::pair<SymMatrix, SymMatrix> read_matrix_pair(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open matrix file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw PreconditionError("malformed matrix file " + path.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("A") || !doc.contains("B")) {
    throw PreconditionError("matrix pair file " + path.string() + R"( needs objects "A" and "B")");
  }
  SymMatrix a = matrix_from_json(doc["A"]);
  SymMatrix b = matrix_from_json(doc["B"]);
  if (a.n() != b.n()) throw PreconditionError("matrices A and B in " + path.string() + " differ in size");
  return {std::move(a), std::move(b)};
}

}  // namespace revyoung
