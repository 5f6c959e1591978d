#pragma once

// Matrix ingestion: {"n": 2, "rows": [[2, 1], [1, 2]]}.  A pair document holds
// two such objects under "A" and "B".

#include <filesystem>
#include <utility>

#include <json.hpp>

#include "revyoung/linalg.hpp"

namespace revyoung {

/// Parses one matrix object.  Rejects a missing or inconsistent "n", ragged rows
/// and asymmetry above 1e-12 (relative to max(1, max|a_ij|)).
[[nodiscard]] SymMatrix matrix_from_json(const nlohmann::json& doc);
[[nodiscard]] nlohmann::json matrix_to_json(const SymMatrix& m);

/// Reads {"A": {...}, "B": {...}} from disk.
[[nodiscard]] std::pair<SymMatrix, SymMatrix> read_matrix_pair(const std::filesystem::path& path);

}  // namespace revyoung
