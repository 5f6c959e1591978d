#pragma once

// Verification campaigns: reproduction of the published comparison values,
// dominance maps between competing bounds, violation search, and sampled
// verification suites.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "revyoung/operator_means.hpp"
#include "revyoung/report.hpp"
#include "revyoung/targets.hpp"
#include "revyoung/tolerance.hpp"

namespace revyoung {

// ---------------------------------------------------------------------------
// Published comparison values

/// Printed values carry 6-7 significant digits.
inline constexpr double kRemarkTolerance = 5e-8;

struct RemarkRow {
  double t;
  double lambda;
  std::string quantity;  // "ratio" or "diff"
  double computed;
  double paper;
  double abs_error;
};

[[nodiscard]] std::vector<RemarkRow> remark_repro();
[[nodiscard]] Report to_report(const std::vector<RemarkRow>& rows);

// ---------------------------------------------------------------------------
// Dominance maps

enum class Comparison { ratio, diff };

[[nodiscard]] std::string_view to_string(Comparison c);

struct DominanceMap {
  Comparison comparison_id = Comparison::ratio;
  std::vector<double> t_grid;
  std::vector<double> lambda_grid;
  std::vector<std::vector<double>> deltas;  // deltas[i][j] at (t_grid[i], lambda_grid[j])

  [[nodiscard]] bool has_cell_below(double threshold) const;
  [[nodiscard]] bool has_cell_above(double threshold) const;
};

/// Grid k * step for k = first, first + 1, ... while k * step <= 1 (+1e-9); the
/// last point snaps to 1 when within 1e-9.  Throws PreconditionError unless
/// 0 < step <= 1.
[[nodiscard]] std::vector<double> unit_grid(double step, bool include_zero);

/// Throws PreconditionError for empty or non-ascending grids, t outside (0, 1]
/// or lambda outside [0, 1].
[[nodiscard]] DominanceMap dominance_map(Comparison id, const std::vector<double>& t_grid,
                                         const std::vector<double>& lambda_grid);
[[nodiscard]] Report to_report(const std::vector<DominanceMap>& maps, const nlohmann::ordered_json& config);

// ---------------------------------------------------------------------------
// Violation search

enum class Scope { scalar, matrix };

struct FalsifyConfig {
  Target target = Target::new_ratio_op;
  RatioVariant variant = RatioVariant::none;
  std::size_t budget = 10000;
  std::uint64_t seed = 0;
  Scope scope = Scope::scalar;
  std::size_t n = 4;     // matrix scope only
  double h_max = 10.0;   // largest condition ratio probed by operator targets
  Tolerance tolerance{};
};

struct SearchTrace {
  std::size_t budget = 0;
  std::size_t evaluations = 0;
  std::size_t grid_points = 0;
  std::size_t random_probes = 0;
  std::size_t refinement_rounds = 0;
};

struct ViolationRecord {
  Target target = Target::young;
  RatioVariant variant = RatioVariant::none;
  ReplayCase instance;
  double min_slack = 0.0;
  double tolerance = 0.0;
  SearchTrace trace;
};

struct FalsifyResult {
  /// Set when the most negative slack found is below -tolerance.
  std::optional<ViolationRecord> violation;
  /// Most negative slack found, violated or not.
  ViolationRecord best;
};

/// Coarse grid scan, seeded random probes, then coordinate-wise golden-section
/// refinement of the best candidates.  Every probe lies inside the hypotheses of
/// the target by construction.  Deterministic in the config.
[[nodiscard]] FalsifyResult falsify(const FalsifyConfig& config);
[[nodiscard]] Report to_report(const std::vector<FalsifyResult>& results, const nlohmann::ordered_json& config);

// ---------------------------------------------------------------------------
// Sampled verification suites

struct SuiteRow {
  Target target = Target::young;
  RatioVariant variant = RatioVariant::none;
  std::string label;  // e.g. "convexity_gap/exp"
  std::size_t instances = 0;
  std::size_t passes = 0;
  double worst_slack = 0.0;
  double worst_tolerance = 0.0;
  std::size_t worst_index = 0;
  ReplayCase worst_case;

  [[nodiscard]] std::size_t failures() const { return instances - passes; }
};

struct SuiteReport {
  std::vector<SuiteRow> rows;

  [[nodiscard]] bool all_hold() const;
  [[nodiscard]] const SuiteRow* find(std::string_view label) const;
};

struct ScalarSuiteConfig {
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  double lo = 1e-3;
  double hi = 1e3;
  std::optional<double> lambda;
  Tolerance tolerance{};
  unsigned threads = 1;
};

struct MatrixSuiteConfig {
  std::size_t n = 4;
  std::uint64_t seed = 0;
  std::size_t ordered_count = 1000;
  std::size_t box_count = 1000;
  double h_target = 10.0;
  double box_m = 0.1;
  double box_M = 1.0;
  std::optional<double> lambda;
  std::vector<RatioVariant> variants{RatioVariant::as_stated, RatioVariant::as_proved};
  Tolerance tolerance{};
  unsigned threads = 1;
};

/// Scalar sample i: a, b log-uniform on [lo, hi], lambda uniform on [0, 1].
/// Samples 0, 1, 2 are the equality cases a = b, lambda = 0 and lambda = 1.
[[nodiscard]] ReplayCase scalar_sample(const ScalarSuiteConfig& config, std::size_t index);

/// Checks every scalar inequality on each sample.  Aggregation runs in index
/// order, so the result does not depend on `threads`.
[[nodiscard]] SuiteReport verify_scalar_suite(const ScalarSuiteConfig& config);
/// Operator checks over ordered pairs (all five checks) and box pairs (young_op
/// and the two Tominaga-type checks).
[[nodiscard]] SuiteReport verify_matrix_suite(const MatrixSuiteConfig& config);

[[nodiscard]] Report to_report(const SuiteReport& report, std::string kind, const nlohmann::ordered_json& config);

}  // namespace revyoung
