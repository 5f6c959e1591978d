#pragma once

// Uniform naming and replay of every checkable inequality, scalar or operator.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "revyoung/operator_means.hpp"
#include "revyoung/scalar_ineq.hpp"

namespace revyoung {

enum class Target {
  young,
  tominaga_ratio,
  tominaga_diff,
  new_ratio,
  new_diff,
  convexity_gap,
  young_op,
  tominaga_ratio_op,
  tominaga_diff_op,
  new_ratio_op,
  new_diff_op,
};

/// CLI spelling, e.g. "new-ratio-op".
[[nodiscard]] std::string_view cli_name(Target t);
[[nodiscard]] std::optional<Target> parse_target(std::string_view name);
[[nodiscard]] bool is_operator(Target t);
[[nodiscard]] OperatorInequality operator_id(Target t);
[[nodiscard]] ScalarInequality scalar_id(Target t);

/// Everything needed to re-run one check.  Scalar targets use a, b (for the
/// convexity gap: the interval endpoints and `function`); operator targets use
/// `pair`.
struct ReplayCase {
  double lambda = 0.0;
  double a = 0.0;
  double b = 0.0;
  std::string function;  // "neg_log" or "exp" for the convexity gap
  std::optional<SpdPair> pair;
};

struct CheckOutcome {
  double slack = 0.0;  // min slack eigenvalue for operator targets
  double tolerance = 0.0;
  bool holds = true;
};

/// Re-runs the check described by (target, variant, instance).
[[nodiscard]] CheckOutcome replay(Target target, RatioVariant variant, const ReplayCase& instance,
                                  const Tolerance& tol);

[[nodiscard]] nlohmann::ordered_json to_json(const ReplayCase& c);
/// Inverse of to_json; operator pairs are rebuilt through make_pair.
[[nodiscard]] ReplayCase replay_case_from_json(const nlohmann::json& doc);

}  // namespace revyoung
