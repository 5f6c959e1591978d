#pragma once

// Weighted operator means and Loewner-order checkers for the operator Young
// inequality and its reverse forms on positive-definite pairs.

#include <optional>
#include <string_view>
#include <vector>

#include "revyoung/linalg.hpp"
#include "revyoung/tolerance.hpp"

namespace revyoung {

/// Positive-definite pair with its realized spectral box
/// m = min eig over {A, B}, M = max eig over {A, B}, h = M / m.
/// `ordered` records that m I <= A <= B <= M I <= I was verified.
struct SpdPair {
  SymMatrix a;
  SymMatrix b;
  double m = 0.0;
  double M = 0.0;
  double h = 1.0;
  bool ordered = false;
};

/// Slack allowed when verifying the ordered hypothesis (A <= B, M <= 1).
inline constexpr double kOrderedHypothesisTol = 1e-12;

/// Validates positive definiteness and computes the realized box.  `ordered` is
/// set when A <= B and M <= 1 hold to kOrderedHypothesisTol.
[[nodiscard]] SpdPair make_pair(SymMatrix a, SymMatrix b);
/// As make_pair, but throws PreconditionError unless the pair is ordered.
[[nodiscard]] SpdPair make_ordered_pair(SymMatrix a, SymMatrix b);

enum class OperatorInequality { young_op, tominaga_ratio_op, tominaga_diff_op, new_ratio_op, new_diff_op };

/// Which exponent the ratio-type bound for ordered pairs uses:
/// as_stated: l(1-l)(1 - 1/h)^2, as_proved: l(1-l)(h - 1)^2.
enum class RatioVariant { as_stated, as_proved, none };

[[nodiscard]] std::string_view to_string(OperatorInequality id);
[[nodiscard]] std::string_view to_string(RatioVariant v);
/// True for the checkers that need an ordered pair.
[[nodiscard]] bool requires_ordered(OperatorInequality id);

struct BoundConstants {
  std::optional<double> specht;            // S(h)
  std::optional<double> log_mean;          // L(1, h)
  std::optional<double> exponent_factor;   // multiplicative constant
  std::optional<double> additive_factor;   // coefficient of B
};

struct OperatorBoundReport {
  OperatorInequality inequality_id = OperatorInequality::young_op;
  RatioVariant variant = RatioVariant::none;
  double min_slack_eigenvalue = 0.0;
  bool holds = false;
  double scale = 1.0;      // max(1, ||lhs||_max, ||rhs||_max)
  double tolerance = 0.0;  // absolute: rel * scale
  BoundConstants constants;
  std::vector<double> slack_spectrum;  // ascending eigenvalues of rhs - lhs
};

/// A #_lambda B = A^{1/2} (A^{-1/2} B A^{-1/2})^lambda A^{1/2}.
[[nodiscard]] SymMatrix geometric_mean(const SymMatrix& a, const SymMatrix& b, double lambda);
/// (1 - lambda) A + lambda B.
[[nodiscard]] SymMatrix arithmetic_mean(const SymMatrix& a, const SymMatrix& b, double lambda);

/// A #_lambda B <= (1 - lambda) A + lambda B.
[[nodiscard]] OperatorBoundReport check_operator_young(const SpdPair& pair, double lambda,
                                                       const Tolerance& tol = {});
/// (1 - lambda) A + lambda B <= S(h) A #_lambda B.
[[nodiscard]] OperatorBoundReport check_tominaga_ratio(const SpdPair& pair, double lambda,
                                                       const Tolerance& tol = {});
/// (1 - lambda) A + lambda B <= A #_lambda B + L(1, h) log S(h) B.
[[nodiscard]] OperatorBoundReport check_tominaga_diff(const SpdPair& pair, double lambda,
                                                      const Tolerance& tol = {});
/// (1 - lambda) A + lambda B <= exp(lambda (1 - lambda) g^2) A #_lambda B with
/// g = 1 - 1/h (as_stated) or h - 1 (as_proved).  Needs an ordered pair.
[[nodiscard]] OperatorBoundReport check_new_ratio(const SpdPair& pair, double lambda,
                                                  RatioVariant variant, const Tolerance& tol = {});
/// (1 - lambda) A + lambda B <= A #_lambda B + lambda (1 - lambda) (log h)^2 B.
/// Needs an ordered pair.
[[nodiscard]] OperatorBoundReport check_new_diff(const SpdPair& pair, double lambda,
                                                 const Tolerance& tol = {});

/// Dispatches to the checker for `id`; `variant` is only read for new_ratio_op.
[[nodiscard]] OperatorBoundReport check_operator(OperatorInequality id, RatioVariant variant,
                                                 const SpdPair& pair, double lambda,
                                                 const Tolerance& tol = {});

}  // namespace revyoung
