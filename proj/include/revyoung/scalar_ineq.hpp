#pragma once

// Scalar means, the Specht ratio, the logarithmic mean, and evaluators for the
// scalar Young inequality and its reverse bounds.

#include <functional>
#include <string_view>

#include "revyoung/tolerance.hpp"

namespace revyoung {

/// Below |h - 1| < kNearOneCutoff S(h) returns 1; below |log(y/x)| < kNearOneCutoff
/// L(x, y) returns (x + y) / 2.
inline constexpr double kNearOneCutoff = 1e-8;

/// Pair (a, b) of positive reals with a weight lambda in [0, 1].
class PositivePair {
 public:
  /// Throws DomainError when a or b is not a positive finite number or lambda
  /// is outside [0, 1].
  PositivePair(double a, double b, double lambda);

  [[nodiscard]] double a() const { return a_; }
  [[nodiscard]] double b() const { return b_; }
  [[nodiscard]] double lambda() const { return lambda_; }

 private:
  double a_;
  double b_;
  double lambda_;
};

enum class ScalarInequality {
  young,           // a^{1-l} b^l <= (1-l) a + l b
  tominaga_ratio,  // (1-l) a + l b <= S(a/b) a^{1-l} b^l
  tominaga_diff,   // (1-l) a + l b <= L(a,b) log S(a/b) + a^{1-l} b^l
  new_ratio,       // (1-l) a + l b <= a^{1-l} b^l exp(l(1-l)(a-b)^2 / min(a,b)^2)
  new_diff,        // (1-l) a + l b <= a^{1-l} b^l + l(1-l) log(a/b)^2 max(a,b)
  convexity_gap,   // 0 <= (1-l) f(a) + l f(b) - f((1-l) a + l b) <= l(1-l) M (b-a)^2
};

[[nodiscard]] std::string_view to_string(ScalarInequality id);

/// One evaluation of "lhs <= rhs".  `tolerance` is the absolute tolerance that
/// was applied, and holds == (slack >= -tolerance).
struct ScalarBoundEval {
  ScalarInequality inequality_id;
  double lhs;
  double rhs;
  double slack;
  bool holds;
  double tolerance;
};

/// Convex function for the convexity-gap bound.  `second_derivative_bound`
/// returns sup f'' on [a, b]; `second_derivative` (optional) is probed to reject
/// functions that are not convex on the interval.
struct ConvexFunction {
  enum class Kind { neg_log, exp, user };

  Kind kind = Kind::neg_log;
  std::function<double(double)> value;
  std::function<double(double)> second_derivative;
  double user_bound = 0.0;

  static ConvexFunction neg_log();
  static ConvexFunction exp();
  /// User function with a caller-supplied bound M on f''.
  static ConvexFunction user(std::function<double(double)> f, double bound,
                             std::function<double(double)> second_derivative = {});

  [[nodiscard]] std::string_view name() const;
};

[[nodiscard]] double weighted_arithmetic(const PositivePair& p);
/// a^{1-lambda} b^lambda evaluated in the log domain.
[[nodiscard]] double weighted_geometric(const PositivePair& p);

/// Specht ratio S(h) = h^{1/(h-1)} / (e log h^{1/(h-1)}), S(1) = 1.
[[nodiscard]] double specht_ratio(double h);
/// log S(h), accurate where S(h) - 1 is tiny.
[[nodiscard]] double log_specht_ratio(double h);
/// Logarithmic mean (y - x) / (log y - log x), L(x, x) = x.
[[nodiscard]] double log_mean(double x, double y);

[[nodiscard]] ScalarBoundEval young_bound(const PositivePair& p, const Tolerance& tol = {});
[[nodiscard]] ScalarBoundEval tominaga_ratio_bound(const PositivePair& p, const Tolerance& tol = {});
[[nodiscard]] ScalarBoundEval tominaga_diff_bound(const PositivePair& p, const Tolerance& tol = {});
[[nodiscard]] ScalarBoundEval new_ratio_bound(const PositivePair& p, const Tolerance& tol = {});
[[nodiscard]] ScalarBoundEval new_diff_bound(const PositivePair& p, const Tolerance& tol = {});

/// Evaluates the two-sided convexity gap bound on [a, b].  lhs is the gap, rhs is
/// lambda (1 - lambda) M (b - a)^2, and slack = min(rhs - gap, gap) so that
/// `holds` covers both sides.  Throws PreconditionError for a > b and DomainError
/// when [a, b] leaves f's domain or f'' < 0 is observed.
[[nodiscard]] ScalarBoundEval convexity_gap_bound(const ConvexFunction& f, double a, double b,
                                                  double lambda, const Tolerance& tol = {});

/// exp(l(1-l)(1-1/t)^2) - S(t).  Negative where the new ratio bound is tighter.
[[nodiscard]] double compare_ratio_bounds(double t, double lambda);
/// L(1,t) log S(t) - l(1-l)(log t)^2.  Negative where Tominaga's bound is tighter.
[[nodiscard]] double compare_diff_bounds(double t, double lambda);

}  // namespace revyoung
