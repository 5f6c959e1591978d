#include "revyoung/scalar_ineq.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "revyoung/errors.hpp"

namespace revyoung {
namespace {

void require_weight(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw DomainError("weight lambda must lie in [0, 1], got " + std::to_string(lambda));
  }
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(what) + " must be a positive finite number, got " +
                      std::to_string(x));
  }
}

ScalarBoundEval make_eval(ScalarInequality id, double lhs, double rhs, const Tolerance& tol) {
  const double slack = rhs - lhs;
  const double abs_tol = tol.absolute({lhs, rhs});
  return {id, lhs, rhs, slack, slack >= -abs_tol, abs_tol};
}

}  // namespace

PositivePair::PositivePair(double a, double b, double lambda) : a_(a), b_(b), lambda_(lambda) {
  require_positive(a, "a");
  require_positive(b, "b");
  require_weight(lambda);
}

std::string_view to_string(ScalarInequality id) {
  switch (id) {
    case ScalarInequality::young: return "young";
    case ScalarInequality::tominaga_ratio: return "tominaga_ratio";
    case ScalarInequality::tominaga_diff: return "tominaga_diff";
    case ScalarInequality::new_ratio: return "new_ratio";
    case ScalarInequality::new_diff: return "new_diff";
    case ScalarInequality::convexity_gap: return "convexity_gap";
  }
  return "unknown";
}

ConvexFunction ConvexFunction::neg_log() {
  ConvexFunction f;
  f.kind = Kind::neg_log;
  f.value = [](double x) { return -std::log(x); };
  f.second_derivative = [](double x) { return 1.0 / (x * x); };
  return f;
}

ConvexFunction ConvexFunction::exp() {
  ConvexFunction f;
  f.kind = Kind::exp;
  f.value = [](double x) { return std::exp(x); };
  f.second_derivative = [](double x) { return std::exp(x); };
  return f;
}

ConvexFunction ConvexFunction::user(std::function<double(double)> fn, double bound,
                                    std::function<double(double)> second_derivative) {
  if (!(bound >= 0.0) || !std::isfinite(bound)) {
    throw DomainError("second-derivative bound M must be a nonnegative finite number");
  }
  ConvexFunction f;
  f.kind = Kind::user;
  f.value = std::move(fn);
  f.second_derivative = std::move(second_derivative);
  f.user_bound = bound;
  return f;
}

std::string_view ConvexFunction::name() const {
  switch (kind) {
    case Kind::neg_log: return "neg_log";
    case Kind::exp: return "exp";
    case Kind::user: return "user";
  }
  return "unknown";
}

double weighted_arithmetic(const PositivePair& p) {
  return (1.0 - p.lambda()) * p.a() + p.lambda() * p.b();
}

double weighted_geometric(const PositivePair& p) {
  if (p.a() == p.b()) return p.a();
  return std::exp((1.0 - p.lambda()) * std::log(p.a()) + p.lambda() * std::log(p.b()));
}

double log_specht_ratio(double h) {
  require_positive(h, "Specht ratio argument h");
  const double d = h - 1.0;
  if (std::abs(d) < kNearOneCutoff) return 0.0;
  // With r = log(h) / (h - 1):  log S(h) = r - 1 - log r.
  const double r = std::log1p(d) / d;
  const double delta = r - 1.0;
  return delta - std::log1p(delta);
}

double specht_ratio(double h) { return std::exp(log_specht_ratio(h)); }

double log_mean(double x, double y) {
  require_positive(x, "log-mean argument x");
  require_positive(y, "log-mean argument y");
  const double u = std::log(y) - std::log(x);
  // (x + y) / 2 agrees with L to O(u^2), so the switch is seamless.
  if (std::abs(u) < kNearOneCutoff) return 0.5 * (x + y);
  return x * std::expm1(u) / u;
}

ScalarBoundEval young_bound(const PositivePair& p, const Tolerance& tol) {
  return make_eval(ScalarInequality::young, weighted_geometric(p), weighted_arithmetic(p), tol);
}

ScalarBoundEval tominaga_ratio_bound(const PositivePair& p, const Tolerance& tol) {
  const double rhs = specht_ratio(p.a() / p.b()) * weighted_geometric(p);
  return make_eval(ScalarInequality::tominaga_ratio, weighted_arithmetic(p), rhs, tol);
}

ScalarBoundEval tominaga_diff_bound(const PositivePair& p, const Tolerance& tol) {
  const double rhs =
      log_mean(p.a(), p.b()) * log_specht_ratio(p.a() / p.b()) + weighted_geometric(p);
  return make_eval(ScalarInequality::tominaga_diff, weighted_arithmetic(p), rhs, tol);
}

ScalarBoundEval new_ratio_bound(const PositivePair& p, const Tolerance& tol) {
  const double l = p.lambda();
  const double d1 = std::min(p.a(), p.b());
  const double rel = (p.a() - p.b()) / d1;
  const double rhs = weighted_geometric(p) * std::exp(l * (1.0 - l) * rel * rel);
  return make_eval(ScalarInequality::new_ratio, weighted_arithmetic(p), rhs, tol);
}

ScalarBoundEval new_diff_bound(const PositivePair& p, const Tolerance& tol) {
  const double l = p.lambda();
  const double d2 = std::max(p.a(), p.b());
  const double log_ratio = std::log(p.a()) - std::log(p.b());
  const double rhs = weighted_geometric(p) + l * (1.0 - l) * log_ratio * log_ratio * d2;
  return make_eval(ScalarInequality::new_diff, weighted_arithmetic(p), rhs, tol);
}

ScalarBoundEval convexity_gap_bound(const ConvexFunction& f, double a, double b, double lambda,
                                    const Tolerance& tol) {
  require_weight(lambda);
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("interval endpoints must be finite");
  if (a > b) {
    throw PreconditionError("convexity gap needs a <= b, got a = " + std::to_string(a) +
                            ", b = " + std::to_string(b));
  }

  double bound = 0.0;
  switch (f.kind) {
    case ConvexFunction::Kind::neg_log:
      if (!(a > 0.0)) throw DomainError("neg_log needs a positive interval, got a = " + std::to_string(a));
      bound = 1.0 / (a * a);
      break;
    case ConvexFunction::Kind::exp:
      bound = std::exp(b);
      break;
    case ConvexFunction::Kind::user:
      bound = f.user_bound;
      if (f.second_derivative) {
        constexpr int kProbes = 33;
        for (int i = 0; i < kProbes; ++i) {
          const double x = a + (b - a) * static_cast<double>(i) / (kProbes - 1);
          const double d2 = f.second_derivative(x);
          if (d2 < 0.0) {
            throw DomainError("function is not convex on the interval: f''(" + std::to_string(x) +
                              ") = " + std::to_string(d2));
          }
        }
      }
      break;
  }

  const double fa = f.value(a);
  const double fb = f.value(b);
  const double mid = (1.0 - lambda) * a + lambda * b;
  const double gap = (1.0 - lambda) * fa + lambda * fb - f.value(mid);
  const double width = b - a;
  const double rhs = lambda * (1.0 - lambda) * bound * width * width;

  // The gap is a difference of O(|f|) terms, so its rounding error scales with |f|.
  const double abs_tol = tol.absolute({gap, rhs, fa, fb});
  const double slack = std::min(rhs - gap, gap);
  return {ScalarInequality::convexity_gap, gap, rhs, slack, slack >= -abs_tol, abs_tol};
}

namespace {

void require_unit_ratio(double t) {
  if (!(t > 0.0 && t <= 1.0)) {
    throw DomainError("comparison point t must lie in (0, 1], got " + std::to_string(t));
  }
}

}  // namespace

double compare_ratio_bounds(double t, double lambda) {
  require_unit_ratio(t);
  require_weight(lambda);
  const double gap = 1.0 - 1.0 / t;
  return std::exp(lambda * (1.0 - lambda) * gap * gap) - specht_ratio(t);
}

double compare_diff_bounds(double t, double lambda) {
  require_unit_ratio(t);
  require_weight(lambda);
  const double log_t = std::log(t);
  return log_mean(1.0, t) * log_specht_ratio(t) - lambda * (1.0 - lambda) * log_t * log_t;
}

}  // namespace revyoung
