#include "revyoung/operator_means.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "revyoung/errors.hpp"
#include "revyoung/scalar_ineq.hpp"

namespace revyoung {
namespace {

void require_weight(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw DomainError("weight lambda must lie in [0, 1], got " + std::to_string(lambda));
  }
}

OperatorBoundReport compare(OperatorInequality id, RatioVariant variant, const SymMatrix& lhs,
                            const SymMatrix& rhs, const Tolerance& tol, BoundConstants constants) {
  OperatorBoundReport r;
  r.inequality_id = id;
  r.variant = variant;
  r.constants = constants;
  r.slack_spectrum = sym_eigen(rhs - lhs).eigenvalues;
  r.min_slack_eigenvalue = r.slack_spectrum.front();
  r.scale = std::max({1.0, lhs.max_abs(), rhs.max_abs()});
  r.tolerance = tol.rel * r.scale;
  r.holds = r.min_slack_eigenvalue >= -r.tolerance;
  return r;
}

// A bound whose constant overflows is satisfied by every pair.
OperatorBoundReport vacuous(OperatorInequality id, RatioVariant variant, std::size_t n,
                            const Tolerance& tol, BoundConstants constants) {
  OperatorBoundReport r;
  r.inequality_id = id;
  r.variant = variant;
  r.constants = constants;
  r.slack_spectrum.assign(n, std::numeric_limits<double>::infinity());
  r.min_slack_eigenvalue = std::numeric_limits<double>::infinity();
  r.scale = std::numeric_limits<double>::infinity();
  r.tolerance = tol.rel;
  r.holds = true;
  return r;
}

void require_ordered(const SpdPair& pair, OperatorInequality id) {
  if (!pair.ordered) {
    throw PreconditionError(std::string(to_string(id)) +
                            " needs an ordered pair (m I <= A <= B <= M I <= I)");
  }
}

}  // namespace

std::string_view to_string(OperatorInequality id) {
  switch (id) {
    case OperatorInequality::young_op: return "young_op";
    case OperatorInequality::tominaga_ratio_op: return "tominaga_ratio_op";
    case OperatorInequality::tominaga_diff_op: return "tominaga_diff_op";
    case OperatorInequality::new_ratio_op: return "new_ratio_op";
    case OperatorInequality::new_diff_op: return "new_diff_op";
  }
  return "unknown";
}

std::string_view to_string(RatioVariant v) {
  switch (v) {
    case RatioVariant::as_stated: return "as_stated";
    case RatioVariant::as_proved: return "as_proved";
    case RatioVariant::none: return "n/a";
  }
  return "unknown";
}

bool requires_ordered(OperatorInequality id) {
  return id == OperatorInequality::new_ratio_op || id == OperatorInequality::new_diff_op;
}

SpdPair make_pair(SymMatrix a, SymMatrix b) {
  if (a.n() != b.n()) {
    throw PreconditionError("pair matrices differ in size: " + std::to_string(a.n()) + " vs " +
                            std::to_string(b.n()));
  }
  const SpectralBounds sa = spectral_bounds(a);
  const SpectralBounds sb = spectral_bounds(b);
  if (!(sa.lower > 0.0)) throw DomainError("A is not positive definite (min eigenvalue " + std::to_string(sa.lower) + ")");
  if (!(sb.lower > 0.0)) throw DomainError("B is not positive definite (min eigenvalue " + std::to_string(sb.lower) + ")");

  SpdPair p;
  p.m = std::min(sa.lower, sb.lower);
  p.M = std::max(sa.upper, sb.upper);
  p.h = p.M / p.m;
  p.ordered = p.M <= 1.0 + kOrderedHypothesisTol &&
              loewner_geq(b, a, Tolerance{kOrderedHypothesisTol}).holds;
  p.a = std::move(a);
  p.b = std::move(b);
  return p;
}

SpdPair make_ordered_pair(SymMatrix a, SymMatrix b) {
  SpdPair p = make_pair(std::move(a), std::move(b));
  if (!p.ordered) {
    throw PreconditionError("pair violates m I <= A <= B <= M I <= I (M = " + std::to_string(p.M) + ")");
  }
  return p;
}

SymMatrix geometric_mean(const SymMatrix& a, const SymMatrix& b, double lambda) {
  require_weight(lambda);
  if (a.n() != b.n()) throw PreconditionError("geometric mean of matrices of different size");
  const EigenDecomp ea = sym_eigen(a);
  const SymMatrix a_half = matrix_function(ea, [](double x) { return std::sqrt(x); }, SpectralDomain::positive);
  const SymMatrix a_neg_half =
      matrix_function(ea, [](double x) { return 1.0 / std::sqrt(x); }, SpectralDomain::positive);
  const SymMatrix inner = congruence(a_neg_half, b);
  const SymMatrix inner_pow =
      matrix_function(inner, [lambda](double x) { return std::pow(x, lambda); }, SpectralDomain::positive);
  return congruence(a_half, inner_pow);
}

SymMatrix arithmetic_mean(const SymMatrix& a, const SymMatrix& b, double lambda) {
  require_weight(lambda);
  if (a.n() != b.n()) throw PreconditionError("arithmetic mean of matrices of different size");
  return (1.0 - lambda) * a + lambda * b;
}

OperatorBoundReport check_operator_young(const SpdPair& pair, double lambda, const Tolerance& tol) {
  return compare(OperatorInequality::young_op, RatioVariant::none,
                 geometric_mean(pair.a, pair.b, lambda), arithmetic_mean(pair.a, pair.b, lambda), tol,
                 {});
}

OperatorBoundReport check_tominaga_ratio(const SpdPair& pair, double lambda, const Tolerance& tol) {
  const double s = specht_ratio(pair.h);
  BoundConstants k;
  k.specht = s;
  k.exponent_factor = s;
  return compare(OperatorInequality::tominaga_ratio_op, RatioVariant::none,
                 arithmetic_mean(pair.a, pair.b, lambda), s * geometric_mean(pair.a, pair.b, lambda),
                 tol, k);
}

OperatorBoundReport check_tominaga_diff(const SpdPair& pair, double lambda, const Tolerance& tol) {
  BoundConstants k;
  k.specht = specht_ratio(pair.h);
  k.log_mean = log_mean(1.0, pair.h);
  k.additive_factor = *k.log_mean * log_specht_ratio(pair.h);
  const SymMatrix rhs = geometric_mean(pair.a, pair.b, lambda) + *k.additive_factor * pair.b;
  return compare(OperatorInequality::tominaga_diff_op, RatioVariant::none,
                 arithmetic_mean(pair.a, pair.b, lambda), rhs, tol, k);
}

OperatorBoundReport check_new_ratio(const SpdPair& pair, double lambda, RatioVariant variant,
                                    const Tolerance& tol) {
  require_ordered(pair, OperatorInequality::new_ratio_op);
  require_weight(lambda);
  if (variant == RatioVariant::none) throw PreconditionError("new_ratio_op needs as_stated or as_proved");
  const double g = variant == RatioVariant::as_stated ? 1.0 - 1.0 / pair.h : pair.h - 1.0;
  BoundConstants k;
  k.exponent_factor = std::exp(lambda * (1.0 - lambda) * g * g);
  if (!std::isfinite(*k.exponent_factor)) {
    return vacuous(OperatorInequality::new_ratio_op, variant, pair.a.n(), tol, k);
  }
  return compare(OperatorInequality::new_ratio_op, variant, arithmetic_mean(pair.a, pair.b, lambda),
                 *k.exponent_factor * geometric_mean(pair.a, pair.b, lambda), tol, k);
}

OperatorBoundReport check_new_diff(const SpdPair& pair, double lambda, const Tolerance& tol) {
  require_ordered(pair, OperatorInequality::new_diff_op);
  require_weight(lambda);
  const double log_h = std::log(pair.h);
  BoundConstants k;
  k.additive_factor = lambda * (1.0 - lambda) * log_h * log_h;
  const SymMatrix rhs = geometric_mean(pair.a, pair.b, lambda) + *k.additive_factor * pair.b;
  return compare(OperatorInequality::new_diff_op, RatioVariant::none,
                 arithmetic_mean(pair.a, pair.b, lambda), rhs, tol, k);
}

OperatorBoundReport check_operator(OperatorInequality id, RatioVariant variant, const SpdPair& pair,
                                   double lambda, const Tolerance& tol) {
  switch (id) {
    case OperatorInequality::young_op: return check_operator_young(pair, lambda, tol);
    case OperatorInequality::tominaga_ratio_op: return check_tominaga_ratio(pair, lambda, tol);
    case OperatorInequality::tominaga_diff_op: return check_tominaga_diff(pair, lambda, tol);
    case OperatorInequality::new_ratio_op: return check_new_ratio(pair, lambda, variant, tol);
    case OperatorInequality::new_diff_op: return check_new_diff(pair, lambda, tol);
  }
  throw PreconditionError("unknown operator inequality");
}

}  // namespace revyoung
