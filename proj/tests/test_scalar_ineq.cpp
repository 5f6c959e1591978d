#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "revyoung/errors.hpp"
#include "revyoung/rng.hpp"
#include "revyoung/scalar_ineq.hpp"

using namespace revyoung;

namespace {

// Closed forms in long double, straight from the definitions.
long double specht_oracle(long double h) {
  const long double p = std::pow(h, 1.0L / (h - 1.0L));
  return p / (std::numbers::e_v<long double> * std::log(p));
}

long double log_mean_oracle(long double x, long double y) { return (y - x) / (std::log(y) - std::log(x)); }

struct Sample {
  double a, b, lambda;
};

std::vector<Sample> samples(std::uint64_t seed, std::size_t count) {
  std::vector<Sample> out;
  for (std::size_t i = 0; i < count; ++i) {
    CounterRng rng(seed, i);
    out.push_back({std::pow(10.0, rng.uniform(-3.0, 3.0)), std::pow(10.0, rng.uniform(-3.0, 3.0)), rng.uniform()});
  }
  return out;
}

}  // namespace

TEST(SpechtRatio, FrozenValues) {
  EXPECT_NEAR(specht_ratio(0.5), 1.0614756908460860, 1e-15);
  EXPECT_NEAR(specht_ratio(2.0), 1.0614756908460860, 1e-15);
  EXPECT_NEAR(specht_ratio(4.0), 1.2637407212158111, 1e-15);
  EXPECT_NEAR(log_specht_ratio(0.5), 0.059660101141609636, 1e-16);
  EXPECT_EQ(specht_ratio(1.0), 1.0);
}

TEST(SpechtRatio, MatchesClosedFormAwayFromOne) {
  for (double h : {1e-3, 0.01, 0.1, 0.3, 0.7, 0.9, 1.1, 1.5, 3.0, 10.0, 100.0, 1e3}) {
    const long double want = specht_oracle(h);
    EXPECT_NEAR(specht_ratio(h), static_cast<double>(want), 1e-13 * static_cast<double>(want)) << "h=" << h;
  }
}

TEST(SpechtRatio, InversionSymmetry) {
  for (double h : {1e-4, 0.02, 0.5, 0.999, 1.0 + 1e-6, 7.0, 1234.5}) {
    EXPECT_NEAR(specht_ratio(h), specht_ratio(1.0 / h), 1e-13 * specht_ratio(h)) << h;
  }
}

TEST(SpechtRatio, IncreasingAboveOne) {
  double prev = 1.0;
  for (double h = 1.01; h < 50.0; h *= 1.1) {
    const double s = specht_ratio(h);
    EXPECT_GT(s, prev) << h;
    prev = s;
  }
}

TEST(SpechtRatio, ContinuousAcrossCutoff) {
  // log S(1 + d) = d^2 / 8 + O(d^3), so S is flat at the cutoff.
  for (double d : {0.5e-8, 0.9999e-8, 1.0001e-8, 2e-8, 1e-7, 1e-6, -1e-7, -1.0001e-8}) {
    EXPECT_NEAR(log_specht_ratio(1.0 + d), d * d / 8.0, 1e-15) << d;
  }
  EXPECT_NEAR(specht_ratio(1.0 + 0.9999e-8), specht_ratio(1.0 + 1.0001e-8), 1e-16);
}

TEST(SpechtRatio, RejectsNonPositive) {
  EXPECT_THROW((void)specht_ratio(0.0), DomainError);
  EXPECT_THROW((void)specht_ratio(-1.0), DomainError);
  EXPECT_THROW((void)specht_ratio(std::nan("")), DomainError);
}

TEST(LogMean, FrozenAndClosedForm) {
  EXPECT_NEAR(log_mean(0.5, 1.0), 0.72134752044448170, 1e-16);
  EXPECT_NEAR(log_mean(0.5, 1.0) * log_specht_ratio(0.5), 0.043035666027967103, 1e-16);
  for (auto [x, y] : std::vector<std::pair<double, double>>{{1, 2}, {1e-3, 1e3}, {5, 0.2}, {3, 3.3}}) {
    EXPECT_NEAR(log_mean(x, y), static_cast<double>(log_mean_oracle(x, y)), 1e-14 * std::max(x, y));
  }
}

TEST(LogMean, SymmetricAndBetweenGeometricAndArithmetic) {
  for (const Sample& s : samples(11, 500)) {
    const double l = log_mean(s.a, s.b);
    EXPECT_NEAR(l, log_mean(s.b, s.a), 1e-13 * l);
    EXPECT_GE(l, std::sqrt(s.a * s.b) * (1 - 1e-13));
    EXPECT_LE(l, 0.5 * (s.a + s.b) * (1 + 1e-13));
  }
}

TEST(LogMean, ContinuousAcrossCutoff) {
  // L(x, x e^u) = x (1 + u/2 + u^2/6 + ...).
  for (double u : {0.5e-8, 0.9999e-8, 1.0001e-8, 3e-8, -1.0001e-8}) {
    EXPECT_NEAR(log_mean(2.0, 2.0 * std::exp(u)), 2.0 * (1.0 + u / 2.0), 1e-15) << u;
  }
  EXPECT_EQ(log_mean(3.0, 3.0), 3.0);
}

TEST(PositivePair, Validation) {
  EXPECT_THROW(PositivePair(0.0, 1.0, 0.5), DomainError);
  EXPECT_THROW(PositivePair(1.0, -1.0, 0.5), DomainError);
  EXPECT_THROW(PositivePair(1.0, 1.0, -0.01), DomainError);
  EXPECT_THROW(PositivePair(1.0, 1.0, 1.01), DomainError);
  EXPECT_THROW(PositivePair(INFINITY, 1.0, 0.5), DomainError);
  EXPECT_NO_THROW(PositivePair(1e-300, 1e300, 1.0));
}

TEST(Means, WeightedGeometricMatchesPow) {
  for (const Sample& s : samples(3, 200)) {
    const long double want = std::pow(static_cast<long double>(s.a), 1.0L - s.lambda) *
                             std::pow(static_cast<long double>(s.b), static_cast<long double>(s.lambda));
    EXPECT_NEAR(weighted_geometric({s.a, s.b, s.lambda}), static_cast<double>(want), 1e-13 * static_cast<double>(want));
  }
  EXPECT_EQ(weighted_geometric({0.7, 0.7, 0.3}), 0.7);
}

TEST(ScalarBounds, FrozenRightHandSides) {
  EXPECT_NEAR(tominaga_ratio_bound({0.5, 1.0, 0.05}).rhs, 0.54945427512162340, 1e-15);
  EXPECT_NEAR(tominaga_ratio_bound({1.0, 2.0, 0.5}).rhs, 1.5011533181238854, 1e-15);
  const ScalarBoundEval nd = new_diff_bound({0.5, 1.0, 0.2});
  EXPECT_NEAR(nd.rhs - weighted_geometric({0.5, 1.0, 0.2}), 0.076872482226912230, 1e-15);
}

TEST(ScalarBounds, TominagaDiffRhsIsGeometricPlusConstant) {
  const PositivePair p(1.0, 2.0, 0.3);
  EXPECT_NEAR(tominaga_diff_bound(p).rhs - weighted_geometric(p), 0.086071332055934207, 1e-15);
}

TEST(ScalarBounds, AllHoldOnRandomSamples) {
  for (const Sample& s : samples(2024, 3000)) {
    const PositivePair p(s.a, s.b, s.lambda);
    for (const ScalarBoundEval& e : {young_bound(p), tominaga_ratio_bound(p), tominaga_diff_bound(p),
                                     new_ratio_bound(p), new_diff_bound(p)}) {
      EXPECT_TRUE(e.holds) << to_string(e.inequality_id) << " a=" << s.a << " b=" << s.b << " l=" << s.lambda
                           << " slack=" << e.slack;
      EXPECT_EQ(e.slack, e.rhs - e.lhs);
      EXPECT_DOUBLE_EQ(e.tolerance, Tolerance{}.absolute({e.lhs, e.rhs}));
    }
  }
}

TEST(ScalarBounds, SlackOrderingOfYoung) {
  // G <= A always; the reverse bounds put A below something larger than G.
  for (const Sample& s : samples(8, 200)) {
    const PositivePair p(s.a, s.b, s.lambda);
    EXPECT_LE(young_bound(p).lhs, young_bound(p).rhs * (1 + 1e-14));
    EXPECT_EQ(young_bound(p).rhs, tominaga_ratio_bound(p).lhs);
  }
}

TEST(ScalarBounds, EqualityCases) {
  for (const Sample& s : samples(99, 100)) {
    for (double lambda : {0.0, 1.0}) {
      const PositivePair p(s.a, s.b, lambda);
      for (const ScalarBoundEval& e : {young_bound(p), new_ratio_bound(p), new_diff_bound(p)}) {
        EXPECT_LE(std::abs(e.slack), 1e-12 * std::max({1.0, e.lhs, e.rhs})) << to_string(e.inequality_id);
      }
    }
    const PositivePair same(s.a, s.a, s.lambda);
    for (const ScalarBoundEval& e : {young_bound(same), tominaga_ratio_bound(same), tominaga_diff_bound(same),
                                     new_ratio_bound(same), new_diff_bound(same)}) {
      EXPECT_LE(std::abs(e.slack), 1e-12 * std::max(1.0, e.rhs)) << to_string(e.inequality_id);
    }
  }
}

TEST(ScalarBounds, TominagaConstantsDoNotVanishAtEndpointWeights) {
  // S(a/b) and L(a,b) log S(a/b) do not depend on lambda, so these bounds are
  // strict at lambda = 0 whenever a != b.
  EXPECT_GT(tominaga_ratio_bound({1.0, 4.0, 0.0}).slack, 0.2);
  EXPECT_GT(tominaga_diff_bound({1.0, 4.0, 0.0}).slack, 0.1);
}

TEST(ConvexityGap, FrozenValues) {
  const ScalarBoundEval e = convexity_gap_bound(ConvexFunction::exp(), 0.0, 1.0, 0.5);
  EXPECT_NEAR(e.lhs, 0.21041964352939447, 1e-15);
  EXPECT_NEAR(e.rhs, 0.67957045711476131, 1e-15);
  EXPECT_TRUE(e.holds);
  const ScalarBoundEval n = convexity_gap_bound(ConvexFunction::neg_log(), 0.5, 1.0, 0.5);
  EXPECT_NEAR(n.lhs, 0.058891517828191727, 1e-15);
  EXPECT_NEAR(n.rhs, 0.25 * 4.0 * 0.25, 1e-15);
  EXPECT_DOUBLE_EQ(n.slack, std::min(n.rhs - n.lhs, n.lhs));
}

TEST(ConvexityGap, HoldsOnRandomIntervals) {
  for (const Sample& s : samples(5, 1000)) {
    const double lo = std::min(s.a, s.b);
    const double hi = std::max(s.a, s.b);
    EXPECT_TRUE(convexity_gap_bound(ConvexFunction::neg_log(), lo, hi, s.lambda).holds);
    EXPECT_TRUE(convexity_gap_bound(ConvexFunction::exp(), std::log(lo), std::log(hi), s.lambda).holds);
  }
}

TEST(ConvexityGap, UserFunction) {
  const auto square = ConvexFunction::user([](double x) { return x * x; }, 2.0, [](double) { return 2.0; });
  // For f = x^2 the gap equals lambda (1 - lambda) (b - a)^2 exactly.
  const ScalarBoundEval e = convexity_gap_bound(square, -1.0, 2.0, 0.3);
  EXPECT_NEAR(e.lhs, 0.21 * 9.0, 1e-14);
  EXPECT_NEAR(e.rhs, 0.21 * 2.0 * 9.0, 1e-14);
  EXPECT_TRUE(e.holds);
  EXPECT_EQ(square.name(), "user");
}

TEST(ConvexityGap, Errors) {
  EXPECT_THROW((void)convexity_gap_bound(ConvexFunction::exp(), 2.0, 1.0, 0.5), PreconditionError);
  EXPECT_THROW((void)convexity_gap_bound(ConvexFunction::neg_log(), 0.0, 1.0, 0.5), DomainError);
  const auto concave = ConvexFunction::user([](double x) { return -x * x; }, 1.0, [](double) { return -2.0; });
  EXPECT_THROW((void)convexity_gap_bound(concave, 0.0, 1.0, 0.5), DomainError);
  // An understated bound makes the check fail rather than throw.
  const auto cube = ConvexFunction::user([](double x) { return x * x * x; }, 0.1, [](double x) { return 6 * x; });
  EXPECT_FALSE(convexity_gap_bound(cube, 1.0, 3.0, 0.5).holds);
}

TEST(Comparisons, PublishedValues) {
  EXPECT_NEAR(compare_ratio_bounds(0.5, 0.05), -0.012829489724800771, 1e-15);
  EXPECT_NEAR(compare_ratio_bounds(0.5, 0.1), 0.032698592859124381, 1e-15);
  EXPECT_NEAR(compare_diff_bounds(0.5, 0.2), -0.033836816198945125, 1e-15);
  EXPECT_NEAR(compare_diff_bounds(0.5, 0.05), 0.020214147866852536, 1e-15);
}

TEST(Comparisons, DomainChecks) {
  EXPECT_THROW((void)compare_ratio_bounds(0.0, 0.5), DomainError);
  EXPECT_THROW((void)compare_ratio_bounds(1.5, 0.5), DomainError);
  EXPECT_THROW((void)compare_diff_bounds(0.5, -0.1), DomainError);
  EXPECT_NEAR(compare_ratio_bounds(1.0, 0.5), 0.0, 1e-15);
  EXPECT_NEAR(compare_diff_bounds(1.0, 0.5), 0.0, 1e-15);
}
