#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "revyoung/errors.hpp"
#include "revyoung/harness.hpp"
#include "revyoung/matrix_io.hpp"
#include "revyoung/rng.hpp"
#include "revyoung/sampling.hpp"

namespace revyoung {
namespace {

constexpr std::size_t kCandidates = 4;
constexpr int kRefinementRounds = 20;
constexpr int kGoldenSteps = 6;
constexpr double kInvPhi = 0.6180339887498949;

double log_range(double u, double lo, double hi) { return lo * std::pow(hi / lo, u); }

struct Probe {
  double slack = 0.0;
  double tolerance = 0.0;
  bool holds = true;
  ReplayCase instance;
};

/// Where a matrix probe takes its eigenbases from: a rotation seed, and whether
/// both factors share one basis (commuting instances).  Scalar problems ignore it.
struct Basis {
  std::uint64_t seed = 0;
  bool aligned = false;

  friend bool operator==(const Basis&, const Basis&) = default;
};

/// Objective over the unit cube [0, 1]^dims.
struct Problem {
  std::size_t dims = 0;
  std::function<Probe(std::span<const double>, Basis)> evaluate;
};

Probe run_check(const FalsifyConfig& config, ReplayCase instance) {
  const CheckOutcome out = replay(config.target, config.variant, instance, config.tolerance);
  return {out.slack, out.tolerance, out.holds, std::move(instance)};
}

SymMatrix rotated_diagonal(std::span<const double> d, std::uint64_t rotation_seed, std::uint64_t role) {
  CounterRng rng(rotation_seed, role);
  return reassemble(random_orthogonal(d.size(), rng), d);
}

Problem make_problem(const FalsifyConfig& config) {
  const double h_max = config.h_max;
  const std::size_t n = config.n;

  if (!is_operator(config.target)) {
    if (config.scope != Scope::scalar) {
      throw PreconditionError(std::string(cli_name(config.target)) + " is scalar; use scalar scope");
    }
    return {3, [config](std::span<const double> x, Basis) {
              ReplayCase c;
              c.a = log_range(x[0], 1e-3, 1e3);
              c.b = log_range(x[1], 1e-3, 1e3);
              c.lambda = x[2];
              if (config.target != Target::convexity_gap) return run_check(config, c);
              // Both built-in functions on the interval spanned by (a, b); keep the worse.
              const double lo = std::min(c.a, c.b);
              const double hi = std::max(c.a, c.b);
              ReplayCase neg_log = c;
              neg_log.a = lo;
              neg_log.b = hi;
              neg_log.function = "neg_log";
              ReplayCase exp = c;
              exp.a = std::log(lo);
              exp.b = std::log(hi);
              exp.function = "exp";
              Probe p1 = run_check(config, neg_log);
              Probe p2 = run_check(config, exp);
              return p2.slack < p1.slack ? p2 : p1;
            }};
  }

  const bool ordered = requires_ordered(operator_id(config.target));
  if (config.scope == Scope::scalar) {
    return {3, [config, ordered, h_max](std::span<const double> x, Basis) {
              ReplayCase c;
              c.lambda = x[2];
              if (ordered) {
                // B = (b), A = (t b): ordered, with realized h = 1 / t.
                const double b = log_range(x[0], 1e-3, 1.0);
                const double t = log_range(x[1], 1.0 / h_max, 1.0);
                const double bb[] = {b};
                const double aa[] = {t * b};
                c.pair = make_pair(SymMatrix::diagonal(aa), SymMatrix::diagonal(bb));
              } else {
                const double aa[] = {log_range(x[0], 1.0 / h_max, 1.0)};
                const double bb[] = {log_range(x[1], 1.0 / h_max, 1.0)};
                c.pair = make_pair(SymMatrix::diagonal(aa), SymMatrix::diagonal(bb));
              }
              return run_check(config, c);
            }};
  }

  // Ordered: (B, T) with A = B^{1/2} T B^{1/2}, spec(B) in [h_max^{-s}, 1] and
  // spec(T) in [h_max^{s-1}, 1] for a split coordinate s, so h <= h_max.
  // Box: (A, B) with spectra in [1 / h_max, 1].
  return {ordered ? 2 * n + 2 : 2 * n + 1, [config, ordered, h_max, n](std::span<const double> x, Basis basis) {
            const double s = ordered ? x[2 * n + 1] : 0.5;
            const double lo1 = ordered ? std::pow(h_max, -s) : 1.0 / h_max;
            const double lo2 = ordered ? std::pow(h_max, s - 1.0) : 1.0 / h_max;
            std::vector<double> d1(n), d2(n);
            for (std::size_t i = 0; i < n; ++i) {
              d1[i] = log_range(x[i], lo1, 1.0);
              d2[i] = log_range(x[n + i], lo2, 1.0);
            }
            ReplayCase c;
            c.lambda = x[2 * n];
            const SymMatrix first = rotated_diagonal(d1, basis.seed, 0);
            const SymMatrix second = rotated_diagonal(d2, basis.seed, basis.aligned ? 0 : 1);
            c.pair = ordered ? ordered_pair_from_factors(first, second) : make_pair(first, second);
            return run_check(config, c);
          }};
}

struct Candidate {
  double slack;
  std::vector<double> x;
  Basis basis;
  Probe probe;
};

class Search {
 public:
  Search(const Problem& problem, std::size_t budget) : problem_(problem), budget_(budget) {}

  [[nodiscard]] bool exhausted() const { return evaluations_ >= budget_; }
  [[nodiscard]] std::size_t evaluations() const { return evaluations_; }
  [[nodiscard]] const std::vector<Candidate>& top() const { return top_; }

  /// Evaluates x unless the budget is spent.
  std::optional<double> evaluate(const std::vector<double>& x, Basis basis) {
    if (exhausted()) return std::nullopt;
    ++evaluations_;
    Probe p = problem_.evaluate(x, basis);
    const double slack = p.slack;
    offer({slack, x, basis, std::move(p)});
    return slack;
  }

 private:
  void offer(Candidate c) {
    for (const Candidate& existing : top_)
      if (existing.x == c.x && existing.basis == c.basis) return;
    if (top_.size() == kCandidates && !(c.slack < top_.back().slack)) return;
    const auto pos = std::upper_bound(top_.begin(), top_.end(), c.slack,
                                      [](double s, const Candidate& k) { return s < k.slack; });
    top_.insert(pos, std::move(c));
    if (top_.size() > kCandidates) top_.pop_back();
  }

  const Problem& problem_;
  std::size_t budget_;
  std::size_t evaluations_ = 0;
  std::vector<Candidate> top_;
};

/// Golden-section minimization of coordinate `k` over [lo, hi], starting from x.
/// Returns the best point seen (x itself if nothing improved).
void golden_section(Search& search, std::vector<double>& x, double& fx, std::size_t k, double lo, double hi,
                    Basis basis) {
  double a = lo;
  double b = hi;
  std::vector<double> probe = x;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  probe[k] = c;
  auto fc = search.evaluate(probe, basis);
  probe[k] = d;
  auto fd = search.evaluate(probe, basis);
  if (!fc || !fd) return;
  auto consider = [&](double coord, double value) {
    if (value < fx) {
      fx = value;
      x[k] = coord;
    }
  };
  consider(c, *fc);
  consider(d, *fd);
  for (int step = 0; step < kGoldenSteps; ++step) {
    if (*fc < *fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      probe[k] = c;
      fc = search.evaluate(probe, basis);
      if (!fc) return;
      consider(c, *fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      probe[k] = d;
      fd = search.evaluate(probe, basis);
      if (!fd) return;
      consider(d, *fd);
    }
  }
}

}  // namespace

FalsifyResult falsify(const FalsifyConfig& config_in) {
  FalsifyConfig config = config_in;
  if (config.budget == 0) throw PreconditionError("falsify budget must be at least 1");
  if (!(config.h_max >= 1.0) || !std::isfinite(config.h_max)) throw PreconditionError("h_max must be >= 1");
  if (config.scope == Scope::matrix && (config.n == 0 || config.n > kMaxDim)) {
    throw PreconditionError("matrix scope needs 1 <= n <= " + std::to_string(kMaxDim));
  }
  if (config.target == Target::new_ratio_op) {
    if (config.variant == RatioVariant::none) {
      throw PreconditionError("new-ratio-op needs variant as_stated or as_proved");
    }
  } else {
    config.variant = RatioVariant::none;
  }

  const Problem problem = make_problem(config);
  Search search(problem, config.budget);
  SearchTrace trace;
  trace.budget = config.budget;
  const std::size_t dims = problem.dims;
  // The grid probes commuting instances; random probes mostly do not.
  const Basis grid_basis{CounterRng::mix64(config.seed ^ 0x6772696400000000ULL), true};

  // Coarse grid over a quarter of the budget, endpoints included.
  const auto per_axis = static_cast<std::size_t>(
      std::floor(std::pow(static_cast<double>(config.budget) / 4.0, 1.0 / static_cast<double>(dims)) + 1e-9));
  if (per_axis >= 2) {
    std::vector<std::size_t> idx(dims, 0);
    std::vector<double> x(dims);
    while (true) {
      for (std::size_t k = 0; k < dims; ++k) x[k] = static_cast<double>(idx[k]) / static_cast<double>(per_axis - 1);
      if (!search.evaluate(x, grid_basis)) break;
      ++trace.grid_points;
      std::size_t k = 0;
      while (k < dims && ++idx[k] == per_axis) idx[k++] = 0;
      if (k == dims) break;
    }
  }

  // Random probes up to three quarters of the budget.
  const std::size_t random_end = std::max<std::size_t>({search.evaluations(), config.budget * 3 / 4, 1});
  for (std::size_t i = 0; search.evaluations() < random_end; ++i) {
    CounterRng rng(config.seed, stream_key(i, 1));
    std::vector<double> x(dims);
    for (double& v : x) v = rng.uniform();
    if (!search.evaluate(x, Basis{rng.next_u64(), i % 4 == 0})) break;
    ++trace.random_probes;
  }

  // Coordinate-wise golden-section refinement of the best candidates.
  const std::vector<Candidate> seeds = search.top();
  for (const Candidate& start : seeds) {
    std::vector<double> x = start.x;
    double fx = start.slack;
    for (int round = 0; round < kRefinementRounds && !search.exhausted(); ++round) {
      const double width = 0.25 * std::pow(0.5, round);
      for (std::size_t k = 0; k < dims && !search.exhausted(); ++k) {
        golden_section(search, x, fx, k, std::max(0.0, x[k] - width), std::min(1.0, x[k] + width),
                       start.basis);
      }
      ++trace.refinement_rounds;
    }
  }
  trace.evaluations = search.evaluations();

  const Candidate& best = search.top().front();
  FalsifyResult result;
  result.best.target = config.target;
  result.best.variant = config.variant;
  result.best.instance = best.probe.instance;
  result.best.min_slack = best.probe.slack;
  result.best.tolerance = best.probe.tolerance;
  result.best.trace = trace;
  if (!best.probe.holds) result.violation = result.best;
  return result;
}

Report to_report(const std::vector<FalsifyResult>& results, const nlohmann::ordered_json& config) {
  Report r;
  r.kind = "falsify";
  r.header["config"] = config;
  r.header["rng"] = CounterRng::kAlgorithm;
  r.columns = {"target",      "variant",       "violation", "min_slack",        "tolerance",
               "evaluations", "grid_points",   "random_probes", "refinement_rounds", "instance"};
  for (const FalsifyResult& res : results) {
    const ViolationRecord& b = res.best;
    r.rows.push_back({std::string(cli_name(b.target)), std::string(to_string(b.variant)),
                      res.violation.has_value(), number_cell(b.min_slack), number_cell(b.tolerance),
                      b.trace.evaluations, b.trace.grid_points, b.trace.random_probes,
                      b.trace.refinement_rounds, to_json(b.instance)});
  }
  return r;
}

}  // namespace revyoung
