#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "revyoung/errors.hpp"
#include "revyoung/harness.hpp"
#include "revyoung/rng.hpp"
#include "revyoung/sampling.hpp"

namespace revyoung {
namespace {

enum : std::uint64_t { kRoleScalar = 6, kRoleOrderedLambda = 7, kRoleBoxLambda = 8 };

/// Runs body(i) for i in [0, count) on up to `threads` workers with static
/// contiguous chunks.  The first exception thrown by any worker is rethrown.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body body) {
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back([&, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

struct Outcome {
  CheckOutcome check;
  ReplayCase instance;
};

/// Folds per-instance outcomes into a row in index order; ties keep the first.
void fold(SuiteRow& row, const CheckOutcome& check, const ReplayCase& instance, std::size_t index) {
  const bool first = row.instances == 0;
  ++row.instances;
  if (check.holds) ++row.passes;
  if (first || check.slack < row.worst_slack) {
    row.worst_slack = check.slack;
    row.worst_tolerance = check.tolerance;
    row.worst_index = index;
    row.worst_case = instance;
  }
}

SuiteRow make_row(Target target, RatioVariant variant, std::string label) {
  SuiteRow row;
  row.target = target;
  row.variant = variant;
  row.label = std::move(label);
  return row;
}

}  // namespace

bool SuiteReport::all_hold() const {
  return std::all_of(rows.begin(), rows.end(), [](const SuiteRow& r) { return r.passes == r.instances; });
}

const SuiteRow* SuiteReport::find(std::string_view label) const {
  for (const SuiteRow& r : rows)
    if (r.label == label) return &r;
  return nullptr;
}

ReplayCase scalar_sample(const ScalarSuiteConfig& config, std::size_t index) {
  CounterRng rng(config.seed, stream_key(index, kRoleScalar));
  ReplayCase c;
  c.a = config.lo * std::pow(config.hi / config.lo, rng.uniform());
  c.b = config.lo * std::pow(config.hi / config.lo, rng.uniform());
  c.lambda = config.lambda.value_or(rng.uniform());
  switch (index) {
    case 0: c.b = c.a; break;
    case 1: if (!config.lambda) c.lambda = 0.0; break;
    case 2: if (!config.lambda) c.lambda = 1.0; break;
    default: break;
  }
  return c;
}

SuiteReport verify_scalar_suite(const ScalarSuiteConfig& config) {
  if (!(config.lo > 0.0) || !(config.lo <= config.hi)) throw PreconditionError("scalar suite needs 0 < lo <= hi");
  if (config.lambda && !(*config.lambda >= 0.0 && *config.lambda <= 1.0)) {
    throw PreconditionError("lambda must lie in [0, 1]");
  }

  const std::vector<std::pair<Target, std::string>> checks = {
      {Target::young, "young"},
      {Target::tominaga_ratio, "tominaga_ratio"},
      {Target::tominaga_diff, "tominaga_diff"},
      {Target::new_ratio, "new_ratio"},
      {Target::new_diff, "new_diff"},
      {Target::convexity_gap, "convexity_gap/neg_log"},
      {Target::convexity_gap, "convexity_gap/exp"},
  };

  std::vector<std::vector<Outcome>> outcomes(config.samples);
  parallel_for(config.samples, config.threads, [&](std::size_t i) {
    const ReplayCase base = scalar_sample(config, i);
    std::vector<Outcome>& out = outcomes[i];
    out.reserve(checks.size());
    for (const auto& [target, label] : checks) {
      ReplayCase c = base;
      if (label == "convexity_gap/neg_log") {
        c.a = std::min(base.a, base.b);
        c.b = std::max(base.a, base.b);
        c.function = "neg_log";
      } else if (label == "convexity_gap/exp") {
        c.a = std::log(std::min(base.a, base.b));
        c.b = std::log(std::max(base.a, base.b));
        c.function = "exp";
      }
      out.push_back({replay(target, RatioVariant::none, c, config.tolerance), std::move(c)});
    }
  });

  SuiteReport report;
  for (const auto& [target, label] : checks) report.rows.push_back(make_row(target, RatioVariant::none, label));
  for (std::size_t i = 0; i < outcomes.size(); ++i)
    for (std::size_t k = 0; k < checks.size(); ++k) {
      fold(report.rows[k], outcomes[i][k].check, outcomes[i][k].instance, i);
    }
  return report;
}

SuiteReport verify_matrix_suite(const MatrixSuiteConfig& config) {
  if (config.lambda && !(*config.lambda >= 0.0 && *config.lambda <= 1.0)) {
    throw PreconditionError("lambda must lie in [0, 1]");
  }

  struct Check {
    Target target;
    RatioVariant variant;
    std::string label;
  };
  std::vector<Check> box_checks = {
      {Target::young_op, RatioVariant::none, "young_op"},
      {Target::tominaga_ratio_op, RatioVariant::none, "tominaga_ratio_op"},
      {Target::tominaga_diff_op, RatioVariant::none, "tominaga_diff_op"},
  };
  std::vector<Check> ordered_checks = box_checks;
  for (RatioVariant v : config.variants) {
    ordered_checks.push_back({Target::new_ratio_op, v, "new_ratio_op/" + std::string(to_string(v))});
  }
  ordered_checks.push_back({Target::new_diff_op, RatioVariant::none, "new_diff_op"});

  auto lambda_for = [&](std::size_t index, std::uint64_t role) {
    if (config.lambda) return *config.lambda;
    CounterRng rng(config.seed, stream_key(index, role));
    return rng.uniform();
  };

  auto run = [&](std::size_t count, const std::vector<Check>& checks, bool ordered) {
    std::vector<std::vector<Outcome>> outcomes(count);
    parallel_for(count, config.threads, [&](std::size_t i) {
      ReplayCase c;
      c.pair = ordered ? random_ordered_pair(config.n, config.seed, config.h_target, i)
                       : random_box_pair(config.n, config.seed, config.box_m, config.box_M, i);
      c.lambda = lambda_for(i, ordered ? kRoleOrderedLambda : kRoleBoxLambda);
      for (const Check& k : checks) {
        outcomes[i].push_back({replay(k.target, k.variant, c, config.tolerance), {}});
      }
      // Stored once per instance, on the first outcome.
      outcomes[i].front().instance = std::move(c);
    });
    return outcomes;
  };

  SuiteReport report;
  for (const Check& k : ordered_checks) report.rows.push_back(make_row(k.target, k.variant, k.label));

  const auto ordered = run(config.ordered_count, ordered_checks, true);
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    for (std::size_t k = 0; k < ordered_checks.size(); ++k) {
      fold(report.rows[k], ordered[i][k].check, ordered[i].front().instance, i);
    }
  }
  // Box pairs continue the index sequence after the ordered ones.
  const auto box = run(config.box_count, box_checks, false);
  for (std::size_t i = 0; i < box.size(); ++i) {
    for (std::size_t k = 0; k < box_checks.size(); ++k) {
      fold(report.rows[k], box[i][k].check, box[i].front().instance, config.ordered_count + i);
    }
  }
  return report;
}

Report to_report(const SuiteReport& suite, std::string kind, const nlohmann::ordered_json& config) {
  Report r;
  r.kind = std::move(kind);
  r.header["config"] = config;
  r.header["rng"] = CounterRng::kAlgorithm;
  r.columns = {"inequality", "variant", "instances", "passes", "failures",
               "worst_slack", "worst_tolerance", "worst_index", "worst_case"};
  for (const SuiteRow& row : suite.rows) {
    r.rows.push_back({row.label, std::string(to_string(row.variant)), row.instances, row.passes,
                      row.failures(), number_cell(row.worst_slack), number_cell(row.worst_tolerance),
                      row.worst_index, row.instances ? to_json(row.worst_case) : nlohmann::ordered_json()});
  }
  return r;
}

}  // namespace revyoung
