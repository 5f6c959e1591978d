// Acceptance run: one PASS/FAIL line per criterion.  Exit status is nonzero
// when any criterion fails.

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "revyoung/cli.hpp"
#include "revyoung/harness.hpp"
#include "revyoung/linalg.hpp"
#include "revyoung/operator_means.hpp"
#include "revyoung/rng.hpp"
#include "revyoung/sampling.hpp"
#include "revyoung/scalar_ineq.hpp"

using namespace revyoung;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

/// Collects failure messages; keeps the first few.
class Failures {
 public:
  void add(const std::string& message) {
    if (count_++ < 5) messages_ << (count_ > 1 ? "; " : "") << message;
  }
  [[nodiscard]] bool empty() const { return count_ == 0; }
  [[nodiscard]] std::string summary() const {
    return messages_.str() + (count_ > 5 ? " (+" + std::to_string(count_ - 5) + " more)" : "");
  }

 private:
  std::size_t count_ = 0;
  std::ostringstream messages_;
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

Verdict ac1_remark() {
  Failures f;
  double worst = 0.0;
  for (const RemarkRow& r : remark_repro()) {
    worst = std::max(worst, r.abs_error);
    if (!(r.abs_error <= 5e-8)) f.add(r.quantity + " t=" + fmt(r.t) + " lambda=" + fmt(r.lambda) + " error " + fmt(r.abs_error));
  }
  std::ostringstream sink;
  const std::vector<std::string> args{"repro-remark"};
  if (cli::run(args, sink, sink) != cli::kExitPass) f.add("repro-remark exit status nonzero");
  return {f.empty(), f.empty() ? "4 rows, max abs error " + fmt(worst) : f.summary()};
}

Verdict ac2_scalar() {
  Failures f;
  ScalarSuiteConfig config;
  config.samples = 10000;
  config.tolerance = Tolerance{1e-10};
  const SuiteReport suite = verify_scalar_suite(config);
  double worst = INFINITY;
  for (const SuiteRow& row : suite.rows) {
    if (row.instances != 10000) f.add(row.label + " ran " + std::to_string(row.instances) + " instances");
    if (row.failures()) f.add(row.label + " failed " + std::to_string(row.failures()) + " (worst " + fmt(row.worst_slack) + ")");
    worst = std::min(worst, row.worst_slack);
  }

  // Equality cases.  The Tominaga constants depend on a/b only, not on lambda,
  // so for those two bounds only a = b is an equality case.
  std::size_t equality_checks = 0;
  auto expect_zero = [&](const ScalarBoundEval& e, const std::string& where) {
    ++equality_checks;
    const double scale = std::max({1.0, std::abs(e.lhs), std::abs(e.rhs)});
    if (!(std::abs(e.slack) <= 1e-12 * scale)) f.add(std::string(to_string(e.inequality_id)) + " at " + where + " slack " + fmt(e.slack));
  };
  for (std::size_t i = 0; i < 1000; ++i) {
    const ReplayCase s = scalar_sample(config, i + 3);
    const double lo = std::min(s.a, s.b), hi = std::max(s.a, s.b);
    for (double lambda : {0.0, 1.0}) {
      const PositivePair p(s.a, s.b, lambda);
      const std::string where = "lambda=" + fmt(lambda);
      expect_zero(young_bound(p), where);
      expect_zero(new_ratio_bound(p), where);
      expect_zero(new_diff_bound(p), where);
      expect_zero(convexity_gap_bound(ConvexFunction::neg_log(), lo, hi, lambda), where);
      expect_zero(convexity_gap_bound(ConvexFunction::exp(), std::log(lo), std::log(hi), lambda), where);
    }
    const PositivePair same(s.a, s.a, s.lambda);
    for (const ScalarBoundEval& e : {young_bound(same), tominaga_ratio_bound(same), tominaga_diff_bound(same),
                                     new_ratio_bound(same), new_diff_bound(same)}) {
      expect_zero(e, "a=b");
    }
    expect_zero(convexity_gap_bound(ConvexFunction::neg_log(), s.a, s.a, s.lambda), "a=b");
    expect_zero(convexity_gap_bound(ConvexFunction::exp(), std::log(s.a), std::log(s.a), s.lambda), "a=b");
  }
  return {f.empty(), f.empty() ? "7 rows x 10000 samples hold, worst slack " + fmt(worst) + "; " +
                                     std::to_string(equality_checks) + " equality cases within 1e-12*scale"
                               : f.summary()};
}

Verdict ac3_operator() {
  Failures f;
  std::ostringstream detail;
  for (std::size_t n : {2u, 4u, 8u}) {
    MatrixSuiteConfig config;
    config.n = n;
    config.ordered_count = 1000;
    config.box_count = 1000;
    config.tolerance = Tolerance{1e-9};
    config.variants = {RatioVariant::as_proved};
    const SuiteReport suite = verify_matrix_suite(config);
    double worst = INFINITY;
    for (const char* label : {"tominaga_ratio_op", "tominaga_diff_op", "new_diff_op", "new_ratio_op/as_proved"}) {
      const SuiteRow* row = suite.find(label);
      if (!row) {
        f.add(std::string("missing row ") + label);
        continue;
      }
      const std::size_t expected = row->target == Target::new_ratio_op || row->target == Target::new_diff_op ? 1000 : 2000;
      if (row->instances != expected) f.add(std::string(label) + " instance count " + std::to_string(row->instances));
      if (row->failures()) f.add("n=" + std::to_string(n) + " " + label + " failed " + std::to_string(row->failures()));
      worst = std::min(worst, row->worst_slack);
    }
    detail << (n == 2 ? "" : ", ") << "n=" << n << " worst " << fmt(worst);
  }
  return {f.empty(), f.empty() ? "1000 ordered + 1000 box pairs per n hold (" + detail.str() + ")" : f.summary()};
}

Verdict ac4_falsify() {
  Failures f;
  FalsifyConfig config;
  config.target = Target::new_ratio_op;
  config.variant = RatioVariant::as_stated;
  config.budget = 10000;
  const FalsifyResult r = falsify(config);
  if (!r.violation) f.add("no violation found, best slack " + fmt(r.best.min_slack));
  else if (!(r.violation->min_slack <= -0.04)) f.add("min slack " + fmt(r.violation->min_slack) + " > -0.04");
  // The documented witness.
  const SpdPair pair = make_ordered_pair(0.25 * SymMatrix::identity(2), SymMatrix::identity(2));
  const OperatorBoundReport w = check_new_ratio(pair, 0.5, RatioVariant::as_stated);
  if (w.holds || std::abs(w.min_slack_eigenvalue - (-0.049503527654411775)) > 1e-12) {
    f.add("witness A=I/4, B=I slack " + fmt(w.min_slack_eigenvalue));
  }
  if (f.empty()) {
    return {true, "min slack " + fmt(r.violation->min_slack) + " in " + std::to_string(r.violation->trace.evaluations) +
                      " evaluations; witness A=I/4, B=I, lambda=1/2 slack " + fmt(w.min_slack_eigenvalue)};
  }
  return {false, f.summary()};
}

Verdict ac5_commuting() {
  Failures f;
  double max_error = 0.0;
  std::size_t spectra = 0;
  auto compare = [&](const OperatorBoundReport& r, std::vector<double> want, std::size_t i) {
    std::sort(want.begin(), want.end());
    ++spectra;
    for (std::size_t k = 0; k < want.size(); ++k) {
      // Relative to max(1, |value|): the as_proved constant reaches 1e77 at h near
      // 100 and overflows (a vacuous bound, infinite slack) beyond.
      const double got = r.slack_spectrum[k];
      const double err = std::isinf(got) && got == want[k] ? 0.0 : std::abs(got - want[k]) / std::max(1.0, std::abs(want[k]));
      max_error = std::max(max_error, err);
      if (!(err <= 1e-10)) {
        f.add("pair " + std::to_string(i) + " " + std::string(to_string(r.inequality_id)) + "/" +
              std::string(to_string(r.variant)) + " error " + fmt(err));
        return;
      }
    }
  };

  for (std::size_t i = 0; i < 100; ++i) {
    CounterRng rng(2026, stream_key(i, 9));
    const std::size_t n = 1 + i % 6;
    std::vector<double> bd(n), ad(n);
    for (std::size_t k = 0; k < n; ++k) {
      bd[k] = std::pow(10.0, rng.uniform(-1.0, 0.0));
      ad[k] = bd[k] * std::pow(10.0, rng.uniform(-1.0, 0.0));
    }
    const double lambda = rng.uniform();
    const SpdPair pair = make_ordered_pair(SymMatrix::diagonal(ad), SymMatrix::diagonal(bd));
    const double h = pair.h;
    const double w = lambda * (1.0 - lambda);

    std::vector<double> young, t_ratio, t_diff, stated, proved, diff;
    for (std::size_t k = 0; k < n; ++k) {
      const PositivePair p(ad[k], bd[k], lambda);
      const double g = weighted_geometric(p);
      const double a = weighted_arithmetic(p);
      young.push_back(a - g);
      t_ratio.push_back(specht_ratio(h) * g - a);
      t_diff.push_back(g + log_mean(1.0, h) * log_specht_ratio(h) * bd[k] - a);
      stated.push_back(std::exp(w * std::pow(1.0 - 1.0 / h, 2.0)) * g - a);
      proved.push_back(std::exp(w * std::pow(h - 1.0, 2.0)) * g - a);
      diff.push_back(g + w * std::pow(std::log(h), 2.0) * bd[k] - a);
    }
    compare(check_operator_young(pair, lambda), young, i);
    compare(check_tominaga_ratio(pair, lambda), t_ratio, i);
    compare(check_tominaga_diff(pair, lambda), t_diff, i);
    compare(check_new_ratio(pair, lambda, RatioVariant::as_stated), stated, i);
    compare(check_new_ratio(pair, lambda, RatioVariant::as_proved), proved, i);
    compare(check_new_diff(pair, lambda), diff, i);
  }
  return {f.empty(), f.empty() ? std::to_string(spectra) + " slack spectra match, max error " + fmt(max_error) : f.summary()};
}

Verdict ac6_eigen() {
  Failures f;
  double worst_recon = 0.0, worst_orth = 0.0, worst_sqrt = 0.0;
  for (std::size_t i = 0; i < 1000; ++i) {
    const std::size_t n = 1 + i % 16;
    CounterRng rng(6, stream_key(i, 1));
    SymMatrix a(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r; c < n; ++c) a.set(r, c, rng.uniform(-10.0, 10.0));
    const EigenDecomp e = sym_eigen(a);
    const double nd = static_cast<double>(n);
    const double recon = (reassemble(e.q, e.eigenvalues) - a).max_abs() / (nd * a.max_abs());
    const double orth = (e.q.transpose() * e.q - Matrix::identity(n)).max_abs() / nd;
    worst_recon = std::max(worst_recon, recon);
    worst_orth = std::max(worst_orth, orth);
    if (!(recon <= 1e-11)) f.add("reconstruction n=" + std::to_string(n) + " " + fmt(recon));
    if (!(orth <= 1e-12)) f.add("orthogonality n=" + std::to_string(n) + " " + fmt(orth));
  }
  for (std::size_t i = 0; i < 200; ++i) {
    SamplerConfig config;
    config.n = 1 + i % 16;
    config.seed = 66;
    config.spectrum_lo = 1e-3;
    config.spectrum_hi = 10.0;
    const SymMatrix a = random_spd(config, i);
    const SymMatrix r = matrix_sqrt(a);
    const double err = (r.to_matrix() * r.to_matrix() - a.to_matrix()).max_abs();
    worst_sqrt = std::max(worst_sqrt, err);
    if (!(err <= 1e-10)) f.add("sqrt round trip n=" + std::to_string(config.n) + " " + fmt(err));
  }
  return {f.empty(), f.empty() ? "1000 matrices: reconstruction/(n|A|) " + fmt(worst_recon) + ", orthogonality/n " +
                                     fmt(worst_orth) + "; 200 sqrt round trips max " + fmt(worst_sqrt)
                               : f.summary()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict ac7_determinism() {
  Failures f;
  const fs::path dir = fs::temp_directory_path() / ("revyoung_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::ofstream(dir / "pair.json")
      << R"({"A": {"n": 2, "rows": [[0.25, 0.05], [0.05, 0.3]]}, "B": {"n": 2, "rows": [[1, 0], [0, 0.9]]}})";

  const std::vector<std::vector<std::string>> commands = {
      {"repro-remark"},
      {"scalar-verify", "--samples", "5000", "--seed", "17"},
      {"matrix-verify", "--samples", "300", "--seed", "17", "--dim", "4"},
      {"dominance"},
      {"falsify", "--seed", "17", "--budget", "3000"},
      {"falsify", "--seed", "17", "--budget", "2000", "--scope", "matrix", "--dim", "3"},
      {"check", "--matrices", (dir / "pair.json").string()},
  };
  std::size_t compared = 0;
  for (const auto& base : commands) {
    const bool threaded = base.front() == "scalar-verify" || base.front() == "matrix-verify";
    for (const char* format : {"csv", "json"}) {
      std::vector<std::string> contents;
      for (const char* threads : {"1", "1", "4"}) {
        if (!threaded && std::string(threads) == "4" && contents.size() == 2) break;
        std::vector<std::string> args = base;
        const fs::path out = dir / ("report_" + std::to_string(contents.size()));
        args.insert(args.end(), {"--format", format, "--out", out.string()});
        if (threaded) args.insert(args.end(), {"--threads", threads});
        std::ostringstream sink;
        const int status = cli::run(args, sink, sink);
        if (status == cli::kExitUsage || status == cli::kExitNumerical) f.add(base.front() + " exit " + std::to_string(status));
        contents.push_back(slurp(out));
      }
      for (std::size_t k = 1; k < contents.size(); ++k) {
        ++compared;
        if (contents[k] != contents[0] || contents[0].empty()) f.add(base.front() + " " + format + " run " + std::to_string(k) + " differs");
      }
    }
  }
  fs::remove_all(dir);
  return {f.empty(), f.empty() ? std::to_string(compared) + " report pairs byte-identical (reruns and --threads 1 vs 4)" : f.summary()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* id;
    const char* name;
    double budget_seconds;  // 0: no runtime bound
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {"AC1", "remark reproduction", 1.0, ac1_remark},
      {"AC2", "scalar inequality suite", 5.0, ac2_scalar},
      {"AC3", "operator suite", 60.0, ac3_operator},
      {"AC4", "as_stated discrepancy found", 10.0, ac4_falsify},
      {"AC5", "commuting-case oracle", 0.0, ac5_commuting},
      {"AC6", "eigensolver properties", 0.0, ac6_eigen},
      {"AC7", "determinism", 0.0, ac7_determinism},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && seconds >= c.budget_seconds) {
      v.pass = false;
      v.detail += "; runtime exceeds " + fmt(c.budget_seconds) + " s";
    }
    std::printf("[%s] %s %s: %s (%.3f s)\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), seconds);
    failed += v.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
