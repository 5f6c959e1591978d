#include "revyoung/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "revyoung/errors.hpp"
#include "revyoung/harness.hpp"
#include "revyoung/matrix_io.hpp"
#include "revyoung/operator_means.hpp"
#include "revyoung/targets.hpp"

namespace revyoung::cli {
namespace {

struct HelpRequested {};

struct CommandSpec {
  Command command;
  const char* name;
  const char* description;
  std::vector<std::string> flags;  // applicable flags, in embedding order
};

const std::vector<CommandSpec>& command_specs() {
  static const std::vector<CommandSpec> specs = {
      {Command::repro_remark, "repro-remark", "recompute the four published bound comparisons",
       {"format", "out"}},
      {Command::scalar_verify, "scalar-verify", "sample the scalar inequalities",
       {"seed", "samples", "lambda", "tolerance", "format", "out", "threads"}},
      {Command::matrix_verify, "matrix-verify", "sample ordered and box matrix pairs against the operator bounds",
       {"seed", "samples", "dim", "lambda", "variant", "h-target", "tolerance", "expect-violation", "format", "out",
        "threads"}},
      {Command::dominance, "dominance", "tabulate which reverse bound is tighter over a (t, lambda) grid",
       {"grid-step", "comparison", "format", "out"}},
      {Command::falsify, "falsify", "search for a violation of one inequality",
       {"seed", "target", "variant", "budget", "scope", "dim", "h-target", "tolerance", "expect-violation", "format",
        "out"}},
      {Command::check, "check", "check one matrix pair read from --matrices",
       {"matrices", "lambda", "variant", "tolerance", "expect-violation", "format", "out"}},
  };
  return specs;
}

const CommandSpec& spec_for(Command c) {
  for (const CommandSpec& s : command_specs())
    if (s.command == c) return s;
  throw UsageError("unknown command");
}

std::string variant_name(VariantChoice v) {
  switch (v) {
    case VariantChoice::as_stated: return "as_stated";
    case VariantChoice::as_proved: return "as_proved";
    case VariantChoice::both: return "both";
  }
  return "both";
}

std::string comparison_name(ComparisonChoice c) {
  switch (c) {
    case ComparisonChoice::ratio: return "ratio";
    case ComparisonChoice::diff: return "diff";
    case ComparisonChoice::both: return "both";
  }
  return "both";
}

std::vector<RatioVariant> ratio_variants(VariantChoice v) {
  switch (v) {
    case VariantChoice::as_stated: return {RatioVariant::as_stated};
    case VariantChoice::as_proved: return {RatioVariant::as_proved};
    case VariantChoice::both: return {RatioVariant::as_stated, RatioVariant::as_proved};
  }
  return {};
}

bool includes_as_stated(VariantChoice v) { return v != VariantChoice::as_proved; }

// ---------------------------------------------------------------------------
// Verdicts

struct Verdict {
  std::string label;
  bool as_stated_probe = false;
  bool failed = false;
};

/// Without --expect-violation: 0 iff nothing failed.  With it: 0 iff every
/// as_stated probe failed and nothing else did.
int exit_status(const std::vector<Verdict>& verdicts, bool expect_violation, std::ostream& out) {
  bool ok = true;
  for (const Verdict& v : verdicts) {
    if (v.failed && !(expect_violation && v.as_stated_probe)) {
      out << "VIOLATION: " << v.label << "\n";
      ok = false;
    } else if (v.failed) {
      out << "expected violation witnessed: " << v.label << "\n";
    } else if (expect_violation && v.as_stated_probe) {
      out << "expected violation NOT witnessed: " << v.label << "\n";
      ok = false;
    }
  }
  return ok ? kExitPass : kExitViolation;
}

void write_report(const CliConfig& config, const Report& report, std::ostream& out) {
  if (!config.out) return;
  emit_report(report, config.format, *config.out);
  out << "report written to " << config.out->string() << "\n";
}

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(10) << x;
  return s.str();
}

// ---------------------------------------------------------------------------
// Commands

int run_repro(const CliConfig& config, std::ostream& out) {
  const std::vector<RemarkRow> rows = remark_repro();
  out << std::left << std::setw(8) << "t" << std::setw(10) << "lambda" << std::setw(10) << "quantity"
      << std::setw(18) << "computed" << std::setw(14) << "published" << "abs_error\n";
  bool ok = true;
  for (const RemarkRow& r : rows) {
    out << std::left << std::setw(8) << r.t << std::setw(10) << r.lambda << std::setw(10) << r.quantity
        << std::setw(18) << fmt(r.computed) << std::setw(14) << r.paper << r.abs_error << "\n";
    ok = ok && r.abs_error <= kRemarkTolerance;
  }
  Report report = to_report(rows);
  report.header["config"] = to_json(config);
  write_report(config, report, out);
  out << (ok ? "all four values reproduced within " : "MISMATCH: tolerance ") << kRemarkTolerance << "\n";
  return ok ? kExitPass : kExitViolation;
}

void print_suite(const SuiteReport& suite, std::ostream& out) {
  out << std::left << std::setw(26) << "inequality" << std::setw(10) << "instances" << std::setw(10) << "passes"
      << "worst_slack\n";
  for (const SuiteRow& r : suite.rows) {
    out << std::left << std::setw(26) << r.label << std::setw(10) << r.instances << std::setw(10) << r.passes
        << fmt(r.worst_slack) << "\n";
  }
}

std::vector<Verdict> suite_verdicts(const SuiteReport& suite) {
  std::vector<Verdict> v;
  for (const SuiteRow& r : suite.rows) {
    std::ostringstream label;
    label << r.label << " failed on " << r.failures() << "/" << r.instances << " instances (worst slack "
          << fmt(r.worst_slack) << ")";
    v.push_back({r.failures() ? label.str() : r.label,
                 r.target == Target::new_ratio_op && r.variant == RatioVariant::as_stated, r.failures() > 0});
  }
  return v;
}

int run_scalar_verify(const CliConfig& config, std::ostream& out) {
  ScalarSuiteConfig sc;
  sc.samples = config.samples;
  sc.seed = config.seed;
  sc.lambda = config.lambda;
  sc.tolerance = Tolerance{config.tolerance};
  sc.threads = config.threads;
  const SuiteReport suite = verify_scalar_suite(sc);
  print_suite(suite, out);
  write_report(config, to_report(suite, "scalar_verify", to_json(config)), out);
  return exit_status(suite_verdicts(suite), false, out);
}

int run_matrix_verify(const CliConfig& config, std::ostream& out) {
  MatrixSuiteConfig mc;
  mc.n = config.dim;
  mc.seed = config.seed;
  mc.ordered_count = config.samples;
  mc.box_count = config.samples;
  mc.h_target = config.h_target;
  mc.lambda = config.lambda;
  mc.variants = ratio_variants(config.variant);
  mc.tolerance = Tolerance{config.tolerance};
  mc.threads = config.threads;
  const SuiteReport suite = verify_matrix_suite(mc);
  print_suite(suite, out);
  Report report = to_report(suite, "matrix_verify", to_json(config));
  report.header["box"] = {{"m", mc.box_m}, {"M", mc.box_M}};
  write_report(config, report, out);
  return exit_status(suite_verdicts(suite), config.expect_violation, out);
}

int run_dominance(const CliConfig& config, std::ostream& out) {
  const std::vector<double> t_grid = unit_grid(config.grid_step, false);
  const std::vector<double> lambda_grid = unit_grid(config.grid_step, true);
  std::vector<Comparison> ids;
  if (config.comparison != ComparisonChoice::diff) ids.push_back(Comparison::ratio);
  if (config.comparison != ComparisonChoice::ratio) ids.push_back(Comparison::diff);

  constexpr double kSignThreshold = 1e-6;
  std::vector<DominanceMap> maps;
  bool mixed = true;
  for (Comparison id : ids) {
    maps.push_back(dominance_map(id, t_grid, lambda_grid));
    const DominanceMap& m = maps.back();
    const bool neg = m.has_cell_below(-kSignThreshold);
    const bool pos = m.has_cell_above(kSignThreshold);
    out << to_string(id) << ": " << t_grid.size() << "x" << lambda_grid.size() << " cells, negative cell: "
        << (neg ? "yes" : "no") << ", positive cell: " << (pos ? "yes" : "no")
        << (neg && pos ? " -> neither bound dominates" : " -> one bound dominates on this grid") << "\n";
    mixed = mixed && neg && pos;
  }
  write_report(config, to_report(maps, to_json(config)), out);
  return mixed ? kExitPass : kExitViolation;
}

int run_falsify(const CliConfig& config, std::ostream& out) {
  const Target target = *parse_target(config.target);
  std::vector<RatioVariant> variants = {RatioVariant::none};
  if (target == Target::new_ratio_op) variants = ratio_variants(config.variant);

  std::vector<FalsifyResult> results;
  std::vector<Verdict> verdicts;
  for (RatioVariant v : variants) {
    FalsifyConfig fc;
    fc.target = target;
    fc.variant = v;
    fc.budget = config.budget;
    fc.seed = config.seed;
    fc.scope = config.scope == "matrix" ? Scope::matrix : Scope::scalar;
    fc.n = config.dim;
    fc.h_max = config.h_target;
    fc.tolerance = Tolerance{config.tolerance};
    results.push_back(falsify(fc));
    const FalsifyResult& r = results.back();
    std::string label = std::string(cli_name(target)) +
                        (v == RatioVariant::none ? "" : "/" + std::string(to_string(v)));
    out << label << ": min slack " << fmt(r.best.min_slack) << " after " << r.best.trace.evaluations
        << " evaluations" << (r.violation ? " (violation)" : " (no violation)") << "\n";
    if (r.violation) out << "  witness: " << to_json(r.best.instance).dump() << "\n";
    verdicts.push_back({label + (r.violation ? " violated, min slack " + fmt(r.best.min_slack) : ""),
                        v == RatioVariant::as_stated, r.violation.has_value()});
  }
  Report report = to_report(results, to_json(config));
  write_report(config, report, out);
  return exit_status(verdicts, config.expect_violation, out);
}

int run_check(const CliConfig& config, std::ostream& out) {
  auto [a, b] = read_matrix_pair(*config.matrices);
  const SpdPair pair = make_pair(std::move(a), std::move(b));
  const double lambda = config.lambda.value_or(0.5);
  const Tolerance tol{config.tolerance};

  std::vector<OperatorBoundReport> reports;
  reports.push_back(check_operator_young(pair, lambda, tol));
  reports.push_back(check_tominaga_ratio(pair, lambda, tol));
  reports.push_back(check_tominaga_diff(pair, lambda, tol));
  if (pair.ordered) {
    for (RatioVariant v : ratio_variants(config.variant)) reports.push_back(check_new_ratio(pair, lambda, v, tol));
    reports.push_back(check_new_diff(pair, lambda, tol));
  }

  out << "n = " << pair.a.n() << ", m = " << fmt(pair.m) << ", M = " << fmt(pair.M) << ", h = " << fmt(pair.h)
      << ", ordered = " << (pair.ordered ? "yes" : "no") << ", lambda = " << lambda << "\n";
  if (!pair.ordered) out << "new_ratio_op, new_diff_op skipped: pair does not satisfy m I <= A <= B <= M I <= I\n";

  Report report;
  report.kind = "check";
  report.header["config"] = to_json(config);
  report.header["pair"] = {{"A", matrix_to_json(pair.a)}, {"B", matrix_to_json(pair.b)}, {"m", pair.m},
                           {"M", pair.M},  {"h", pair.h},  {"ordered", pair.ordered}, {"lambda", lambda}};
  report.columns = {"inequality", "variant", "holds", "min_slack", "tolerance", "constant"};

  std::vector<Verdict> verdicts;
  for (const OperatorBoundReport& r : reports) {
    const double constant = r.constants.exponent_factor.value_or(r.constants.additive_factor.value_or(0.0));
    out << std::left << std::setw(20) << to_string(r.inequality_id) << std::setw(11) << to_string(r.variant)
        << std::setw(7) << (r.holds ? "pass" : "FAIL") << "min slack eigenvalue " << fmt(r.min_slack_eigenvalue)
        << "\n";
    report.rows.push_back({std::string(to_string(r.inequality_id)), std::string(to_string(r.variant)), r.holds,
                           number_cell(r.min_slack_eigenvalue), number_cell(r.tolerance), number_cell(constant)});
    std::string label = std::string(to_string(r.inequality_id));
    if (r.variant != RatioVariant::none) label += "/" + std::string(to_string(r.variant));
    verdicts.push_back({label + (r.holds ? "" : " min slack eigenvalue " + fmt(r.min_slack_eigenvalue)),
                        r.inequality_id == OperatorInequality::new_ratio_op && r.variant == RatioVariant::as_stated,
                        !r.holds});
  }
  write_report(config, report, out);
  if (config.expect_violation && !pair.ordered) {
    out << "expected violation NOT witnessed: pair is not ordered, as_stated probe not run\n";
    return kExitViolation;
  }
  return exit_status(verdicts, config.expect_violation, out);
}

}  // namespace

std::string usage() {
  std::ostringstream u;
  u << "usage: revyoung <command> [flags]\n\ncommands:\n";
  for (const CommandSpec& s : command_specs()) {
    u << "  " << std::left << std::setw(15) << s.name << s.description << "\n";
    u << "  " << std::setw(15) << "" << "flags:";
    for (const std::string& f : s.flags) u << " --" << f;
    u << "\n";
  }
  u << "\nflags:\n"
       "  --seed N             64-bit seed (default 0)\n"
       "  --samples N          sample count; matrix-verify draws N ordered and N box pairs (default 1000)\n"
       "  --dim N              matrix order, 1..64 (default 4)\n"
       "  --lambda X           fixed weight in [0, 1] (default: sampled; check uses 0.5)\n"
       "  --grid-step X        dominance grid step in (0, 1] (default 0.05)\n"
       "  --comparison C       ratio | diff | both (default both)\n"
       "  --variant V          as_stated | as_proved | both (default both)\n"
       "  --h-target X         condition ratio of sampled ordered pairs / falsify search range (default 10)\n"
       "  --tolerance X        relative tolerance (default 1e-10)\n"
       "  --target T           falsify target (default new-ratio-op): young, tominaga-ratio, tominaga-diff,\n"
       "                       new-ratio, new-diff, convexity-gap, young-op, tominaga-ratio-op,\n"
       "                       tominaga-diff-op, new-ratio-op, new-diff-op\n"
       "  --budget N           falsify evaluation budget (default 10000)\n"
       "  --scope S            falsify scope: scalar | matrix (default scalar)\n"
       "  --matrices PATH      JSON {\"A\": {\"n\": .., \"rows\": ..}, \"B\": {...}} for check\n"
       "  --expect-violation   succeed only if the as_stated ratio probe is violated\n"
       "  --format F           csv | json (default csv)\n"
       "  --out PATH           write the report to PATH\n"
       "  --threads N          worker threads; results do not depend on it (default 1)\n"
       "\nexit status: 0 pass, 1 violation found, 2 usage error, 3 numerical failure\n";
  return u.str();
}

CliConfig parse(std::span<const std::string> args) {
  for (const std::string& a : args)
    if (a == "-h" || a == "--help") throw HelpRequested{};

  CliConfig c;
  CLI::App app{"revyoung"};
  app.set_help_flag();
  app.require_subcommand(1, 1);
  std::map<std::string, CLI::App*> subcommands;
  for (const CommandSpec& s : command_specs()) {
    CLI::App* sub = app.add_subcommand(s.name, s.description);
    sub->set_help_flag();
    sub->fallthrough();
    subcommands[s.name] = sub;
  }

  std::string variant = "both";
  std::string format = "csv";
  std::string comparison = "both";
  std::optional<double> lambda;
  std::string out_path;
  std::string matrices_path;

  std::map<std::string, CLI::Option*> options;
  options["seed"] = app.add_option("--seed", c.seed);
  options["samples"] = app.add_option("--samples", c.samples)->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
  options["dim"] = app.add_option("--dim", c.dim)->check(CLI::Range(std::size_t{1}, kMaxDim));
  options["lambda"] = app.add_option("--lambda", lambda)->check(CLI::Range(0.0, 1.0));
  options["grid-step"] = app.add_option("--grid-step", c.grid_step)
                             ->check(CLI::Validator(
                                 [](std::string& s) -> std::string {
                                   const double v = std::stod(s);
                                   return v > 0.0 && v <= 1.0 ? "" : "grid step must lie in (0, 1]";
                                 },
                                 "(0,1]"));
  options["comparison"] = app.add_option("--comparison", comparison)->check(CLI::IsMember({"ratio", "diff", "both"}));
  options["variant"] =
      app.add_option("--variant", variant)->check(CLI::IsMember({"as_stated", "as_proved", "both"}));
  options["h-target"] = app.add_option("--h-target", c.h_target)->check(CLI::Range(1.0, 1e12));
  options["tolerance"] = app.add_option("--tolerance", c.tolerance)->check(CLI::Range(0.0, 1.0));
  options["target"] = app.add_option("--target", c.target);
  options["budget"] = app.add_option("--budget", c.budget)->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
  options["scope"] = app.add_option("--scope", c.scope)->check(CLI::IsMember({"scalar", "matrix"}));
  options["matrices"] = app.add_option("--matrices", matrices_path);
  options["expect-violation"] = app.add_flag("--expect-violation", c.expect_violation);
  options["format"] = app.add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  options["out"] = app.add_option("--out", out_path);
  options["threads"] = app.add_option("--threads", c.threads)->check(CLI::Range(1u, 1024u));

  std::vector<const char*> argv{"revyoung"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (args.empty()) throw UsageError("no command given");
    throw UsageError(e.what());
  }

  const CommandSpec* chosen = nullptr;
  for (const CommandSpec& s : command_specs())
    if (subcommands[s.name]->parsed()) chosen = &s;
  if (!chosen) throw UsageError("no command given");
  c.command = chosen->command;

  const std::set<std::string> allowed(chosen->flags.begin(), chosen->flags.end());
  for (const auto& [name, opt] : options) {
    if (opt->count() > 0 && !allowed.contains(name)) {
      throw UsageError("flag --" + name + " does not apply to command " + chosen->name);
    }
  }

  c.lambda = lambda;
  if (variant == "as_stated") c.variant = VariantChoice::as_stated;
  else if (variant == "as_proved") c.variant = VariantChoice::as_proved;
  else c.variant = VariantChoice::both;
  c.format = format == "json" ? ReportFormat::json : ReportFormat::csv;
  if (comparison == "ratio") c.comparison = ComparisonChoice::ratio;
  else if (comparison == "diff") c.comparison = ComparisonChoice::diff;
  else c.comparison = ComparisonChoice::both;
  if (!out_path.empty()) c.out = out_path;
  if (!matrices_path.empty()) c.matrices = matrices_path;

  if (c.command == Command::check && !c.matrices) throw UsageError("--matrices is required for check");

  if (c.command == Command::falsify) {
    const auto target = parse_target(c.target);
    if (!target) throw UsageError("--target: unknown inequality '" + c.target + "'");
    if (options["variant"]->count() > 0 && *target != Target::new_ratio_op) {
      throw UsageError("--variant applies only to --target new-ratio-op");
    }
    if (c.scope == "matrix" && !is_operator(*target)) {
      throw UsageError("--scope matrix needs an operator target (*-op), got " + c.target);
    }
    if (c.expect_violation && (*target != Target::new_ratio_op || !includes_as_stated(c.variant))) {
      throw UsageError("--expect-violation needs --target new-ratio-op with an as_stated variant");
    }
  }
  if ((c.command == Command::matrix_verify || c.command == Command::check) && c.expect_violation &&
      !includes_as_stated(c.variant)) {
    throw UsageError("--expect-violation needs --variant as_stated or both");
  }
  return c;
}

nlohmann::ordered_json to_json(const CliConfig& c) {
  const CommandSpec& spec = spec_for(c.command);
  nlohmann::ordered_json j;
  j["command"] = spec.name;
  for (const std::string& flag : spec.flags) {
    if (flag == "seed") j[flag] = c.seed;
    else if (flag == "samples") j[flag] = c.samples;
    else if (flag == "dim") j[flag] = c.dim;
    else if (flag == "lambda") {
      if (c.command == Command::check) j[flag] = c.lambda.value_or(0.5);
      else j[flag] = c.lambda ? nlohmann::ordered_json(*c.lambda) : nlohmann::ordered_json();
    }
    else if (flag == "grid-step") j[flag] = c.grid_step;
    else if (flag == "comparison") j[flag] = comparison_name(c.comparison);
    else if (flag == "variant") {
      // Only new-ratio-op has variants among falsify targets.
      if (c.command == Command::falsify && c.target != "new-ratio-op") j[flag] = nullptr;
      else j[flag] = variant_name(c.variant);
    }
    else if (flag == "h-target") j[flag] = c.h_target;
    else if (flag == "tolerance") j[flag] = c.tolerance;
    else if (flag == "target") j[flag] = c.target;
    else if (flag == "budget") j[flag] = c.budget;
    else if (flag == "scope") j[flag] = c.scope;
    else if (flag == "matrices") j[flag] = c.matrices ? c.matrices->string() : std::string();
    else if (flag == "expect-violation") j[flag] = c.expect_violation;
    else if (flag == "format") j[flag] = c.format == ReportFormat::json ? "json" : "csv";
  }
  return j;
}

std::vector<std::string> to_args(const nlohmann::json& embedded) {
  std::vector<std::string> args{embedded.at("command").get<std::string>()};
  for (const auto& [key, value] : embedded.items()) {
    if (key == "command" || value.is_null()) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back("--" + key);
      continue;
    }
    args.push_back("--" + key);
    args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
  }
  return args;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CliConfig config;
  try {
    config = parse(args);
  } catch (const HelpRequested&) {
    out << usage();
    return kExitPass;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << usage();
    return kExitUsage;
  }

  try {
    switch (config.command) {
      case Command::repro_remark: return run_repro(config, out);
      case Command::scalar_verify: return run_scalar_verify(config, out);
      case Command::matrix_verify: return run_matrix_verify(config, out);
      case Command::dominance: return run_dominance(config, out);
      case Command::falsify: return run_falsify(config, out);
      case Command::check: return run_check(config, out);
    }
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}

}  // namespace revyoung::cli
