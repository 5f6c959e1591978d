#include "revyoung/targets.hpp"

#include <array>
#include <utility>

#include "revyoung/errors.hpp"
#include "revyoung/matrix_io.hpp"

namespace revyoung {
namespace {

constexpr std::array<std::pair<Target, std::string_view>, 11> kNames{{
    {Target::young, "young"},
    {Target::tominaga_ratio, "tominaga-ratio"},
    {Target::tominaga_diff, "tominaga-diff"},
    {Target::new_ratio, "new-ratio"},
    {Target::new_diff, "new-diff"},
    {Target::convexity_gap, "convexity-gap"},
    {Target::young_op, "young-op"},
    {Target::tominaga_ratio_op, "tominaga-ratio-op"},
    {Target::tominaga_diff_op, "tominaga-diff-op"},
    {Target::new_ratio_op, "new-ratio-op"},
    {Target::new_diff_op, "new-diff-op"},
}};

}  // namespace

std::string_view cli_name(Target t) {
  for (const auto& [target, name] : kNames)
    if (target == t) return name;
  return "unknown";
}

std::optional<Target> parse_target(std::string_view name) {
  for (const auto& [target, n] : kNames)
    if (n == name) return target;
  return std::nullopt;
}

bool is_operator(Target t) {
  switch (t) {
    case Target::young_op:
    case Target::tominaga_ratio_op:
    case Target::tominaga_diff_op:
    case Target::new_ratio_op:
    case Target::new_diff_op:
      return true;
    default:
      return false;
  }
}

OperatorInequality operator_id(Target t) {
  switch (t) {
    case Target::young_op: return OperatorInequality::young_op;
    case Target::tominaga_ratio_op: return OperatorInequality::tominaga_ratio_op;
    case Target::tominaga_diff_op: return OperatorInequality::tominaga_diff_op;
    case Target::new_ratio_op: return OperatorInequality::new_ratio_op;
    case Target::new_diff_op: return OperatorInequality::new_diff_op;
    default: throw PreconditionError(std::string(cli_name(t)) + " is not an operator inequality");
  }
}

ScalarInequality scalar_id(Target t) {
  switch (t) {
    case Target::young: return ScalarInequality::young;
    case Target::tominaga_ratio: return ScalarInequality::tominaga_ratio;
    case Target::tominaga_diff: return ScalarInequality::tominaga_diff;
    case Target::new_ratio: return ScalarInequality::new_ratio;
    case Target::new_diff: return ScalarInequality::new_diff;
    case Target::convexity_gap: return ScalarInequality::convexity_gap;
    default: throw PreconditionError(std::string(cli_name(t)) + " is not a scalar inequality");
  }
}

CheckOutcome replay(Target target, RatioVariant variant, const ReplayCase& c, const Tolerance& tol) {
  if (is_operator(target)) {
    if (!c.pair) throw PreconditionError("operator replay needs a matrix pair");
    const OperatorBoundReport r = check_operator(operator_id(target), variant, *c.pair, c.lambda, tol);
    return {r.min_slack_eigenvalue, r.tolerance, r.holds};
  }
  ScalarBoundEval e{};
  switch (scalar_id(target)) {
    case ScalarInequality::young: e = young_bound({c.a, c.b, c.lambda}, tol); break;
    case ScalarInequality::tominaga_ratio: e = tominaga_ratio_bound({c.a, c.b, c.lambda}, tol); break;
    case ScalarInequality::tominaga_diff: e = tominaga_diff_bound({c.a, c.b, c.lambda}, tol); break;
    case ScalarInequality::new_ratio: e = new_ratio_bound({c.a, c.b, c.lambda}, tol); break;
    case ScalarInequality::new_diff: e = new_diff_bound({c.a, c.b, c.lambda}, tol); break;
    case ScalarInequality::convexity_gap: {
      const ConvexFunction f = c.function == "exp" ? ConvexFunction::exp() : ConvexFunction::neg_log();
      e = convexity_gap_bound(f, c.a, c.b, c.lambda, tol);
      break;
    }
  }
  return {e.slack, e.tolerance, e.holds};
}

nlohmann::ordered_json to_json(const ReplayCase& c) {
  nlohmann::ordered_json j;
  j["lambda"] = c.lambda;
  if (c.pair) {
    j["A"] = matrix_to_json(c.pair->a);
    j["B"] = matrix_to_json(c.pair->b);
    j["m"] = c.pair->m;
    j["M"] = c.pair->M;
    j["h"] = c.pair->h;
    j["ordered"] = c.pair->ordered;
  } else {
    j["a"] = c.a;
    j["b"] = c.b;
    if (!c.function.empty()) j["function"] = c.function;
  }
  return j;
}

ReplayCase replay_case_from_json(const nlohmann::json& doc) {
  ReplayCase c;
  c.lambda = doc.at("lambda").get<double>();
  if (doc.contains("A")) {
    c.pair = make_pair(matrix_from_json(doc.at("A")), matrix_from_json(doc.at("B")));
  } else {
    c.a = doc.at("a").get<double>();
    c.b = doc.at("b").get<double>();
    if (doc.contains("function")) c.function = doc.at("function").get<std::string>();
  }
  return c;
}

}  // namespace revyoung
