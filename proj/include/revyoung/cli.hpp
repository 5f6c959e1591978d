#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "revyoung/report.hpp"

namespace revyoung::cli {

enum class Command { repro_remark, scalar_verify, matrix_verify, dominance, falsify, check };
enum class VariantChoice { as_stated, as_proved, both };
enum class ComparisonChoice { ratio, diff, both };

/// Exit statuses of run().
enum ExitStatus : int {
  kExitPass = 0,
  kExitViolation = 1,
  kExitUsage = 2,
  kExitNumerical = 3,
};

struct CliConfig {
  Command command = Command::repro_remark;
  std::uint64_t seed = 0;
  std::size_t samples = 1000;
  std::size_t dim = 4;
  std::optional<double> lambda;
  double grid_step = 0.05;
  VariantChoice variant = VariantChoice::both;
  double tolerance = 1e-10;
  std::optional<std::filesystem::path> out;
  ReportFormat format = ReportFormat::csv;
  std::optional<std::filesystem::path> matrices;
  unsigned threads = 1;
  bool expect_violation = false;
  std::size_t budget = 10000;
  std::string target = "new-ratio-op";
  std::string scope = "scalar";
  double h_target = 10.0;
  ComparisonChoice comparison = ComparisonChoice::both;
};

/// Bad flags or flag combinations; what() is the message shown above the usage.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses arguments (without the program name).  Throws UsageError for unknown
/// flags, out-of-range values and flags that do not apply to the command.
[[nodiscard]] CliConfig parse(std::span<const std::string> args);

/// Config embedded in reports: the command plus every flag that applies to it,
/// with effective values.  --out and --threads are left out because they do not
/// affect report content.
[[nodiscard]] nlohmann::ordered_json to_json(const CliConfig& config);
/// Arguments that reproduce an embedded config.
[[nodiscard]] std::vector<std::string> to_args(const nlohmann::json& embedded_config);

[[nodiscard]] std::string usage();

/// Parses and executes; returns an ExitStatus.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace revyoung::cli
