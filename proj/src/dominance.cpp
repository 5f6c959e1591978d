#include <cmath>
#include <sstream>

#include "revyoung/errors.hpp"
#include "revyoung/harness.hpp"
#include "revyoung/scalar_ineq.hpp"

namespace revyoung {

std::string_view to_string(Comparison c) { return c == Comparison::ratio ? "ratio" : "diff"; }

bool DominanceMap::has_cell_below(double threshold) const {
  for (const auto& row : deltas)
    for (double d : row)
      if (d < threshold) return true;
  return false;
}

bool DominanceMap::has_cell_above(double threshold) const {
  for (const auto& row : deltas)
    for (double d : row)
      if (d > threshold) return true;
  return false;
}

std::vector<double> unit_grid(double step, bool include_zero) {
  if (!(step > 0.0 && step <= 1.0)) {
    throw PreconditionError("grid step must lie in (0, 1], got " + std::to_string(step));
  }
  constexpr double kSnap = 1e-9;
  // Steps dividing 1 use k / K so that e.g. 0.15 is the nearest double to 3/20.
  const double divisions = std::round(1.0 / step);
  const bool divides = std::abs(divisions * step - 1.0) <= kSnap;
  std::vector<double> grid;
  for (long k = include_zero ? 0 : 1;; ++k) {
    double x = divides ? static_cast<double>(k) / divisions : static_cast<double>(k) * step;
    if (x > 1.0 + kSnap) break;
    if (std::abs(x - 1.0) <= kSnap) x = 1.0;
    grid.push_back(x);
  }
  return grid;
}

DominanceMap dominance_map(Comparison id, const std::vector<double>& t_grid,
                           const std::vector<double>& lambda_grid) {
  if (t_grid.empty() || lambda_grid.empty()) throw PreconditionError("dominance grids must be non-empty");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!(t_grid[i] > 0.0 && t_grid[i] <= 1.0)) throw PreconditionError("t grid values must lie in (0, 1]");
    if (i && !(t_grid[i] > t_grid[i - 1])) throw PreconditionError("t grid must be strictly ascending");
  }
  for (std::size_t j = 0; j < lambda_grid.size(); ++j) {
    if (!(lambda_grid[j] >= 0.0 && lambda_grid[j] <= 1.0)) {
      throw PreconditionError("lambda grid values must lie in [0, 1]");
    }
    if (j && !(lambda_grid[j] > lambda_grid[j - 1])) {
      throw PreconditionError("lambda grid must be strictly ascending");
    }
  }

  DominanceMap map{id, t_grid, lambda_grid, {}};
  map.deltas.assign(t_grid.size(), std::vector<double>(lambda_grid.size()));
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    for (std::size_t j = 0; j < lambda_grid.size(); ++j) {
      map.deltas[i][j] = id == Comparison::ratio ? compare_ratio_bounds(t_grid[i], lambda_grid[j])
                                                 : compare_diff_bounds(t_grid[i], lambda_grid[j]);
    }
  }
  return map;
}

Report to_report(const std::vector<DominanceMap>& maps, const nlohmann::ordered_json& config) {
  Report r;
  r.kind = "dominance";
  r.header["config"] = config;
  r.columns = {"comparison", "t"};
  if (!maps.empty()) {
    for (double l : maps.front().lambda_grid) {
      std::ostringstream name;
      name << "lambda=" << nlohmann::json(l).dump();
      r.columns.push_back(name.str());
    }
  }
  for (const DominanceMap& map : maps) {
    for (std::size_t i = 0; i < map.t_grid.size(); ++i) {
      std::vector<nlohmann::ordered_json> row{std::string(to_string(map.comparison_id)), map.t_grid[i]};
      for (double d : map.deltas[i]) row.push_back(number_cell(d));
      r.rows.push_back(std::move(row));
    }
  }
  return r;
}

}  // namespace revyoung
