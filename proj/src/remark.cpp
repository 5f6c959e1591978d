#include <cmath>

#include "revyoung/harness.hpp"
#include "revyoung/scalar_ineq.hpp"

namespace revyoung {

std::vector<RemarkRow> remark_repro() {
  struct Spot {
    double t;
    double lambda;
    Comparison which;
    double printed;
  };
  static constexpr Spot kSpots[] = {
      {0.5, 1.0 / 20.0, Comparison::ratio, -0.0128295},
      {0.5, 1.0 / 10.0, Comparison::ratio, 0.0326986},
      {0.5, 1.0 / 5.0, Comparison::diff, -0.0338368},
      {0.5, 1.0 / 20.0, Comparison::diff, 0.0202141},
  };

  std::vector<RemarkRow> rows;
  for (const Spot& s : kSpots) {
    const double computed = s.which == Comparison::ratio ? compare_ratio_bounds(s.t, s.lambda)
                                                         : compare_diff_bounds(s.t, s.lambda);
    rows.push_back({s.t, s.lambda, std::string(to_string(s.which)), computed, s.printed,
                    std::abs(computed - s.printed)});
  }
  return rows;
}

Report to_report(const std::vector<RemarkRow>& rows) {
  Report r;
  r.kind = "remark_repro";
  r.header["tolerance"] = kRemarkTolerance;
  r.columns = {"t", "lambda", "quantity", "computed", "paper", "abs_error"};
  for (const RemarkRow& row : rows) {
    r.rows.push_back({row.t, row.lambda, row.quantity, number_cell(row.computed), row.paper,
                      number_cell(row.abs_error)});
  }
  return r;
}

}  // namespace revyoung
