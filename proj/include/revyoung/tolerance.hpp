#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>

namespace revyoung {

/// Absolute-plus-relative comparison tolerance.  A quantity that should be
/// nonnegative is accepted when it is >= -rel * max(1, |x_1|, ..., |x_k|).
struct Tolerance {
  double rel = 1e-10;

  [[nodiscard]] double absolute(std::initializer_list<double> magnitudes) const {
    double scale = 1.0;
    for (double m : magnitudes) scale = std::max(scale, std::abs(m));
    return rel * scale;
  }
};

}  // namespace revyoung
