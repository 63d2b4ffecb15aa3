#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace loopbu {

// Cell of the uniform grid t_i = i/m that contains t. Parameters within
// 1e-9 grid units of a node snap onto it (frac == 0), so formula
// arguments such as 2(t - 1/4) that are nodes up to rounding stay exact.
struct GridPosition {
  std::size_t index = 0;
  double frac = 0.0;
};

inline GridPosition locate(double t, int m) {
  const double x = std::clamp(t, 0.0, 1.0) * m;
  const double nearest = std::round(x);
  if (std::abs(x - nearest) <= 1e-9) {
    return {static_cast<std::size_t>(nearest), 0.0};
  }
  const double cell = std::floor(x);
  return {static_cast<std::size_t>(cell), x - cell};
}

}  // namespace loopbu
