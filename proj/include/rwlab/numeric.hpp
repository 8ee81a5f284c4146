// numeric.hpp - small numeric helpers and the tolerance ladder.
#pragma once

#include <cstddef>

namespace rwlab {

namespace tol {
inline constexpr double construction = 1e-12;  // row sums, weights
inline constexpr double solve = 1e-8;          // relative, solver outputs
inline constexpr double cross_oracle = 1e-4;   // independent-route agreement
}  // namespace tol

/// h(n) = 1 + 1/2 + ... + 1/n, h(0) = 0.
inline double harmonic_number(std::size_t n) {
  double s = 0.0;
  for (std::size_t i = n; i >= 1; --i) s += 1.0 / static_cast<double>(i);
  return s;
}

}  // namespace rwlab
