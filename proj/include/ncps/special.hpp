#pragma once

#include <cmath>

#include "ncps/errors.hpp"

namespace ncps {

// Largest Hermite degree accepted by states by default.
inline constexpr int kHermiteCap = 30;

// Physicists' Hermite polynomial H_n(x) by upward recurrence
// H_{k+1} = 2x H_k - 2k H_{k-1}.
inline double hermite(int n, double x) {
  if (n < 0) throw ArgumentError("hermite: degree must be >= 0");
  double h0 = 1.0;
  if (n == 0) return h0;
  double h1 = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double h2 = 2.0 * x * h1 - 2.0 * k * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

// 1 / sqrt(2^n n!)
inline double hermite_norm(int n) {
  if (n < 0) throw ArgumentError("hermite_norm: degree must be >= 0");
  return std::exp(-0.5 * (n * std::log(2.0) + std::lgamma(n + 1.0)));
}

}  // namespace ncps
