#pragma once

#include <array>
#include <cstddef>

namespace ncps {

// Classical fixed-step 4th-order Runge-Kutta for small fixed-size systems.
// `rhs(t, y)` returns dy/dt.
template <std::size_t N, typename Rhs>
std::array<double, N> rk4_step(Rhs&& rhs, double t, const std::array<double, N>& y, double h) {
  auto axpy = [](const std::array<double, N>& a, double s, const std::array<double, N>& b) {
    std::array<double, N> r;
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + s * b[i];
    return r;
  };
  const std::array<double, N> k1 = rhs(t, y);
  const std::array<double, N> k2 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k1));
  const std::array<double, N> k3 = rhs(t + 0.5 * h, axpy(y, 0.5 * h, k2));
  const std::array<double, N> k4 = rhs(t + h, axpy(y, h, k3));
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

}  // namespace ncps
