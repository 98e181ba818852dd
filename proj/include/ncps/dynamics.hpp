#pragma once

// Classical particular trajectories and Lewis-Riesenfeld phases for the
// one-dimensional quadratic Hamiltonian
//
//   H = beta1 P^2 + beta2 Q^2 + beta3(t) P + beta4(t) Q
//
// with constant beta1, beta2 > 0. The rotated planar axes use
// beta1 = 1/2M, beta2 = M w1^2 / 2, beta3 = Omega_i, beta4 = xi_i; axis 3 in
// 3D uses beta1 = 1/2m, beta2 = m w0^2 / 2, beta3 = 0, beta4 = F.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <memory>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ncps/errors.hpp"
#include "ncps/rk4.hpp"

namespace ncps {

// A scalar function of time together with its derivative.
struct TimeSignal {
  std::function<double(double)> value;
  std::function<double(double)> rate;

  static TimeSignal zero() {
    return {[](double) { return 0.0; }, [](double) { return 0.0; }};
  }
};

struct QuadraticHamiltonianCoeffs {
  double beta1 = 0.5;
  double beta2 = 0.5;
  TimeSignal beta3 = TimeSignal::zero();
  TimeSignal beta4 = TimeSignal::zero();

  // Angular frequency 2 sqrt(beta1 beta2) of the unforced oscillator.
  double frequency() const { return 2.0 * std::sqrt(beta1 * beta2); }
};

inline void validate(const QuadraticHamiltonianCoeffs& c) {
  if (!(c.beta1 > 0.0) || !(c.beta2 > 0.0) || !std::isfinite(c.beta1) || !std::isfinite(c.beta2))
    throw ArgumentError("beta1 and beta2 must be finite and > 0");
  if (!c.beta3.value || !c.beta3.rate || !c.beta4.value || !c.beta4.rate)
    throw ArgumentError("beta3 and beta4 need both value and rate functions");
}

// rho = (beta1 / (4 beta2))^(1/4), the constant solution of the auxiliary
// equation 4 beta1 beta2 rho = beta1^2 / rho^3.
inline double rho_constant(const QuadraticHamiltonianCoeffs& c) {
  if (!(c.beta1 > 0.0) || !(c.beta2 > 0.0)) throw ArgumentError("rho_constant: beta1, beta2 must be > 0");
  return std::pow(c.beta1 / (4.0 * c.beta2), 0.25);
}

struct TrajectoryPoint {
  double Q = 0, Qdot = 0, P = 0, Pdot = 0;
};

// Initial data of the particular solution; the choice is a gauge.
struct InitialConditions {
  double Q0 = 0.0;
  double P0 = 0.0;
};

struct TimeWindow {
  double t0 = 0.0;
  double t1 = 1.0;
};

class ClassicalTrajectory {
 public:
  ClassicalTrajectory(QuadraticHamiltonianCoeffs coeffs, std::vector<double> t, std::vector<double> q,
                      std::vector<double> p, std::string label)
      : coeffs_(std::move(coeffs)), t_(std::move(t)), q_(std::move(q)), p_(std::move(p)),
        label_(std::move(label)) {
    qdot_.resize(t_.size());
    pdot_.resize(t_.size());
    for (std::size_t i = 0; i < t_.size(); ++i) {
      qdot_[i] = 2.0 * coeffs_.beta1 * p_[i] + coeffs_.beta3.value(t_[i]);
      pdot_[i] = -2.0 * coeffs_.beta2 * q_[i] - coeffs_.beta4.value(t_[i]);
    }
    build_action();
  }

  const std::vector<double>& t_grid() const { return t_; }
  const std::vector<double>& Q() const { return q_; }
  const std::vector<double>& Qdot() const { return qdot_; }
  const std::vector<double>& P() const { return p_; }
  const std::vector<double>& Pdot() const { return pdot_; }
  const std::string& label() const { return label_; }
  const QuadraticHamiltonianCoeffs& coeffs() const { return coeffs_; }
  double t_begin() const { return t_.front(); }
  double t_end() const { return t_.back(); }
  double step() const { return t_[1] - t_[0]; }

  // Cubic Hermite interpolation of Q and P (both carry exact derivatives);
  // derivatives at t follow from Hamilton's equations.
  TrajectoryPoint at(double t) const {
    const auto [i, s] = locate(t);
    const double h = t_[i + 1] - t_[i];
    TrajectoryPoint out;
    out.Q = hermite_cubic(q_[i], qdot_[i], q_[i + 1], qdot_[i + 1], h, s);
    out.P = hermite_cubic(p_[i], pdot_[i], p_[i + 1], pdot_[i + 1], h, s);
    out.Qdot = 2.0 * coeffs_.beta1 * out.P + coeffs_.beta3.value(t);
    out.Pdot = -2.0 * coeffs_.beta2 * out.Q - coeffs_.beta4.value(t);
    return out;
  }

  // Integrand of the phase: Qdot^2/(4 beta1) - beta2 Q^2 - beta3^2/(4 beta1).
  double action_density(double t) const {
    const TrajectoryPoint pt = at(t);
    return action_density(t, pt.Q, pt.Qdot);
  }

  // Integral of action_density from 0 to t (0 must lie inside the window).
  double action_integral(double t) const { return cumulative(t) - cumulative(0.0); }

  void write_csv(std::ostream& os) const {
    os << "t,Q,Qdot,P,Pdot\n";
    os.precision(17);
    for (std::size_t i = 0; i < t_.size(); ++i)
      os << t_[i] << ',' << q_[i] << ',' << qdot_[i] << ',' << p_[i] << ',' << pdot_[i] << '\n';
  }

 private:
  static double hermite_cubic(double y0, double d0, double y1, double d1, double h, double s) {
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
    return h00 * y0 + h10 * h * d0 + h01 * y1 + h11 * h * d1;
  }

  double action_density(double t, double q, double qdot) const {
    const double b3 = coeffs_.beta3.value(t);
    return (qdot * qdot - b3 * b3) / (4.0 * coeffs_.beta1) - coeffs_.beta2 * q * q;
  }

  std::pair<std::size_t, double> locate(double t) const {
    const double tol = 1e-12 * (1.0 + std::abs(t_.back()) + std::abs(t_.front()));
    if (t < t_.front() - tol || t > t_.back() + tol)
      throw RangeError("trajectory '" + label_ + "' evaluated at t=" + std::to_string(t) + " outside [" +
                       std::to_string(t_.front()) + ", " + std::to_string(t_.back()) + "]");
    const double h = t_[1] - t_[0];
    auto i = static_cast<std::ptrdiff_t>(std::floor((t - t_.front()) / h));
    i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(t_.size()) - 2);
    const auto k = static_cast<std::size_t>(i);
    return {k, (t - t_[k]) / (t_[k + 1] - t_[k])};
  }

  // Composite Simpson over interval pairs; cum_[j] = integral from t_0 to t_{2j}.
  void build_action() {
    const std::size_t pairs = (t_.size() - 1) / 2;
    cum_.assign(pairs + 1, 0.0);
    for (std::size_t j = 0; j < pairs; ++j) {
      const std::size_t a = 2 * j;
      const double h = t_[a + 1] - t_[a];
      const double f0 = action_density(t_[a], q_[a], qdot_[a]);
      const double f1 = action_density(t_[a + 1], q_[a + 1], qdot_[a + 1]);
      const double f2 = action_density(t_[a + 2], q_[a + 2], qdot_[a + 2]);
      cum_[j + 1] = cum_[j] + h / 3.0 * (f0 + 4.0 * f1 + f2);
    }
  }

  // Integral from t_0 to t: Simpson up to the last even node <= t, then
  // 5-point Gauss-Legendre on the Hermite interpolant for the remainder.
  double cumulative(double t) const {
    locate(t);  // range check
    const double h = t_[1] - t_[0];
    auto j = static_cast<std::size_t>(std::max(0.0, std::floor((t - t_.front()) / (2.0 * h))));
    j = std::min(j, cum_.size() - 1);
    const double a = t_[2 * j];
    double sum = cum_[j];
    const double len = t - a;
    if (len != 0.0) {
      static constexpr std::array<double, 5> x = {0.0, -0.5384693101056831, 0.5384693101056831,
                                                  -0.9061798459386640, 0.9061798459386640};
      static constexpr std::array<double, 5> w = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                                  0.2369268850561891, 0.2369268850561891};
      double part = 0.0;
      for (std::size_t k = 0; k < 5; ++k) part += w[k] * action_density(a + 0.5 * len * (x[k] + 1.0));
      sum += 0.5 * len * part;
    }
    return sum;
  }

  QuadraticHamiltonianCoeffs coeffs_;
  std::vector<double> t_, q_, qdot_, p_, pdot_;
  std::vector<double> cum_;
  std::string label_;
};

// Integrates Hamilton's equations
//   dQ/dt = 2 beta1 P + beta3(t),   dP/dt = -2 beta2 Q - beta4(t)
// with fixed-step RK4. Q then satisfies
//   Q'' + 4 beta1 beta2 Q = -2 beta1 beta4 + beta3'
// and P satisfies
//   P'' + 4 beta1 beta2 P = -2 beta2 beta3 - beta4'.
// The step is shrunk so that an integer number of steps spans the window.
inline ClassicalTrajectory solve_particular(const QuadraticHamiltonianCoeffs& coeffs, TimeWindow window,
                                            double step, InitialConditions ic = {},
                                            std::string label = "axis") {
  validate(coeffs);
  if (!(step > 0.0) || !std::isfinite(step)) throw ArgumentError("solve_particular: step must be > 0");
  if (!(window.t1 > window.t0)) throw ArgumentError("solve_particular: empty time window");
  auto n = static_cast<std::size_t>(std::ceil((window.t1 - window.t0) / step - 1e-9));
  n = std::max<std::size_t>(n, 2);
  if (n % 2) ++n;  // even interval count for Simpson
  const double h = (window.t1 - window.t0) / static_cast<double>(n);

  const double b1 = coeffs.beta1, b2 = coeffs.beta2;
  const auto& b3 = coeffs.beta3.value;
  const auto& b4 = coeffs.beta4.value;
  auto rhs = [&](double t, const std::array<double, 2>& y) -> std::array<double, 2> {
    return {2.0 * b1 * y[1] + b3(t), -2.0 * b2 * y[0] - b4(t)};
  };

  std::vector<double> t(n + 1), q(n + 1), p(n + 1);
  std::array<double, 2> y = {ic.Q0, ic.P0};
  for (std::size_t i = 0; i <= n; ++i) {
    t[i] = window.t0 + h * static_cast<double>(i);
    q[i] = y[0];
    p[i] = y[1];
    if (i < n) y = rk4_step(rhs, t[i], y, h);
  }
  return ClassicalTrajectory(coeffs, std::move(t), std::move(q), std::move(p), std::move(label));
}

struct PhaseValue {
  double Y = 0.0;
  double t = 0.0;
};

// Lewis-Riesenfeld phase of a product state:
//   Y = -sum_i (n_i + 1/2) w_i t - (1/hbar) sum_i int_0^t [Qdot^2/(4 b1) - b2 Q^2 - b3^2/(4 b1)]
// where w_i = 2 sqrt(b1 b2) per axis. For the planar axes this is
// -(n1 + n2 + 1) w1 t - (M/2hbar) int [Qdot^2 - w1^2 Q^2 - Omega^2].
inline PhaseValue phase_Y(std::span<const int> quantum_numbers,
                          std::span<const ClassicalTrajectory* const> trajectories, double hbar, double t) {
  if (quantum_numbers.size() != trajectories.size())
    throw DimensionError("phase_Y: one quantum number per trajectory required");
  double y = 0.0;
  for (std::size_t i = 0; i < trajectories.size(); ++i) {
    if (quantum_numbers[i] < 0) throw ArgumentError("phase_Y: quantum numbers must be >= 0");
    const ClassicalTrajectory& tr = *trajectories[i];
    y -= (quantum_numbers[i] + 0.5) * tr.coeffs().frequency() * t;
    y -= tr.action_integral(t) / hbar;
  }
  return {y, t};
}

}  // namespace ncps
