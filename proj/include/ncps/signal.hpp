#pragma once

// Scalar time signals used for the electric drive E_l(t).
//
// A signal is either an analytic preset (zero, constant, sinusoid, ramp) with
// an exact derivative, or a sampled table evaluated by linear interpolation.
// Table derivatives are second-order finite differences at the nodes
// (one-sided three-point formulas at both ends), interpolated linearly
// between nodes.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ncps/errors.hpp"

namespace ncps {

struct ZeroSignal {};

struct ConstantSignal {
  double value = 0.0;
};

// amplitude * sin(omega * t + phase)
struct SinusoidSignal {
  double amplitude = 0.0;
  double omega = 0.0;
  double phase = 0.0;
};

// offset + slope * t
struct RampSignal {
  double slope = 0.0;
  double offset = 0.0;
};

class TableSignal {
 public:
  TableSignal(std::vector<double> times, std::vector<double> values)
      : times_(std::move(times)), values_(std::move(values)) {
    if (times_.size() != values_.size())
      throw ArgumentError("drive table: times and values differ in length");
    if (times_.size() < 3)
      throw ArgumentError("drive table: need at least 3 samples");
    for (std::size_t i = 1; i < times_.size(); ++i) {
      if (!(times_[i] > times_[i - 1]))
        throw ArgumentError("drive table: time stamps must be strictly increasing");
    }
    rates_ = node_rates();
  }

  double value(double t) const {
    auto [i, w] = locate(t);
    return (1.0 - w) * values_[i] + w * values_[i + 1];
  }

  double rate(double t) const {
    auto [i, w] = locate(t);
    return (1.0 - w) * rates_[i] + w * rates_[i + 1];
  }

  double t_begin() const { return times_.front(); }
  double t_end() const { return times_.back(); }
  const std::vector<double>& times() const { return times_; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::pair<std::size_t, double> locate(double t) const {
    if (t < times_.front() || t > times_.back())
      throw RangeError("drive table evaluated outside [" + std::to_string(times_.front()) +
                       ", " + std::to_string(times_.back()) + "]");
    auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t i = it == times_.end() ? times_.size() - 2
                                       : static_cast<std::size_t>(it - times_.begin()) - 1;
    i = std::min(i, times_.size() - 2);
    const double w = (t - times_[i]) / (times_[i + 1] - times_[i]);
    return {i, w};
  }

  // Three-point Lagrange derivative on a possibly non-uniform stencil,
  // evaluated at stencil position `at` (0, 1 or 2).
  static double three_point(const double* x, const double* y, int at) {
    const double x0 = x[0], x1 = x[1], x2 = x[2], xa = x[at];
    const double l0 = ((xa - x1) + (xa - x2)) / ((x0 - x1) * (x0 - x2));
    const double l1 = ((xa - x0) + (xa - x2)) / ((x1 - x0) * (x1 - x2));
    const double l2 = ((xa - x0) + (xa - x1)) / ((x2 - x0) * (x2 - x1));
    return l0 * y[0] + l1 * y[1] + l2 * y[2];
  }

  std::vector<double> node_rates() const {
    const std::size_t n = times_.size();
    std::vector<double> r(n);
    r[0] = three_point(&times_[0], &values_[0], 0);
    for (std::size_t i = 1; i + 1 < n; ++i) r[i] = three_point(&times_[i - 1], &values_[i - 1], 1);
    r[n - 1] = three_point(&times_[n - 3], &values_[n - 3], 2);
    return r;
  }

  std::vector<double> times_;
  std::vector<double> values_;
  std::vector<double> rates_;
};

class DriveSignal {
 public:
  using Variant = std::variant<ZeroSignal, ConstantSignal, SinusoidSignal, RampSignal, TableSignal>;

  DriveSignal() = default;
  DriveSignal(Variant v) : v_(std::move(v)) {}  // NOLINT(google-explicit-constructor)

  static DriveSignal zero() { return {ZeroSignal{}}; }
  static DriveSignal constant(double e0) { return {ConstantSignal{e0}}; }
  static DriveSignal sinusoid(double amplitude, double omega, double phase = 0.0) {
    return {SinusoidSignal{amplitude, omega, phase}};
  }
  static DriveSignal ramp(double slope, double offset = 0.0) { return {RampSignal{slope, offset}}; }
  static DriveSignal table(std::vector<double> times, std::vector<double> values) {
    return {TableSignal(std::move(times), std::move(values))};
  }

  double value(double t) const {
    return std::visit(
        [t](const auto& s) -> double {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, ZeroSignal>) return 0.0;
          else if constexpr (std::is_same_v<S, ConstantSignal>) return s.value;
          else if constexpr (std::is_same_v<S, SinusoidSignal>)
            return s.amplitude * std::sin(s.omega * t + s.phase);
          else if constexpr (std::is_same_v<S, RampSignal>) return s.offset + s.slope * t;
          else return s.value(t);
        },
        v_);
  }

  double rate(double t) const {
    return std::visit(
        [t](const auto& s) -> double {
          using S = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<S, ZeroSignal> || std::is_same_v<S, ConstantSignal>) return 0.0;
          else if constexpr (std::is_same_v<S, SinusoidSignal>)
            return s.amplitude * s.omega * std::cos(s.omega * t + s.phase);
          else if constexpr (std::is_same_v<S, RampSignal>) return s.slope;
          else return s.rate(t);
        },
        v_);
  }

  bool is_zero() const { return std::holds_alternative<ZeroSignal>(v_); }
  const Variant& variant() const { return v_; }

 private:
  Variant v_ = ZeroSignal{};
};

}  // namespace ncps
