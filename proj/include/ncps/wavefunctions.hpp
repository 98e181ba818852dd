#pragma once

// Exact Lewis-Riesenfeld eigenstates of the driven oscillator on a
// noncommutative plane (2D) or space (3D), in the rotated frame and in the
// original (lab) commutative coordinates, plus their closed-form ground-state
// momentum representation and grid sampling.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "ncps/dynamics.hpp"
#include "ncps/errors.hpp"
#include "ncps/grid.hpp"
#include "ncps/nc_model.hpp"
#include "ncps/special.hpp"

namespace ncps {

// phi_n(Q) of a single decoupled mode (one axis of the rotated frame).
inline cplx mode_eigenfunction(int n, double rho_sq, double q_cl, double p_cl, double q, double hbar) {
  if (!(rho_sq > 0.0)) throw ArgumentError("mode_eigenfunction: rho_sq must be > 0");
  const double w = 2.0 * rho_sq * hbar;  // 2 rho^2 hbar
  const double d = q - q_cl;
  const double amp = std::pow(1.0 / (w * std::numbers::pi), 0.25) * hermite_norm(n) *
                     std::exp(-d * d / (2.0 * w)) * hermite(n, d / std::sqrt(w));
  return std::polar(amp, p_cl * q / hbar);
}

struct LabFrameShifts {
  double f = 0.0;      // momentum center, lab axis 1
  double g = 0.0;      // momentum center, lab axis 2
  double T = 0.0;      // position center, lab axis 1
  double sigma = 0.0;  // position center, lab axis 2
};

// Rotated-frame classical centers expressed in lab coordinates at angle phi.
inline LabFrameShifts lab_frame_shifts(double q1, double q2, double p1, double p2, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return {p1 * c + p2 * s, -p1 * s + p2 * c, q1 * c + q2 * s, -q1 * s + q2 * c};
}

struct SolveOptions {
  double t_max = 10.0;   // trajectories cover [min(t_min, 0), t_max]
  double t_min = 0.0;
  double step = 1e-3;    // RK4 step
  std::array<InitialConditions, 3> initial{};  // per rotated axis
  double perturb_phase_rate = 0.0;             // test hook: adds rate * t to Y
  int hermite_cap = kHermiteCap;
};

// Snapshot of an eigenstate at a fixed time. A plain value: everything needed
// to evaluate psi and Xi is stored inline.
struct QuantumState {
  std::vector<int> n;
  int dim = 2;
  double hbar = 1.0;
  double t = 0.0;
  double phi = 0.0;
  double Y = 0.0;
  std::array<double, 3> rho_sq{};  // per rotated axis
  std::array<double, 3> q_cl{};
  std::array<double, 3> p_cl{};
  LabFrameShifts shifts;

  bool is_ground() const {
    return std::all_of(n.begin(), n.end(), [](int k) { return k == 0; });
  }
  // Position and momentum centers per lab axis.
  std::array<double, 3> position_center() const { return {shifts.T, shifts.sigma, q_cl[2]}; }
  std::array<double, 3> momentum_center() const { return {shifts.f, shifts.g, p_cl[2]}; }
  double position_width(int axis) const { return std::sqrt(rho_sq[axis] * hbar); }
  double momentum_width(int axis) const { return std::sqrt(hbar / (4.0 * rho_sq[axis])); }
};

// Builds the per-axis classical trajectories once and hands out state
// snapshots at arbitrary times inside the window.
class ExactSolution {
 public:
  ExactSolution(const OscillatorConfig& cfg, const NCSpace& space, SolveOptions opts = {})
      : cfg_(cfg), space_(space), opts_(opts), params_(effective_params(cfg, space)),
        drive_(std::make_shared<DriveCoefficients>(cfg, space)) {
    if (!(opts_.t_max > std::min(opts_.t_min, 0.0)))
      throw ArgumentError("ExactSolution: t_max must exceed the window start");
    const TimeWindow window{std::min(opts_.t_min, 0.0), opts_.t_max};
    const double w2 = params_.omega2;
    for (int axis = 0; axis < 2; ++axis) {
      QuadraticHamiltonianCoeffs c;
      c.beta1 = 1.0 / (2.0 * params_.M);
      c.beta2 = 0.5 * params_.M * params_.omega1 * params_.omega1;
      auto drv = drive_;
      if (axis == 0) {
        c.beta3 = {[drv, w2](double t) { return rotating_frame_coeffs(*drv, w2, t).Omega1; },
                   [drv, w2](double t) { return rotating_frame_coeffs(*drv, w2, t).dOmega1; }};
        c.beta4 = {[drv, w2](double t) { return rotating_frame_coeffs(*drv, w2, t).xi1; },
                   [drv, w2](double t) { return rotating_frame_coeffs(*drv, w2, t).dxi1; }};
      } else {
        c.beta3 = {[drv, w2](double t) { return rotating_frame_coeffs(*drv, w2, t).Omega2; },
                   [drv, w2](double t) { return rotating_frame_coeffs(*drv, w2, t).dOmega2; }};
        c.beta4 = {[drv, w2](double t) { return rotating_frame_coeffs(*drv, w2, t).xi2; },
                   [drv, w2](double t) { return rotating_frame_coeffs(*drv, w2, t).dxi2; }};
      }
      trajectories_.push_back(std::make_shared<const ClassicalTrajectory>(
          solve_particular(c, window, opts_.step, opts_.initial[axis], axis == 0 ? "Q1" : "Q2")));
    }
    if (space_.dim() == 3) {
      QuadraticHamiltonianCoeffs c;
      c.beta1 = 1.0 / (2.0 * cfg_.mass());
      c.beta2 = 0.5 * cfg_.mass() * cfg_.omega0() * cfg_.omega0();
      auto drv = drive_;
      c.beta4 = {[drv](double t) { return drv->F(t); }, [drv](double t) { return drv->dF(t); }};
      trajectories_.push_back(std::make_shared<const ClassicalTrajectory>(
          solve_particular(c, window, opts_.step, opts_.initial[2], "Q3")));
    }
  }

  const OscillatorConfig& config() const { return cfg_; }
  const NCSpace& space() const { return space_; }
  const EffectiveParams& params() const { return params_; }
  const SolveOptions& options() const { return opts_; }
  const DriveCoefficients& drive() const { return *drive_; }
  const ClassicalTrajectory& trajectory(int axis) const { return *trajectories_.at(static_cast<std::size_t>(axis)); }
  int dim() const { return space_.dim(); }

  QuantumState state(std::span<const int> n, double t) const {
    if (static_cast<int>(n.size()) != dim())
      throw DimensionError("state: expected " + std::to_string(dim()) + " quantum numbers");
    for (int k : n) {
      if (k < 0) throw ArgumentError("state: quantum numbers must be >= 0");
      if (k > opts_.hermite_cap)
        throw ArgumentError("state: quantum number exceeds the Hermite cap " + std::to_string(opts_.hermite_cap));
    }
    QuantumState s;
    s.n.assign(n.begin(), n.end());
    s.dim = dim();
    s.hbar = space_.hbar();
    s.t = t;
    s.phi = rotation_angle(params_.omega2, t);
    std::vector<const ClassicalTrajectory*> tr;
    for (int a = 0; a < dim(); ++a) {
      const TrajectoryPoint pt = trajectories_[static_cast<std::size_t>(a)]->at(t);
      s.q_cl[a] = pt.Q;
      s.p_cl[a] = pt.P;
      s.rho_sq[a] = a < 2 ? params_.rho_sq : params_.rho3_sq;
      tr.push_back(trajectories_[static_cast<std::size_t>(a)].get());
    }
    s.Y = phase_Y(n, tr, space_.hbar(), t).Y + opts_.perturb_phase_rate * t;
    s.shifts = lab_frame_shifts(s.q_cl[0], s.q_cl[1], s.p_cl[0], s.p_cl[1], s.phi);
    return s;
  }

  QuantumState state(std::initializer_list<int> n, double t) const {
    return state(std::span<const int>(n.begin(), n.size()), t);
  }

  QuantumState ground_state(double t) const {
    std::vector<int> n(static_cast<std::size_t>(dim()), 0);
    return state(n, t);
  }

 private:
  OscillatorConfig cfg_;
  NCSpace space_;
  SolveOptions opts_;
  EffectiveParams params_;
  std::shared_ptr<const DriveCoefficients> drive_;
  std::vector<std::shared_ptr<const ClassicalTrajectory>> trajectories_;
};

// Product of rotated-frame mode functions evaluated at Q = R(phi) x.
inline cplx psi_rotated(const QuantumState& s, std::span<const double> x) {
  if (static_cast<int>(x.size()) != s.dim) throw DimensionError("psi_rotated: point dimension mismatch");
  const double c = std::cos(s.phi), sn = std::sin(s.phi);
  const double q1 = c * x[0] - sn * x[1];
  const double q2 = sn * x[0] + c * x[1];
  cplx v = std::polar(1.0, s.Y);
  v *= mode_eigenfunction(s.n[0], s.rho_sq[0], s.q_cl[0], s.p_cl[0], q1, s.hbar);
  v *= mode_eigenfunction(s.n[1], s.rho_sq[1], s.q_cl[1], s.p_cl[1], q2, s.hbar);
  if (s.dim == 3) v *= mode_eigenfunction(s.n[2], s.rho_sq[2], s.q_cl[2], s.p_cl[2], x[2], s.hbar);
  return v;
}

// Lab-frame eigenfunction written with the shifts (f, g, T, sigma).
inline cplx psi_lab(const QuantumState& s, std::span<const double> x) {
  if (static_cast<int>(x.size()) != s.dim) throw DimensionError("psi_lab: point dimension mismatch");
  const double h = s.hbar;
  const double w = 2.0 * s.rho_sq[0] * h;
  const double c = std::cos(s.phi), sn = std::sin(s.phi);
  const LabFrameShifts& sh = s.shifts;
  const double d1 = x[0] - sh.T, d2 = x[1] - sh.sigma;
  double amp = std::sqrt(1.0 / (w * std::numbers::pi)) * hermite_norm(s.n[0]) * hermite_norm(s.n[1]);
  amp *= std::exp(-(d1 * d1 + d2 * d2) / (2.0 * w));
  amp *= hermite(s.n[0], (c * x[0] - sn * x[1] - s.q_cl[0]) / std::sqrt(w));
  amp *= hermite(s.n[1], (sn * x[0] + c * x[1] - s.q_cl[1]) / std::sqrt(w));
  double phase = s.Y + (sh.f * x[0] + sh.g * x[1]) / h;
  if (s.dim == 3) {
    const double w3 = 2.0 * s.rho_sq[2] * h;
    const double d3 = x[2] - s.q_cl[2];
    amp *= std::pow(1.0 / (w3 * std::numbers::pi), 0.25) * hermite_norm(s.n[2]) * std::exp(-d3 * d3 / (2.0 * w3)) *
           hermite(s.n[2], d3 / std::sqrt(w3));
    phase += s.p_cl[2] * x[2] / h;
  }
  return std::polar(amp, phase);
}

// Closed-form momentum wavefunction of the lowest-lying state.
inline cplx momentum_ground(const QuantumState& s, std::span<const double> p) {
  if (!s.is_ground()) throw UnsupportedStateError("momentum_ground: only the lowest-lying state has a closed form");
  if (static_cast<int>(p.size()) != s.dim) throw DimensionError("momentum_ground: point dimension mismatch");
  const double h = s.hbar;
  const double r2 = s.rho_sq[0];
  const LabFrameShifts& sh = s.shifts;
  const double u1 = p[0] - sh.f, u2 = p[1] - sh.g;
  double amp = std::sqrt(2.0 * r2 / (h * std::numbers::pi)) * std::exp(-r2 * (u1 * u1 + u2 * u2) / h);
  double phase = s.Y - (sh.T * u1 + sh.sigma * u2) / h;
  if (s.dim == 3) {
    const double r3 = s.rho_sq[2];
    const double u3 = p[2] - s.p_cl[2];
    amp *= std::pow(2.0 * r3 / (h * std::numbers::pi), 0.25) * std::exp(-r3 * u3 * u3 / h);
    phase -= s.q_cl[2] * u3 / h;
  }
  return std::polar(amp, phase);
}

struct GridSpec {
  std::size_t points = 512;       // per axis
  double sigmas = 8.0;            // half extent in widths of the Gaussian factor
  std::size_t max_points = std::size_t{1} << 26;  // resource cap on the total node count
};

// Default state grid: centered on the classical center, half extent
// (sigmas + sqrt(2 n_max)) widths so excited-state lobes are covered.
inline std::vector<Grid1D> default_axes(const QuantumState& s, Domain domain, const GridSpec& spec) {
  const int nmax_planar = std::max(s.n[0], s.n[1]);
  const auto centers = domain == Domain::position ? s.position_center() : s.momentum_center();
  std::vector<Grid1D> axes;
  for (int a = 0; a < s.dim; ++a) {
    const int nmax = a < 2 ? nmax_planar : s.n[2];
    const double width = domain == Domain::position ? s.position_width(a) : s.momentum_width(a);
    axes.push_back(Grid1D::centered(centers[a], (spec.sigmas + std::sqrt(2.0 * nmax)) * width, spec.points));
  }
  return axes;
}

template <typename Fn>
SampledField sample_on_axes(const std::vector<Grid1D>& axes, Domain domain, std::size_t max_points, Fn&& fn) {
  for (const auto& g : axes) {
    if (g.points < 2) throw ArgumentError("grid needs at least 2 points per axis");
    if (!(g.spacing > 0.0)) throw ArgumentError("grid spacing must be > 0");
  }
  double total = 1.0;
  for (const auto& g : axes) total *= static_cast<double>(g.points);
  if (total > static_cast<double>(max_points))
    throw ResourceError("grid of " + std::to_string(static_cast<long double>(total)) + " nodes exceeds cap " +
                        std::to_string(max_points));
  SampledField f;
  f.axes = axes;
  f.domain = domain;
  f.values.resize(total_points(axes));
  std::vector<std::size_t> idx(axes.size(), 0);
  std::vector<double> x(axes.size());
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    for (std::size_t a = 0; a < axes.size(); ++a) x[a] = axes[a][idx[a]];
    f.values[k] = fn(std::span<const double>(x));
    f.advance_index(idx);
  }
  f.norm = discrete_norm(f);
  const double r = boundary_ratio(f);
  f.truncation_warning = r * r > 1e-12;
  return f;
}

inline SampledField evaluate_on_grid(const QuantumState& s, const std::vector<Grid1D>& axes,
                                     std::size_t max_points = GridSpec{}.max_points) {
  if (static_cast<int>(axes.size()) != s.dim) throw DimensionError("evaluate_on_grid: axis count mismatch");
  return sample_on_axes(axes, Domain::position, max_points, [&](std::span<const double> x) { return psi_lab(s, x); });
}

inline SampledField evaluate_on_grid(const QuantumState& s, const GridSpec& spec = {}) {
  return evaluate_on_grid(s, default_axes(s, Domain::position, spec), spec.max_points);
}

inline SampledField momentum_ground_on_grid(const QuantumState& s, const std::vector<Grid1D>& axes,
                                            std::size_t max_points = GridSpec{}.max_points) {
  if (static_cast<int>(axes.size()) != s.dim) throw DimensionError("momentum_ground_on_grid: axis count mismatch");
  return sample_on_axes(axes, Domain::momentum, max_points,
                        [&](std::span<const double> p) { return momentum_ground(s, p); });
}

}  // namespace ncps
