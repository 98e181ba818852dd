#pragma once

// Noncommutative phase-space parameters, the Bopp-shifted effective
// oscillator, its drive coefficients, and the rotating-frame transform
// that decouples the two planar axes.
//
// Conventions: theta_mn = eps^{mn} theta, eta_mn = eps^{mn} eta in the plane;
// in 3D the noncommutativity vectors point along axis 3 and axis 3 stays
// commutative.

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ncps/errors.hpp"
#include "ncps/signal.hpp"

namespace ncps {

class NCSpace {
 public:
  NCSpace(double theta, double eta, int dim, double hbar = 1.0)
      : theta_(theta), eta_(eta), dim_(dim), hbar_(hbar) {
    if (!(theta >= 0.0) || !std::isfinite(theta)) throw ArgumentError("theta must be finite and >= 0");
    if (!(eta >= 0.0) || !std::isfinite(eta)) throw ArgumentError("eta must be finite and >= 0");
    if (dim != 2 && dim != 3) throw DimensionError("dim must be 2 or 3, got " + std::to_string(dim));
    if (!(hbar > 0.0) || !std::isfinite(hbar)) throw ArgumentError("hbar must be finite and > 0");
  }

  double theta() const { return theta_; }
  double eta() const { return eta_; }
  int dim() const { return dim_; }
  double hbar() const { return hbar_; }
  bool commutative() const { return theta_ == 0.0 && eta_ == 0.0; }

 private:
  double theta_;
  double eta_;
  int dim_;
  double hbar_;
};

// One signal per spatial axis; missing axes are zero.
class DriveField {
 public:
  DriveField() = default;
  explicit DriveField(std::vector<DriveSignal> components) : components_(std::move(components)) {
    if (components_.size() > 3) throw DimensionError("drive field has more than 3 components");
  }

  const DriveSignal& component(int axis) const {
    static const DriveSignal kZero;
    return axis < static_cast<int>(components_.size()) ? components_[axis] : kZero;
  }
  double value(int axis, double t) const { return component(axis).value(t); }
  double rate(int axis, double t) const { return component(axis).rate(t); }
  std::size_t size() const { return components_.size(); }

 private:
  std::vector<DriveSignal> components_;
};

class OscillatorConfig {
 public:
  OscillatorConfig(double mass = 1.0, double omega0 = 1.0, double charge = 1.0, DriveField drive = {})
      : mass_(mass), omega0_(omega0), charge_(charge), drive_(std::move(drive)) {
    if (!(mass > 0.0) || !std::isfinite(mass)) throw ArgumentError("mass must be finite and > 0");
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw ArgumentError("omega0 must be finite and > 0");
    if (!std::isfinite(charge)) throw ArgumentError("charge must be finite");
  }

  double mass() const { return mass_; }
  double omega0() const { return omega0_; }
  double charge() const { return charge_; }
  const DriveField& drive() const { return drive_; }

 private:
  double mass_;
  double omega0_;
  double charge_;
  DriveField drive_;
};

struct EffectiveParams {
  double M = 0.0;        // effective planar mass
  double omega1 = 0.0;   // effective planar frequency
  double omega2 = 0.0;   // angular-momentum coupling / rotation rate
  double rho_sq = 0.0;   // 1 / (2 M omega1)
  double rho3_sq = 0.0;  // 1 / (2 m omega0), axis 3
};

// 1 + m^2 w0^2 theta^2 / (4 hbar^2)
inline double theta_factor(const OscillatorConfig& cfg, const NCSpace& space) {
  const double k = cfg.mass() * cfg.omega0() * space.theta() / (2.0 * space.hbar());
  return 1.0 + k * k;
}

// 1 + eta^2 / (4 hbar^2 m^2 w0^2)
inline double eta_factor(const OscillatorConfig& cfg, const NCSpace& space) {
  const double k = space.eta() / (2.0 * space.hbar() * cfg.mass() * cfg.omega0());
  return 1.0 + k * k;
}

inline EffectiveParams effective_params(const OscillatorConfig& cfg, const NCSpace& space) {
  const double a = theta_factor(cfg, space);
  const double b = eta_factor(cfg, space);
  const double m = cfg.mass();
  const double w0 = cfg.omega0();
  EffectiveParams p;
  p.M = m / a;
  p.omega1 = w0 * std::sqrt(a * b);
  p.omega2 = (space.eta() + space.theta() * m * m * w0 * w0) / (2.0 * space.hbar() * m);
  p.rho_sq = 1.0 / (2.0 * p.M * p.omega1);
  p.rho3_sq = 1.0 / (2.0 * m * w0);
  return p;
}

// Instantaneous drive coefficients of the Bopp-shifted Hamiltonian and their
// time derivatives.
struct DriveSample {
  double A = 0, B = 0, C = 0, D = 0, F = 0;
  double dA = 0, dB = 0, dC = 0, dD = 0, dF = 0;
};

class DriveCoefficients {
 public:
  DriveCoefficients(const OscillatorConfig& cfg, const NCSpace& space)
      : drive_(cfg.drive()), q_(cfg.charge()), k_(cfg.charge() * space.theta() / (2.0 * space.hbar())),
        dim_(space.dim()) {
    if (static_cast<int>(drive_.size()) > dim_)
      throw DimensionError("drive field has more components than the space has axes");
  }

  double A(double t) const { return k_ * drive_.value(1, t); }
  double B(double t) const { return -k_ * drive_.value(0, t); }
  double C(double t) const { return q_ * drive_.value(0, t); }
  double D(double t) const { return q_ * drive_.value(1, t); }
  double F(double t) const {
    require_3d();
    return q_ * drive_.value(2, t);
  }
  double dA(double t) const { return k_ * drive_.rate(1, t); }
  double dB(double t) const { return -k_ * drive_.rate(0, t); }
  double dC(double t) const { return q_ * drive_.rate(0, t); }
  double dD(double t) const { return q_ * drive_.rate(1, t); }
  double dF(double t) const {
    require_3d();
    return q_ * drive_.rate(2, t);
  }

  DriveSample at(double t) const {
    DriveSample s;
    const double e1 = drive_.value(0, t), e2 = drive_.value(1, t);
    const double r1 = drive_.rate(0, t), r2 = drive_.rate(1, t);
    s.A = k_ * e2;
    s.B = -k_ * e1;
    s.C = q_ * e1;
    s.D = q_ * e2;
    s.dA = k_ * r2;
    s.dB = -k_ * r1;
    s.dC = q_ * r1;
    s.dD = q_ * r2;
    if (dim_ == 3) {
      s.F = q_ * drive_.value(2, t);
      s.dF = q_ * drive_.rate(2, t);
    }
    return s;
  }

  int dim() const { return dim_; }

 private:
  void require_3d() const {
    if (dim_ != 3) throw DimensionError("F(t) exists only in 3D");
  }

  DriveField drive_;
  double q_;
  double k_;  // q theta / (2 hbar)
  int dim_;
};

inline DriveCoefficients drive_coefficients(const OscillatorConfig& cfg, const NCSpace& space) {
  return DriveCoefficients(cfg, space);
}

// phi(t) = omega2 * t
inline double rotation_angle(double omega2, double t) { return omega2 * t; }

struct RotatingFrameCoefficients {
  double Omega1 = 0, Omega2 = 0, xi1 = 0, xi2 = 0;
  double dOmega1 = 0, dOmega2 = 0, dxi1 = 0, dxi2 = 0;
};

inline RotatingFrameCoefficients rotating_frame_coeffs(const DriveSample& s, double omega2, double t) {
  const double phi = rotation_angle(omega2, t);
  const double c = std::cos(phi), sn = std::sin(phi);
  RotatingFrameCoefficients r;
  r.Omega1 = s.A * c - s.B * sn;
  r.Omega2 = s.A * sn + s.B * c;
  r.xi1 = s.C * c - s.D * sn;
  r.xi2 = s.C * sn + s.D * c;
  // product rule with dphi/dt = omega2
  r.dOmega1 = s.dA * c - s.dB * sn - omega2 * r.Omega2;
  r.dOmega2 = s.dA * sn + s.dB * c + omega2 * r.Omega1;
  r.dxi1 = s.dC * c - s.dD * sn - omega2 * r.xi2;
  r.dxi2 = s.dC * sn + s.dD * c + omega2 * r.xi1;
  return r;
}

inline RotatingFrameCoefficients rotating_frame_coeffs(const DriveCoefficients& coeffs, double omega2,
                                                       double t) {
  return rotating_frame_coeffs(coeffs.at(t), omega2, t);
}

// Noncommutative total variances from per-axis commutative ones.
// 2D: dr^2 + theta^2/(4 hbar^2) dp^2 and dp^2 + eta^2/(4 hbar^2) dr^2.
// 3D: only axes 1 and 2 enter the correction terms.
struct NCVariances {
  double var_r = 0.0;
  double var_p = 0.0;
};

inline NCVariances nc_variances(std::span<const double> var_x, std::span<const double> var_p,
                                const NCSpace& space) {
  const auto d = static_cast<std::size_t>(space.dim());
  if (var_x.size() != d || var_p.size() != d)
    throw DimensionError("nc_variances: expected " + std::to_string(d) + " axes");
  double rx = 0.0, rp = 0.0;
  for (std::size_t l = 0; l < d; ++l) {
    if (!(var_x[l] >= 0.0) || !(var_p[l] >= 0.0) || !std::isfinite(var_x[l]) || !std::isfinite(var_p[l]))
      throw ArgumentError("nc_variances: variances must be finite and nonnegative");
    rx += var_x[l];
    rp += var_p[l];
  }
  const double planar_x = var_x[0] + var_x[1];
  const double planar_p = var_p[0] + var_p[1];
  const double h2 = 4.0 * space.hbar() * space.hbar();
  NCVariances out;
  out.var_r = rx + space.theta() * space.theta() / h2 * planar_p;
  out.var_p = rp + space.eta() * space.eta() / h2 * planar_x;
  return out;
}

}  // namespace ncps
