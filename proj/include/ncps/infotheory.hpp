#pragma once

// Fisher information, Shannon entropy and the noncommutative Fisher
// definitions that keep the Cramer-Rao bound F * var >= D^2 intact.

#include <cmath>
#include <numbers>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncps/errors.hpp"
#include "ncps/fourier.hpp"
#include "ncps/grid.hpp"
#include "ncps/nc_model.hpp"
#include "ncps/wavefunctions.hpp"

namespace ncps {

inline constexpr double kDensityFloor = 1e-300;

struct FisherComponents {
  std::vector<double> per_axis;
  double total = 0.0;
};

namespace detail {

inline void require_normalized(const SampledDensity& d, const char* who) {
  for (double v : d.values)
    if (!(v >= 0.0)) throw ValidationError(std::string(who) + ": density has negative or NaN entries");
  const double mass = d.integrate([](double v, const auto&) { return v; });
  if (std::abs(mass - 1.0) > 1e-4)
    throw ValidationError(std::string(who) + ": density integrates to " + std::to_string(mass));
}

// 4th-order first derivative along `axis` at node i (central in the interior,
// one-sided five-point stencils at the two nodes nearest each end).
inline double stencil_d1(const double* v, std::size_t stride, std::size_t i, std::size_t n, double h) {
  auto at = [&](std::size_t k) { return v[k * stride]; };
  if (i >= 2 && i + 2 < n)
    return (at(i - 2) - 8.0 * at(i - 1) + 8.0 * at(i + 1) - at(i + 2)) / (12.0 * h);
  if (i < 2) {
    const std::size_t b = 0;
    const double c[2][5] = {{-25, 48, -36, 16, -3}, {-3, -10, 18, -6, 1}};
    double s = 0.0;
    for (std::size_t k = 0; k < 5; ++k) s += c[i][k] * at(b + k);
    return s / (12.0 * h);
  }
  const std::size_t b = n - 5;
  const std::size_t r = i - b;  // 3 or 4
  const double c[2][5] = {{-1, 6, -18, 10, 3}, {3, -16, 36, -48, 25}};
  double s = 0.0;
  for (std::size_t k = 0; k < 5; ++k) s += c[r - 3][k] * at(b + k);
  return s / (12.0 * h);
}

}  // namespace detail

// F_l = \int (d chi / d x_l)^2 / chi, with 0/0 -> 0 where chi < 1e-300.
inline FisherComponents fisher_commutative(const SampledDensity& d) {
  detail::require_normalized(d, "fisher_commutative");
  for (const auto& g : d.axes)
    if (g.points < 5) throw ArgumentError("fisher_commutative: need at least 5 points per axis");
  const auto st = strides(d.axes);
  FisherComponents out;
  for (std::size_t a = 0; a < d.dim(); ++a) {
    const std::size_t n = d.axes[a].points;
    const double h = d.axes[a].spacing;
    const double F = d.integrate([&](double v, const std::vector<std::size_t>& idx) {
      if (v < kDensityFloor) return 0.0;
      const std::size_t k = [&] {
        std::size_t lin = 0;
        for (std::size_t b = 0; b < idx.size(); ++b) lin += idx[b] * st[b];
        return lin;
      }();
      const double* line = d.values.data() + (k - idx[a] * st[a]);
      const double g = detail::stencil_d1(line, st[a], idx[a], n, h);
      return g * g / v;
    });
    out.per_axis.push_back(F);
    out.total += F;
  }
  return out;
}

// -\int chi ln chi with 0 ln 0 -> 0.
inline double shannon(const SampledDensity& d) {
  detail::require_normalized(d, "shannon");
  return -d.integrate([](double v, const auto&) { return v > 0.0 ? v * std::log(v) : 0.0; });
}

// Per-axis mean and variance by trapezoid quadrature.
struct AxisMoments {
  std::vector<double> mean;
  std::vector<double> variance;
};

inline AxisMoments axis_moments(const SampledDensity& d) {
  AxisMoments m;
  const double mass = d.integrate([](double v, const auto&) { return v; });
  for (std::size_t a = 0; a < d.dim(); ++a) {
    const Grid1D& g = d.axes[a];
    const double mu = d.integrate([&](double v, const std::vector<std::size_t>& idx) { return v * g[idx[a]]; }) / mass;
    const double var = d.integrate([&](double v, const std::vector<std::size_t>& idx) {
                         const double x = g[idx[a]] - mu;
                         return v * x * x;
                       }) / mass;
    m.mean.push_back(mu);
    m.variance.push_back(var);
  }
  return m;
}

struct NCFisher {
  double F_r = 0.0;
  double F_p = 0.0;
};

// 2D: F_r/(1 + theta^2 F_r / (4 hbar^2 F_p)), F_p/(1 + eta^2 F_p / (4 hbar^2 F_r)).
// 3D: denominators use 9 hbar^2 and only the planar components (axes 1, 2) of
// the conjugate domain.
inline NCFisher fisher_nc(const FisherComponents& fx, const FisherComponents& fp, const NCSpace& space) {
  const auto d = static_cast<std::size_t>(space.dim());
  if (fx.per_axis.size() != d || fp.per_axis.size() != d)
    throw DimensionError("fisher_nc: component count does not match the space dimension");
  const double h2 = space.hbar() * space.hbar();
  const double th2 = space.theta() * space.theta(), et2 = space.eta() * space.eta();
  NCFisher out;
  if (d == 2) {
    out.F_r = fx.total / (1.0 + th2 * fx.total / (4.0 * h2 * fp.total));
    out.F_p = fp.total / (1.0 + et2 * fp.total / (4.0 * h2 * fx.total));
  } else {
    const double fp12 = fp.per_axis[0] + fp.per_axis[1];
    const double fx12 = fx.per_axis[0] + fx.per_axis[1];
    out.F_r = fx.total / (1.0 + th2 / (9.0 * h2) * fx.total / fp12);
    out.F_p = fp.total / (1.0 + et2 / (9.0 * h2) * fp.total / fx12);
  }
  return out;
}

enum class Provenance { closed_form, quadrature };

inline const char* to_string(Provenance p) { return p == Provenance::closed_form ? "closed-form" : "quadrature"; }

struct InfoReport {
  int dim = 2;
  double theta = 0.0;
  double eta = 0.0;
  Provenance provenance = Provenance::closed_form;
  FisherComponents F_x;  // commutative position Fisher, per axis + total
  FisherComponents F_p;  // commutative momentum Fisher
  std::vector<double> var_x;
  std::vector<double> var_p;
  double F_r_nc = 0.0;
  double F_p_nc = 0.0;
  double S_r_nc = 0.0;
  double S_p_nc = 0.0;
  double var_r_nc = 0.0;
  double var_p_nc = 0.0;
  double cr_r = 0.0;  // F_r_nc * var_r_nc
  double cr_p = 0.0;
  double bbm_sum = 0.0;

  double var_r() const { return sum(var_x); }
  double var_p_total() const { return sum(var_p); }
  double cr_r_commutative() const { return F_x.total * var_r(); }
  double cr_p_commutative() const { return F_p.total * var_p_total(); }

 private:
  static double sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
};

// D (1 + ln pi + ln hbar)
inline double bbm_bound(int dim, double hbar) { return dim * (1.0 + std::log(std::numbers::pi) + std::log(hbar)); }

namespace detail {
inline void finish_report(InfoReport& r, const NCSpace& space) {
  const NCVariances v = nc_variances(r.var_x, r.var_p, space);
  r.var_r_nc = v.var_r;
  r.var_p_nc = v.var_p;
  r.cr_r = r.F_r_nc * r.var_r_nc;
  r.cr_p = r.F_p_nc * r.var_p_nc;
  r.bbm_sum = r.S_r_nc + r.S_p_nc;
}
}  // namespace detail

// Published closed forms for the lowest-lying state (time independent).
inline InfoReport closed_forms(const OscillatorConfig& cfg, const NCSpace& space) {
  const double m = cfg.mass(), w0 = cfg.omega0(), h = space.hbar();
  const double th = space.theta(), et = space.eta();
  const double a = theta_factor(cfg, space);  // 1 + m^2 w0^2 th^2 / 4h^2
  const double b = eta_factor(cfg, space);    // 1 + et^2 / 4h^2 m^2 w0^2
  const double pi = std::numbers::pi;
  InfoReport r;
  r.dim = space.dim();
  r.theta = th;
  r.eta = et;
  r.provenance = Provenance::closed_form;

  const EffectiveParams p = effective_params(cfg, space);
  const double sx = p.rho_sq * h, sp = h / (4.0 * p.rho_sq);        // planar widths^2
  const double sx3 = p.rho3_sq * h, sp3 = h / (4.0 * p.rho3_sq);    // axis-3 widths^2
  r.var_x = {sx, sx};
  r.var_p = {sp, sp};
  r.F_x.per_axis = {1.0 / sx, 1.0 / sx};
  r.F_p.per_axis = {1.0 / sp, 1.0 / sp};
  if (space.dim() == 3) {
    r.var_x.push_back(sx3);
    r.var_p.push_back(sp3);
    r.F_x.per_axis.push_back(1.0 / sx3);
    r.F_p.per_axis.push_back(1.0 / sp3);
  }
  for (double v : r.F_x.per_axis) r.F_x.total += v;
  for (double v : r.F_p.per_axis) r.F_p.total += v;

  const double ra = std::sqrt(a), rb = std::sqrt(b);
  if (space.dim() == 2) {
    r.F_r_nc = 4.0 * m * w0 / h / ra * rb / (1.0 + m * m * w0 * w0 * th * th / (4.0 * h * h) / a * b);
    r.F_p_nc = 4.0 / (h * m * w0) * ra / rb / (1.0 + et * et / (4.0 * h * h * m * m * w0 * w0) * a / b);
    r.S_r_nc = 1.0 + std::log(pi) + std::log(h / (m * w0) * ra / rb);
    r.S_p_nc = 1.0 + std::log(pi) - std::log(1.0 / (h * m * w0) * ra / rb);
  } else {
    const double u = rb / ra;  // a^{-1/2} b^{1/2}
    r.F_r_nc = 4.0 * m * w0 / h * (u + 0.5) /
               (1.0 + m * m * w0 * w0 * th * th / (9.0 * h * h) * u * (u + 0.5));
    r.F_p_nc = 4.0 / (h * m * w0) * (1.0 / u + 0.5) /
               (1.0 + et * et / (9.0 * h * h * m * m * w0 * w0) / u * (1.0 / u + 0.5));
    r.S_r_nc = 1.5 + 1.5 * std::log(pi) + std::log(std::pow(h / (m * w0), 1.5) * ra / rb);
    r.S_p_nc = 1.5 + 1.5 * std::log(pi) - std::log(std::pow(1.0 / (h * m * w0), 1.5) * ra / rb);
  }
  detail::finish_report(r, space);
  return r;
}

// Grid resolution for quadrature reports.
struct InfoGrids {
  std::size_t points_2d = 256;
  std::size_t points_3d = 112;  // ~2.5e-8 relative Fisher error, ~1 s per state
  double sigmas = 8.0;
  std::size_t max_points = std::size_t{1} << 26;

  GridSpec spec(int dim) const { return {dim == 2 ? points_2d : points_3d, sigmas, max_points}; }
};

struct SampledPair {
  SampledField position;
  SampledField momentum;
};

// Position field on the default grid and its momentum transform by direct
// quadrature onto the default momentum grid.
inline SampledPair sample_state(const QuantumState& s, const InfoGrids& grids = {}) {
  const GridSpec spec = grids.spec(s.dim);
  SampledPair out;
  out.position = evaluate_on_grid(s, spec);
  out.momentum = fourier_quadrature(out.position, default_axes(s, Domain::momentum, spec), s.hbar, -1);
  return out;
}

inline InfoReport info_from_fields(const SampledField& position, const SampledField& momentum, const NCSpace& space) {
  if (static_cast<int>(position.dim()) != space.dim() || static_cast<int>(momentum.dim()) != space.dim())
    throw DimensionError("info_from_fields: field dimension does not match the space");
  const SampledDensity chi = density(position);
  const SampledDensity vt = density(momentum);
  InfoReport r;
  r.dim = space.dim();
  r.theta = space.theta();
  r.eta = space.eta();
  r.provenance = Provenance::quadrature;
  r.F_x = fisher_commutative(chi);
  r.F_p = fisher_commutative(vt);
  r.var_x = axis_moments(chi).variance;
  r.var_p = axis_moments(vt).variance;
  const NCFisher f = fisher_nc(r.F_x, r.F_p, space);
  r.F_r_nc = f.F_r;
  r.F_p_nc = f.F_p;
  r.S_r_nc = shannon(chi);
  r.S_p_nc = shannon(vt);
  detail::finish_report(r, space);
  return r;
}

inline InfoReport info_from_state(const QuantumState& s, const NCSpace& space, const InfoGrids& grids = {}) {
  const SampledPair f = sample_state(s, grids);
  return info_from_fields(f.position, f.momentum, space);
}

struct BoundCheck {
  double delta_r = 0.0;  // sqrt(var_r_nc)
  double delta_p = 0.0;
  double floor_r = 0.0;  // sqrt(theta)
  double floor_p = 0.0;  // sqrt(eta)
  double margin_r = 0.0;
  double margin_p = 0.0;
  bool ok_r = false;
  bool ok_p = false;
  bool ok() const { return ok_r && ok_p; }
};

inline BoundCheck nc_uncertainty_bounds(const InfoReport& r, const NCSpace& space, double slack = 1e-9) {
  BoundCheck b;
  b.delta_r = std::sqrt(r.var_r_nc);
  b.delta_p = std::sqrt(r.var_p_nc);
  b.floor_r = std::sqrt(space.theta());
  b.floor_p = std::sqrt(space.eta());
  b.margin_r = b.delta_r - b.floor_r;
  b.margin_p = b.delta_p - b.floor_p;
  b.ok_r = b.margin_r >= -slack;
  b.ok_p = b.margin_p >= -slack;
  return b;
}

// ---- serialization -------------------------------------------------------

inline constexpr const char* kReportCsvHeader =
    "theta,eta,dim,F_r_nc,F_p_nc,S_r_nc,S_p_nc,var_r_nc,var_p_nc,cr_r,cr_p,bbm_sum,provenance";

inline void write_csv_row(std::ostream& os, const InfoReport& r) {
  auto num = [&](double v) {
    detail::put_number(os, v);
    os << ',';
  };
  num(r.theta);
  num(r.eta);
  os << r.dim << ',';
  num(r.F_r_nc);
  num(r.F_p_nc);
  num(r.S_r_nc);
  num(r.S_p_nc);
  num(r.var_r_nc);
  num(r.var_p_nc);
  num(r.cr_r);
  num(r.cr_p);
  num(r.bbm_sum);
  os << to_string(r.provenance) << '\n';
}

inline nlohmann::json to_json(const InfoReport& r) {
  return {{"theta", r.theta},
          {"eta", r.eta},
          {"dim", r.dim},
          {"provenance", to_string(r.provenance)},
          {"F_x", r.F_x.per_axis},
          {"F_p", r.F_p.per_axis},
          {"F_r", r.F_x.total},
          {"F_p_total", r.F_p.total},
          {"var_x", r.var_x},
          {"var_p", r.var_p},
          {"F_r_nc", r.F_r_nc},
          {"F_p_nc", r.F_p_nc},
          {"S_r_nc", r.S_r_nc},
          {"S_p_nc", r.S_p_nc},
          {"var_r_nc", r.var_r_nc},
          {"var_p_nc", r.var_p_nc},
          {"cr_r", r.cr_r},
          {"cr_p", r.cr_p},
          {"bbm_sum", r.bbm_sum}};
}

inline nlohmann::json to_json(const BoundCheck& b) {
  return {{"delta_r", b.delta_r}, {"delta_p", b.delta_p}, {"floor_r", b.floor_r}, {"floor_p", b.floor_p},
          {"margin_r", b.margin_r}, {"margin_p", b.margin_p}, {"ok", b.ok()}};
}

}  // namespace ncps
