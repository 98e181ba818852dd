#pragma once

// Independent checks of the analytic solution: Schrodinger residual against
// the Bopp-shifted Hamiltonian, the Lewis-Riesenfeld invariant spectrum,
// transform consistency, and the closed-form vs quadrature comparison.

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ncps/errors.hpp"
#include "ncps/fourier.hpp"
#include "ncps/grid.hpp"
#include "ncps/infotheory.hpp"
#include "ncps/nc_model.hpp"
#include "ncps/wavefunctions.hpp"

namespace ncps {

// H = (p1^2 + p2^2)/2M + M w1^2 (x1^2 + x2^2)/2 - w2 L3 + A p1 + B p2 + C x1 + D x2
//     [+ p3^2/2m + m w0^2 x3^2/2 + F x3 in 3D],  L3 = x1 p2 - x2 p1.
struct EffectiveHamiltonianSpec {
  double M = 1.0;
  double omega1 = 1.0;
  double omega2 = 0.0;
  double mass = 1.0;
  double omega0 = 1.0;
  double hbar = 1.0;
  int dim = 2;
  DriveCoefficients drive;
};

inline EffectiveHamiltonianSpec effective_hamiltonian(const OscillatorConfig& cfg, const NCSpace& space) {
  const EffectiveParams p = effective_params(cfg, space);
  return {p.M, p.omega1, p.omega2, cfg.mass(), cfg.omega0(), space.hbar(), space.dim(), DriveCoefficients(cfg, space)};
}

struct ResidualReport {
  double max_abs = 0.0;  // max |R| / (hbar w1 max|psi|) over interior nodes
  double rms = 0.0;
  std::size_t points = 0;  // per axis
  double spacing = 0.0;    // largest grid spacing
  double dt = 0.0;
  std::string state_id;
  bool coarse = false;  // grid spacing too large for the state's scales
};

namespace detail {

inline std::string state_id(const QuantumState& s) {
  std::ostringstream os;
  os << "n=(";
  for (std::size_t i = 0; i < s.n.size(); ++i) os << (i ? "," : "") << s.n[i];
  os << ") t=" << s.t;
  return os.str();
}

}  // namespace detail

// H psi at the interior nodes of `f` (4th-order central differences);
// boundary nodes (two per side) are left at zero.
inline std::vector<cplx> apply_hamiltonian(const EffectiveHamiltonianSpec& H, const SampledField& f, double t) {
  if (static_cast<int>(f.dim()) != H.dim) throw DimensionError("apply_hamiltonian: field dimension mismatch");
  const auto st = strides(f.axes);
  const DriveSample ds = H.drive.at(t);
  const cplx I(0.0, 1.0);
  const double h = H.hbar;
  std::vector<cplx> out(f.values.size(), cplx(0.0));
  const std::size_t D = f.dim();
  std::vector<std::size_t> idx(D);
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    std::size_t rem = k;
    bool interior = true;
    for (std::size_t a = 0; a < D; ++a) {
      idx[a] = rem / st[a];
      rem %= st[a];
      if (idx[a] < 2 || idx[a] + 2 >= f.axes[a].points) interior = false;
    }
    if (!interior) continue;
    std::array<cplx, 3> d1{}, d2{};
    for (std::size_t a = 0; a < D; ++a) {
      const double dx = f.axes[a].spacing;
      const cplx* v = f.values.data() + k;
      const std::ptrdiff_t s = static_cast<std::ptrdiff_t>(st[a]);
      const cplx m2 = v[-2 * s], m1 = v[-s], c0 = v[0], p1 = v[s], p2 = v[2 * s];
      d1[a] = (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * dx);
      d2[a] = (-m2 + 16.0 * m1 - 30.0 * c0 + 16.0 * p1 - p2) / (12.0 * dx * dx);
    }
    const double x1 = f.axes[0][idx[0]], x2 = f.axes[1][idx[1]];
    const cplx psi = f.values[k];
    cplx r = -h * h / (2.0 * H.M) * (d2[0] + d2[1]);
    r += 0.5 * H.M * H.omega1 * H.omega1 * (x1 * x1 + x2 * x2) * psi;
    r -= H.omega2 * (-I * h) * (x1 * d1[1] - x2 * d1[0]);
    r += (-I * h) * (ds.A * d1[0] + ds.B * d1[1]);
    r += (ds.C * x1 + ds.D * x2) * psi;
    if (D == 3) {
      const double x3 = f.axes[2][idx[2]];
      r += -h * h / (2.0 * H.mass) * d2[2];
      r += (0.5 * H.mass * H.omega0 * H.omega0 * x3 * x3 + ds.F * x3) * psi;
    }
    out[k] = r;
  }
  return out;
}

// R = i hbar (psi(t+dt) - psi(t-dt)) / 2dt - H psi(t) on a fixed grid.
inline ResidualReport schrodinger_residual(const ExactSolution& sol, std::span<const int> n, double t,
                                           const EffectiveHamiltonianSpec& H, const GridSpec& grid, double dt) {
  if (!(dt > 0.0)) throw ArgumentError("schrodinger_residual: dt must be > 0");
  const QuantumState s0 = sol.state(n, t);
  const auto axes = default_axes(s0, Domain::position, grid);
  const SampledField f0 = evaluate_on_grid(s0, axes, grid.max_points);
  const SampledField fm = evaluate_on_grid(sol.state(n, t - dt), axes, grid.max_points);
  const SampledField fp = evaluate_on_grid(sol.state(n, t + dt), axes, grid.max_points);
  const std::vector<cplx> hpsi = apply_hamiltonian(H, f0, t);

  const cplx I(0.0, 1.0);
  const auto st = strides(axes);
  double peak = 0.0;
  for (const auto& v : f0.values) peak = std::max(peak, std::abs(v));
  const double scale = H.hbar * H.omega1 * peak;
  ResidualReport rep;
  rep.dt = dt;
  rep.points = grid.points;
  rep.state_id = detail::state_id(s0);
  double sq = 0.0;
  std::size_t count = 0;
  for (std::size_t k = 0; k < f0.values.size(); ++k) {
    std::size_t rem = k;
    bool interior = true;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const std::size_t i = rem / st[a];
      rem %= st[a];
      if (i < 2 || i + 2 >= axes[a].points) interior = false;
    }
    if (!interior) continue;
    const cplx r = I * H.hbar * (fp.values[k] - fm.values[k]) / (2.0 * dt) - hpsi[k];
    const double a = std::abs(r) / scale;
    rep.max_abs = std::max(rep.max_abs, a);
    sq += a * a;
    ++count;
  }
  rep.rms = count ? std::sqrt(sq / static_cast<double>(count)) : 0.0;

  // Resolution heuristic: at least 4 nodes per width and at most 0.5 rad of
  // plane-wave phase per node.
  const auto pc = s0.momentum_center();
  for (std::size_t a = 0; a < axes.size(); ++a) {
    rep.spacing = std::max(rep.spacing, axes[a].spacing);
    const double width = s0.position_width(static_cast<int>(a));
    const double kmax = std::abs(pc[a]) / H.hbar + 1.0 / width;
    if (axes[a].spacing > 0.25 * width || axes[a].spacing * kmax > 0.5) rep.coarse = true;
  }
  return rep;
}

inline ResidualReport schrodinger_residual(const ExactSolution& sol, std::initializer_list<int> n, double t,
                                           const EffectiveHamiltonianSpec& H, const GridSpec& grid, double dt) {
  return schrodinger_residual(sol, std::span<const int>(n.begin(), n.size()), t, H, grid, dt);
}

struct InvariantResult {
  double value = 0.0;  // <I> / hbar
  bool grid_adequate = true;
};

// <phi| (Q - Qcl)^2 / (4 rho^2) + rho^2 (P - Pcl)^2 |phi> / hbar for a 1D mode
// sampled on a uniform grid. The momentum operator is the FFT derivative.
inline InvariantResult invariant_expectation(const SampledField& mode, double rho_sq, double q_cl, double p_cl,
                                             double hbar) {
  if (mode.dim() != 1) throw DimensionError("invariant_expectation: expects a 1D mode sample");
  if (!(rho_sq > 0.0)) throw ArgumentError("invariant_expectation: rho_sq must be > 0");
  const Grid1D& g = mode.axes[0];
  const std::vector<cplx> d = spectral_derivative(mode.values, g.spacing);
  const cplx I(0.0, 1.0);
  double pos = 0.0, mom = 0.0, norm = 0.0;
  for (std::size_t j = 0; j < g.points; ++j) {
    const double w = g.spacing;  // rectangle rule, consistent with the periodic derivative
    const double y = g[j] - q_cl;
    const cplx chi = -I * hbar * d[j] - p_cl * mode.values[j];
    pos += w * y * y / (4.0 * rho_sq) * std::norm(mode.values[j]);
    mom += w * rho_sq * std::norm(chi);
    norm += w * std::norm(mode.values[j]);
  }
  InvariantResult r;
  r.value = (pos + mom) / (norm * hbar);
  const double width = std::sqrt(rho_sq * hbar);
  const double kmax = std::abs(p_cl) / hbar + 10.0 / width;
  const double edge = boundary_ratio(mode);
  r.grid_adequate = kmax < std::numbers::pi / g.spacing && edge * edge < 1e-12;
  return r;
}

inline InvariantResult invariant_expectation(int n, double rho_sq, const ClassicalTrajectory& trajectory, double t,
                                             double hbar, std::size_t points = 512, double sigmas = 12.0) {
  const TrajectoryPoint pt = trajectory.at(t);
  const double width = std::sqrt(rho_sq * hbar);
  const std::vector<Grid1D> axes{Grid1D::centered(pt.Q, (sigmas + std::sqrt(2.0 * n)) * width, points)};
  const SampledField mode = sample_on_axes(axes, Domain::position, points, [&](std::span<const double> q) {
    return mode_eigenfunction(n, rho_sq, pt.Q, pt.P, q[0], hbar);
  });
  return invariant_expectation(mode, rho_sq, pt.Q, pt.P, hbar);
}

// Position/momentum grids for the FFT route covering +-sigmas widths around
// both centers: dx is the geometric mean of the two feasibility bounds.
inline std::vector<Grid1D> balanced_axes(const QuantumState& s, std::size_t points, double sigmas = 10.0) {
  std::vector<Grid1D> axes;
  const auto xc = s.position_center();
  for (int a = 0; a < s.dim; ++a) {
    const double lx = sigmas * s.position_width(a);
    const double lp = sigmas * s.momentum_width(a);
    const double lo = 2.0 * lx / static_cast<double>(points - 1);
    const double hi = std::numbers::pi * s.hbar / lp;
    if (lo > hi) throw ArgumentError("balanced_axes: too few points to cover both domains");
    const double dx = std::sqrt(lo * hi);
    axes.push_back({xc[a] - 0.5 * dx * static_cast<double>(points - 1), dx, points});
  }
  return axes;
}

struct TransformCheck {
  double max_abs_error = 0.0;  // FFT route vs closed-form ground-state momentum function
  double parseval_error = 0.0;
  double inversion_error = 0.0;
  bool truncation_warning = false;
};

// points = 0 picks 512 per axis in 2D and 128 in 3D.
inline TransformCheck transform_check(const QuantumState& s, std::size_t points = 0) {
  if (points == 0) points = s.dim == 2 ? 512 : 128;
  const auto axes = balanced_axes(s, points);
  const SampledField psi = evaluate_on_grid(s, axes);
  std::vector<double> starts;
  const auto pc = s.momentum_center();
  for (int a = 0; a < s.dim; ++a) {
    const Grid1D r = reciprocal_grid(axes[static_cast<std::size_t>(a)], s.hbar);
    starts.push_back(pc[a] - static_cast<double>(points / 2) * r.spacing);
  }
  const SampledField xi = fourier_fft(psi, s.hbar, -1, starts);
  TransformCheck c;
  c.truncation_warning = xi.truncation_warning;
  const SampledField exact = momentum_ground_on_grid(s, xi.axes);
  for (std::size_t k = 0; k < xi.values.size(); ++k)
    c.max_abs_error = std::max(c.max_abs_error, std::abs(xi.values[k] - exact.values[k]));
  double nx = 0.0;
  for (const auto& v : psi.values) nx += std::norm(v);
  nx *= psi.cell_volume();
  c.parseval_error = std::abs(xi.norm - nx);
  std::vector<double> back_start;
  for (const auto& g : axes) back_start.push_back(g.start);
  const SampledField back = fourier_fft(xi, s.hbar, +1, back_start);
  for (std::size_t k = 0; k < psi.values.size(); ++k)
    c.inversion_error = std::max(c.inversion_error, std::abs(back.values[k] - psi.values[k]));
  return c;
}

// ---- comparison harness ----------------------------------------------------

struct ComparisonRow {
  std::string quantity;
  double reference = 0.0;  // closed form (or exact value)
  double measured = 0.0;   // quadrature
  double error = 0.0;      // relative (or absolute, see `relative`)
  double tolerance = 0.0;
  bool relative = true;
  bool pass = false;
};

struct ComparisonTable {
  std::string title;
  std::vector<ComparisonRow> rows;

  bool all_pass() const {
    return std::all_of(rows.begin(), rows.end(), [](const ComparisonRow& r) { return r.pass; });
  }
  double max_relative_error() const {
    double m = 0.0;
    for (const auto& r : rows)
      if (r.relative) m = std::max(m, r.error);
    return m;
  }
  void add_relative(std::string name, double ref, double got, double tol) {
    const double err = std::abs(got - ref) / std::max(std::abs(ref), 1.0);
    rows.push_back({std::move(name), ref, got, err, tol, true, err <= tol});
  }
  void add_absolute(std::string name, double ref, double got, double tol) {
    const double err = std::abs(got - ref);
    rows.push_back({std::move(name), ref, got, err, tol, false, err <= tol});
  }
  void add_bound(std::string name, double bound, double got, double slack) {
    rows.push_back({std::move(name), bound, got, got - bound, slack, false, got >= bound - slack});
  }
};

inline void write_csv(std::ostream& os, const ComparisonTable& t) {
  os << "quantity,reference,measured,error,tolerance,kind,pass\n";
  for (const auto& r : t.rows) {
    os << r.quantity << ',';
    detail::put_number(os, r.reference);
    os << ',';
    detail::put_number(os, r.measured);
    os << ',';
    detail::put_number(os, r.error);
    os << ',';
    detail::put_number(os, r.tolerance);
    os << ',' << (r.relative ? "relative" : "absolute") << ',' << (r.pass ? "pass" : "FAIL") << '\n';
  }
}

inline void print_summary(std::ostream& os, const ComparisonTable& t) {
  os << "== " << t.title << " ==\n";
  for (const auto& r : t.rows) {
    os << "  [" << (r.pass ? "PASS" : "FAIL") << "] " << std::left << std::setw(28) << r.quantity << std::right
       << " ref=" << std::setw(14) << std::setprecision(10) << r.reference << "  got=" << std::setw(14) << r.measured
       << "  err=" << std::setprecision(3) << std::scientific << r.error << " tol=" << r.tolerance
       << std::defaultfloat << '\n';
  }
}

// Tolerance hierarchy: closed-form identities 1e-12, quadrature vs closed
// form 1e-6 relative, inequality slack 1e-9.
struct Tolerances {
  double identity = 1e-12;
  double quadrature = 1e-6;
  double slack = 1e-9;
  double normalization = 1e-9;
  double parseval = 1e-10;
  double transform = 1e-8;
};

// Quadrature report of the ground state at time t against the closed forms,
// plus normalization, Parseval, transform and inequality checks.
inline ComparisonTable oracle_report(const OscillatorConfig& cfg, const NCSpace& space, const InfoGrids& grids = {},
                                     double t = 0.0, SolveOptions opts = {}, Tolerances tol = {}) {
  opts.t_max = std::max(opts.t_max, t + 1.0);
  const ExactSolution sol(cfg, space, opts);
  const QuantumState s = sol.ground_state(t);
  const SampledPair fields = sample_state(s, grids);
  const InfoReport q = info_from_fields(fields.position, fields.momentum, space);
  const InfoReport c = closed_forms(cfg, space);

  ComparisonTable tab;
  std::ostringstream title;
  title << space.dim() << "D theta=" << space.theta() << " eta=" << space.eta() << " t=" << t;
  tab.title = title.str();
  const double qt = tol.quadrature;
  for (std::size_t a = 0; a < c.F_x.per_axis.size(); ++a) {
    const std::string ax = std::to_string(a + 1);
    tab.add_relative("F_x" + ax, c.F_x.per_axis[a], q.F_x.per_axis[a], qt);
    tab.add_relative("F_p" + ax, c.F_p.per_axis[a], q.F_p.per_axis[a], qt);
    tab.add_relative("var_x" + ax, c.var_x[a], q.var_x[a], qt);
    tab.add_relative("var_p" + ax, c.var_p[a], q.var_p[a], qt);
  }
  tab.add_relative("F_r", c.F_x.total, q.F_x.total, qt);
  tab.add_relative("F_p", c.F_p.total, q.F_p.total, qt);
  tab.add_relative("F_r_nc", c.F_r_nc, q.F_r_nc, qt);
  tab.add_relative("F_p_nc", c.F_p_nc, q.F_p_nc, qt);
  tab.add_relative("S_r_nc", c.S_r_nc, q.S_r_nc, qt);
  tab.add_relative("S_p_nc", c.S_p_nc, q.S_p_nc, qt);
  tab.add_relative("var_r_nc", c.var_r_nc, q.var_r_nc, qt);
  tab.add_relative("var_p_nc", c.var_p_nc, q.var_p_nc, qt);
  tab.add_relative("cr_r", c.cr_r, q.cr_r, qt);
  tab.add_relative("cr_p", c.cr_p, q.cr_p, qt);
  tab.add_relative("bbm_sum", c.bbm_sum, q.bbm_sum, qt);

  const double bound = bbm_bound(space.dim(), space.hbar());
  tab.add_absolute("bbm_closed_vs_bound", bound, c.bbm_sum, tol.identity);
  tab.add_absolute("bbm_quadrature_vs_bound", bound, q.bbm_sum, qt);
  const double d2 = space.dim() * space.dim();
  tab.add_bound("cramer_rao_r_nc", d2, q.cr_r, tol.slack + qt * d2);
  tab.add_bound("cramer_rao_p_nc", d2, q.cr_p, tol.slack + qt * d2);
  tab.add_bound("cramer_rao_r", d2, q.cr_r_commutative(), tol.slack + qt * d2);
  tab.add_bound("cramer_rao_p", d2, q.cr_p_commutative(), tol.slack + qt * d2);
  const BoundCheck b = nc_uncertainty_bounds(q, space, tol.slack);
  tab.add_bound("delta_r_floor", b.floor_r, b.delta_r, tol.slack);
  tab.add_bound("delta_p_floor", b.floor_p, b.delta_p, tol.slack);

  tab.add_absolute("norm_position", 1.0, fields.position.norm, tol.normalization);
  tab.add_absolute("norm_momentum", 1.0, fields.momentum.norm, tol.normalization);
  const TransformCheck tc = transform_check(s);
  tab.add_absolute("transform_max_error", 0.0, tc.max_abs_error, tol.transform);
  tab.add_absolute("parseval", 0.0, tc.parseval_error, tol.parseval);
  return tab;
}

// ---- monotonicity scans of the closed forms ---------------------------------

struct MonotonicityResult {
  std::string description;
  bool pass = false;
};

// Along a ray in theta at fixed eta: F_r decreasing, S_r increasing, F_p
// increasing, S_p decreasing; along eta at fixed theta the mirrored signs.
inline std::vector<MonotonicityResult> monotonicity_scan(const OscillatorConfig& cfg, int dim, double hbar,
                                                         const std::vector<double>& fixed_values,
                                                         double lo = 0.0, double hi = 2.0, int count = 20) {
  std::vector<MonotonicityResult> out;
  auto ray = [&](bool along_theta, double fixed) {
    std::vector<InfoReport> r;
    for (int i = 0; i < count; ++i) {
      const double v = lo + (hi - lo) * i / (count - 1);
      r.push_back(closed_forms(cfg, along_theta ? NCSpace(v, fixed, dim, hbar) : NCSpace(fixed, v, dim, hbar)));
    }
    return r;
  };
  auto signs = [](const std::vector<InfoReport>& r, double InfoReport::*field, int sign) {
    for (std::size_t i = 1; i < r.size(); ++i) {
      const double d = r[i].*field - r[i - 1].*field;
      if (!(sign * d > 0.0)) return false;
    }
    return true;
  };
  for (double fixed : fixed_values) {
    const auto th = ray(true, fixed);
    const auto et = ray(false, fixed);
    std::ostringstream a, b;
    a << dim << "D theta-ray eta=" << fixed;
    b << dim << "D eta-ray theta=" << fixed;
    out.push_back({a.str() + ": F_r down", signs(th, &InfoReport::F_r_nc, -1)});
    out.push_back({a.str() + ": S_r up", signs(th, &InfoReport::S_r_nc, +1)});
    out.push_back({a.str() + ": F_p up", signs(th, &InfoReport::F_p_nc, +1)});
    out.push_back({a.str() + ": S_p down", signs(th, &InfoReport::S_p_nc, -1)});
    out.push_back({b.str() + ": F_r up", signs(et, &InfoReport::F_r_nc, +1)});
    out.push_back({b.str() + ": S_r down", signs(et, &InfoReport::S_r_nc, -1)});
    out.push_back({b.str() + ": F_p down", signs(et, &InfoReport::F_p_nc, -1)});
    out.push_back({b.str() + ": S_p up", signs(et, &InfoReport::S_p_nc, +1)});
  }
  return out;
}

}  // namespace ncps
