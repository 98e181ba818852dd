#pragma once

// End-to-end check suite behind `ncps verify`: closed-form vs quadrature,
// normalization, Parseval, inequality margins, Schrodinger residuals,
// invariant spectrum and monotonicity scans.

#include <chrono>
#include <ostream>
#include <string>
#include <vector>

#include "ncps/config.hpp"
#include "ncps/validation.hpp"

namespace ncps {

struct VerifyOptions {
  double residual_dt = 1e-4;
  std::size_t residual_points_2d = 512;
  std::size_t residual_points_3d = 128;
  double residual_tol_2d = 1e-4;
  double residual_tol_3d = 1e-3;
  double invariant_tol = 1e-7;
  int invariant_max_n = 3;
  std::vector<double> monotonic_fixed = {0.0, 0.5, 1.0, 1.5, 2.0};
};

struct VerifyResult {
  std::vector<ComparisonTable> tables;
  double seconds = 0.0;
  bool pass() const {
    for (const auto& t : tables)
      if (!t.all_pass()) return false;
    return true;
  }
};

inline VerifyResult run_verify(const RunConfig& cfg, const VerifyOptions& vo = {}) {
  const auto start = std::chrono::steady_clock::now();
  cfg.validate();
  if (!cfg.theta.is_scalar() || !cfg.eta.is_scalar()) throw ArgumentError("verify needs scalar theta and eta");
  const OscillatorConfig osc = cfg.oscillator();
  const NCSpace space = cfg.space(cfg.theta.min, cfg.eta.min);
  const int dim = cfg.dim;
  VerifyResult out;

  SolveOptions opts;
  opts.t_min = std::min(0.0, cfg.t - 1.0);
  opts.t_max = std::max(1.0, cfg.t + 1.0);
  opts.perturb_phase_rate = cfg.perturb_phase;
  out.tables.push_back(oracle_report(osc, space, cfg.info_grids(), cfg.t, opts));

  const ExactSolution sol(osc, space, opts);
  ComparisonTable dyn;
  dyn.title = "dynamics";
  const auto H = effective_hamiltonian(osc, space);
  GridSpec g;
  g.points = dim == 2 ? vo.residual_points_2d : vo.residual_points_3d;
  const double rtol = dim == 2 ? vo.residual_tol_2d : vo.residual_tol_3d;
  std::vector<std::vector<int>> states = {std::vector<int>(static_cast<std::size_t>(dim), 0)};
  states.push_back(states[0]);
  states[1][0] = 1;
  states[1][1] = 2;
  for (const auto& n : states) {
    const ResidualReport r = schrodinger_residual(sol, n, cfg.t, H, g, vo.residual_dt);
    dyn.add_absolute("residual " + r.state_id, 0.0, r.max_abs, rtol);
    if (r.coarse) dyn.add_absolute("residual grid adequate " + r.state_id, 0.0, 1.0, 0.0);
  }
  for (int axis = 0; axis < dim; ++axis) {
    const double rho_sq = axis < 2 ? sol.params().rho_sq : sol.params().rho3_sq;
    for (int n = 0; n <= vo.invariant_max_n; ++n) {
      const InvariantResult ir = invariant_expectation(n, rho_sq, sol.trajectory(axis), cfg.t, space.hbar());
      dyn.add_absolute("invariant axis" + std::to_string(axis + 1) + " n=" + std::to_string(n), n + 0.5, ir.value,
                       vo.invariant_tol);
      if (!ir.grid_adequate) dyn.add_absolute("invariant grid adequate", 0.0, 1.0, 0.0);
    }
  }
  out.tables.push_back(std::move(dyn));

  ComparisonTable mono;
  mono.title = "monotonicity";
  for (const auto& m : monotonicity_scan(osc, dim, space.hbar(), vo.monotonic_fixed))
    mono.rows.push_back({m.description, 1.0, m.pass ? 1.0 : 0.0, m.pass ? 0.0 : 1.0, 0.0, false, m.pass});
  out.tables.push_back(std::move(mono));

  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace ncps
