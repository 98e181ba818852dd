// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "ncps/ncps.hpp"

using namespace ncps;

namespace {

const double kLnPi = std::log(std::numbers::pi);

struct Criterion {
  int id;
  std::string name;
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [violated: " << what << "]";
    }
  }
};

int failures = 0;

template <typename Fn>
void run_criterion(int id, const std::string& name, Fn&& body) {
  Criterion c;
  c.id = id;
  c.name = name;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!c.pass) ++failures;
  std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << id << ". " << name << ":" << c.detail.str() << " ("
            << std::setprecision(3) << secs << " s)" << std::endl;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1.0); }

InfoReport quadrature_report(const OscillatorConfig& cfg, const NCSpace& sp, double t = 0.0) {
  const ExactSolution sol(cfg, sp);
  return info_from_state(sol.ground_state(t), sp);
}

std::vector<double> axis(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(i + 1 == n ? hi : lo + (hi - lo) * i / (n - 1));
  return v;
}

OscillatorConfig sin_drive() {
  return OscillatorConfig(1, 1, 1, DriveField({DriveSignal::sinusoid(1.0, 1.5), DriveSignal::sinusoid(0.5, 0.7, 0.3)}));
}

double residual(const NCSpace& sp, std::size_t points, double dt, double perturb = 0.0) {
  SolveOptions o;
  o.t_max = 3.0;
  o.perturb_phase_rate = perturb;
  const ExactSolution sol(sin_drive(), sp, o);
  GridSpec g;
  g.points = points;
  return schrodinger_residual(sol, {0, 0}, 2.0, effective_hamiltonian(sin_drive(), sp), g, dt).max_abs;
}

int run_cli(const std::string& args) {
  const int status = std::system((std::string(NCPS_CLI_PATH) + " " + args).c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

int main() {
  std::cout << std::setprecision(6);
  const OscillatorConfig natural;

  run_criterion(1, "commutative limit", [&](Criterion& c) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r2 = closed_forms(natural, NCSpace(0, 0, 2));
    c.require(r2.F_r_nc == 4.0 && r2.F_p_nc == 4.0, "2D closed F = 4");
    c.require(r2.S_r_nc == 1.0 + kLnPi && r2.S_p_nc == 1.0 + kLnPi, "2D closed S = 1 + ln pi");
    const auto r3 = closed_forms(natural, NCSpace(0, 0, 3));
    c.require(r3.F_r_nc == 6.0 && r3.F_p_nc == 6.0, "3D closed F = 6");
    c.require(std::abs(r3.bbm_sum - 3.0 * (1.0 + kLnPi)) < 1e-12, "3D closed S sum");
    double worst = 0.0;
    for (const auto& [q, ref] : {std::pair{quadrature_report(natural, NCSpace(0, 0, 2)), r2},
                                 std::pair{quadrature_report(natural, NCSpace(0, 0, 3)), r3}})
      for (auto [a, b] : {std::pair{q.F_r_nc, ref.F_r_nc}, {q.F_p_nc, ref.F_p_nc}, {q.S_r_nc, ref.S_r_nc},
                          {q.S_p_nc, ref.S_p_nc}})
        worst = std::max(worst, rel(a, b));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.detail << " S=" << std::setprecision(10) << r2.S_r_nc << std::setprecision(6)
             << " quadrature max rel err " << worst;
    c.require(worst < 1e-6, "quadrature within 1e-6");
    c.require(secs < 5.0, "runtime < 5 s");
  });

  run_criterion(2, "BBM constancy", [&](Criterion& c) {
    const auto t0 = std::chrono::steady_clock::now();
    double closed_dev = 0.0, quad_dev = 0.0;
    for (int dim : {2, 3}) {
      const double bound = bbm_bound(dim, 1.0);
      for (double th : axis(0, 2, 41))
        for (double et : axis(0, 2, 41))
          closed_dev = std::max(closed_dev, std::abs(closed_forms(natural, NCSpace(th, et, dim)).bbm_sum - bound));
      const auto sub = axis(0, 2, 5);
      std::vector<double> dev(sub.size() * sub.size());
      parallel_for(dev.size(), 0, [&](std::size_t k) {
        const NCSpace sp(sub[k / sub.size()], sub[k % sub.size()], dim);
        dev[k] = std::abs(quadrature_report(natural, sp).bbm_sum - bound);
      });
      for (double d : dev) quad_dev = std::max(quad_dev, d);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.detail << " closed-form max dev " << closed_dev << ", quadrature (5x5, 2D+3D) max dev " << quad_dev;
    c.require(closed_dev < 1e-12, "closed-form deviation < 1e-12");
    c.require(quad_dev < 1e-6, "quadrature deviation < 1e-6");
    c.require(secs < 60.0, "runtime < 60 s");
  });

  run_criterion(3, "Cramer-Rao", [&](Criterion& c) {
    double min_margin = 1e300;
    for (int dim : {2, 3})
      for (double th : axis(0, 2, 41))
        for (double et : axis(0, 2, 41)) {
          const auto r = closed_forms(natural, NCSpace(th, et, dim));
          min_margin = std::min({min_margin, r.cr_r - dim * dim, r.cr_p - dim * dim});
        }
    const auto corner = closed_forms(natural, NCSpace(0, 0, 2));
    const auto qcorner = quadrature_report(natural, NCSpace(0, 0, 2));
    const double sat = std::max({std::abs(corner.cr_r - 4), std::abs(corner.cr_p - 4), std::abs(qcorner.cr_r - 4),
                                 std::abs(qcorner.cr_p - 4)});
    c.detail << " min margin F*var - D^2 = " << min_margin << ", corner saturation error " << sat;
    c.require(min_margin >= -1e-9, "F*var >= D^2");
    c.require(sat < 1e-8, "corner saturates");
  });

  run_criterion(4, "closed form vs quadrature", [&](Criterion& c) {
    double worst = 0.0;
    int failed_rows = 0;
    const std::vector<double> vals = {0.0, 0.5, 1.0};
    std::vector<ComparisonTable> tables(18);
    parallel_for(tables.size(), 0, [&](std::size_t k) {
      tables[k] = oracle_report(natural, NCSpace(vals[k / 3 % 3], vals[k % 3], k < 9 ? 2 : 3));
    });
    for (const auto& tab : tables) {
      worst = std::max(worst, tab.max_relative_error());
      for (const auto& row : tab.rows)
        if (row.relative && !row.pass) {
          ++failed_rows;
          c.detail << " " << tab.title << ":" << row.quantity;
        }
    }
    c.detail << " max rel err " << worst << " over 18 reports";
    c.require(worst < 1e-6 && failed_rows == 0, "every entry within 1e-6");
  });

  run_criterion(5, "Schrodinger residual", [&](Criterion& c) {
    const NCSpace sp(1.0, 0.5, 2);
    const double base = residual(sp, 512, 1e-4);
    const double order_t = std::log2(residual(sp, 512, 1e-2) / residual(sp, 512, 5e-3));
    const double order_x = std::log2(residual(sp, 128, 1e-5) / residual(sp, 256, 1e-5));
    const double faulty = residual(sp, 512, 1e-4, 0.1);
    c.detail << " residual " << base << ", dt order " << order_t << ", dx order " << order_x << ", fault x"
             << faulty / base;
    c.require(base < 1e-4, "residual < 1e-4");
    c.require(std::abs(order_t - 2.0) < 0.25, "dt order ~2");
    c.require(std::abs(order_x - 4.0) < 0.4, "dx order ~4");
    c.require(faulty >= 10.0 * base, "fault inflates >= 10x");
  });

  run_criterion(6, "invariant eigenvalues", [&](Criterion& c) {
    const NCSpace sp(1.0, 0.5, 2);
    const ExactSolution a(sin_drive(), sp);
    SolveOptions other;
    other.initial[0] = {0.8, -0.3};
    other.initial[1] = {-0.5, 1.1};
    const ExactSolution b(sin_drive(), sp, other);
    double err = 0.0, gauge = 0.0;
    for (int n = 0; n <= 3; ++n)
      for (int ax = 0; ax < 2; ++ax)
        for (double t : {0.0, 1.7, 4.2}) {
          const auto va = invariant_expectation(n, a.params().rho_sq, a.trajectory(ax), t, 1.0);
          const auto vb = invariant_expectation(n, b.params().rho_sq, b.trajectory(ax), t, 1.0);
          c.require(va.grid_adequate && vb.grid_adequate, "grid adequate");
          err = std::max(err, std::abs(va.value - (n + 0.5)));
          gauge = std::max(gauge, std::abs(va.value - vb.value));
        }
    c.detail << " max |<I>/hbar - (n+1/2)| " << err << ", gauge spread " << gauge;
    c.require(err < 1e-7, "eigenvalue within 1e-7");
    c.require(gauge < 1e-9, "gauge independent within 1e-9");
  });

  run_criterion(7, "monotonicity", [&](Criterion& c) {
    int checks = 0;
    for (int dim : {2, 3})
      for (const auto& r : monotonicity_scan(natural, dim, 1.0, {0.0, 0.5, 1.0, 1.5, 2.0})) {
        ++checks;
        if (!r.pass) c.detail << " " << r.description;
        c.require(r.pass, "strict sign on every ray");
      }
    c.detail << " " << checks << " ray checks of 20 points";
  });

  run_criterion(8, "NC uncertainty floors", [&](Criterion& c) {
    double min_r = 1e300, min_p = 1e300;
    for (int dim : {2, 3}) {
      for (double th : axis(0, 2, 41))
        for (double et : axis(0, 2, 41)) {
          const NCSpace sp(th, et, dim);
          const auto b = nc_uncertainty_bounds(closed_forms(natural, sp), sp);
          min_r = std::min(min_r, b.margin_r);
          min_p = std::min(min_p, b.margin_p);
          c.require(b.ok(), "floor holds within 1e-9");
        }
      for (double th : {0.0, 1.0, 2.0})
        for (double et : {0.0, 1.0, 2.0}) {
          const NCSpace sp(th, et, dim);
          const auto b = nc_uncertainty_bounds(quadrature_report(natural, sp), sp);
          min_r = std::min(min_r, b.margin_r);
          min_p = std::min(min_p, b.margin_p);
          c.require(b.ok(), "floor holds within 1e-9");
        }
    }
    c.detail << " min margin dr - sqrt(theta) " << min_r << ", dp - sqrt(eta) " << min_p
             << " (theta*eta = 4 hbar^2 saturates both)";
  });

  run_criterion(9, "transform consistency", [&](Criterion& c) {
    double err = 0.0, parseval = 0.0;
    const ExactSolution s2(sin_drive(), NCSpace(1.0, 0.5, 2));
    const ExactSolution s3(
        OscillatorConfig(1, 1, 1, DriveField({DriveSignal::sinusoid(1.0, 1.5), DriveSignal::zero(), DriveSignal::constant(0.4)})),
        NCSpace(0.5, 1.0, 3));
    for (const auto& st : {s2.ground_state(0.0), s2.ground_state(2.0), s3.ground_state(1.0),
                           ExactSolution(natural, NCSpace(0, 0, 2)).ground_state(0.0)}) {
      const auto tc = transform_check(st);
      err = std::max(err, tc.max_abs_error);
      parseval = std::max(parseval, tc.parseval_error);
    }
    c.detail << " max |FFT - closed form| " << err << ", Parseval " << parseval;
    c.require(err < 1e-8, "max-norm within 1e-8");
    c.require(parseval < 1e-10, "Parseval within 1e-10");
  });

  run_criterion(10, "determinism", [&](Criterion& c) {
    const auto dir = std::filesystem::temp_directory_path() / "ncps_acceptance";
    std::filesystem::create_directories(dir);
    for (int dim : {2, 3}) {
      const auto a = dir / ("a" + std::to_string(dim) + ".csv");
      const auto b = dir / ("b" + std::to_string(dim) + ".csv");
      const std::string common = "sweep --dim " + std::to_string(dim) + " --theta 0:2:41 --eta 0:2:41 --out ";
      c.require(run_cli(common + a.string() + " --threads 1") == 0, "sweep run 1 exit 0");
      c.require(run_cli(common + b.string() + " --threads 4") == 0, "sweep run 2 exit 0");
      auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
      };
      const std::string x = slurp(a), y = slurp(b);
      c.require(!x.empty() && x == y, "byte-identical CSV");
      c.detail << " " << dim << "D " << x.size() << " bytes identical=" << (x == y ? "yes" : "no");
    }
  });

  std::cout << (failures ? "ACCEPTANCE FAILED: " : "ACCEPTANCE PASSED: ") << 10 - failures << "/10 criteria"
            << std::endl;
  return failures ? 1 : 0;
}
