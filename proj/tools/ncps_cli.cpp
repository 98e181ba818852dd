// ncps: information measures of the noncommutative oscillator.
//
//   ncps sweep  --theta 0:2:41 --eta 0:2:41 --out sweep.csv
//   ncps info   --theta 1 --eta 0 [--quadrature]
//   ncps state  --n 1,0 --out run/psi
//   ncps verify --theta 1 --eta 1
//
// Exit codes: 0 success, 1 validation failure, 2 usage error.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ncps/ncps.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidationFailure = 1;
constexpr int kUsage = 2;

struct Flags {
  std::string config;
  int dim = 2;
  std::string theta = "0";
  std::string eta = "0";
  double m = 1, omega0 = 1, q = 1, hbar = 1;
  std::vector<std::string> drive;
  double t = 0;
  std::size_t grid_points = 0;
  double grid_sigmas = 0;
  bool quadrature = false;
  std::string out;
  double perturb_phase = 0;
  std::vector<int> n;
  std::string domain = "both";
  unsigned threads = 0;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file; flags override its values")->check(CLI::ExistingFile);
  sub->add_option("--dim", f.dim, "spatial dimension (2 or 3)")->check(CLI::IsMember({2, 3}));
  sub->add_option("--theta", f.theta, "position noncommutativity: value or min:max:count");
  sub->add_option("--eta", f.eta, "momentum noncommutativity: value or min:max:count");
  sub->add_option("--m", f.m, "mass");
  sub->add_option("--omega0", f.omega0, "oscillator frequency");
  sub->add_option("--q", f.q, "charge");
  sub->add_option("--hbar", f.hbar, "reduced Planck constant");
  sub->add_option("--drive", f.drive, "drive per axis, e.g. 1=sin:1,1.5 or 2=table:file.csv")->take_all();
  sub->add_option("--t", f.t, "evaluation time");
  sub->add_option("--grid-points", f.grid_points, "grid points per axis for quadrature");
  sub->add_option("--grid-sigmas", f.grid_sigmas, "grid half extent in Gaussian widths");
  sub->add_flag("--quadrature", f.quadrature, "also compute quadrature reports");
  sub->add_option("--out", f.out, "output path (prefix for `state`)");
  sub->add_option("--perturb-phase", f.perturb_phase, "test hook: add rate*t to the state phase");
  sub->add_option("--threads", f.threads, "worker threads (0: all cores)");
}

// Config file first, then every flag the user actually passed.
ncps::RunConfig resolve(CLI::App* sub, const Flags& f) {
  ncps::RunConfig cfg = f.config.empty() ? ncps::RunConfig{} : ncps::load_config(f.config);
  auto given = [&](const char* name) { return sub->get_option_no_throw(name) && sub->count(name) > 0; };
  if (given("--dim")) cfg.dim = f.dim;
  if (given("--theta")) cfg.theta = ncps::Range::parse(f.theta);
  if (given("--eta")) cfg.eta = ncps::Range::parse(f.eta);
  if (given("--m")) cfg.mass = f.m;
  if (given("--omega0")) cfg.omega0 = f.omega0;
  if (given("--q")) cfg.charge = f.q;
  if (given("--hbar")) cfg.hbar = f.hbar;
  if (given("--drive")) cfg.drive = f.drive;
  if (given("--t")) cfg.t = f.t;
  if (given("--grid-points")) cfg.grid_points = f.grid_points;
  if (given("--grid-sigmas")) cfg.grid_sigmas = f.grid_sigmas;
  if (given("--quadrature")) cfg.quadrature = f.quadrature;
  if (given("--out")) cfg.out = f.out;
  if (given("--perturb-phase")) cfg.perturb_phase = f.perturb_phase;
  if (given("--n")) cfg.n = f.n;
  if (given("--domain")) cfg.domain = f.domain;
  if (given("--threads")) cfg.threads = f.threads;
  cfg.validate();
  return cfg;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream os(path, mode);
  if (!os) throw ncps::ArgumentError("cannot write '" + path + "'");
  return os;
}

int cmd_sweep(const ncps::RunConfig& cfg) {
  const auto rows = ncps::run_sweep(cfg);
  if (cfg.out.empty()) {
    ncps::write_sweep_csv(std::cout, rows);
  } else {
    auto os = open_out(cfg.out);
    ncps::write_sweep_csv(os, rows);
    if (!os.flush()) throw ncps::ArgumentError("write failed: '" + cfg.out + "'");
  }
  return kOk;
}

int cmd_info(const ncps::RunConfig& cfg) {
  if (!cfg.theta.is_scalar() || !cfg.eta.is_scalar()) throw ncps::ArgumentError("info needs scalar theta and eta");
  const auto osc = cfg.oscillator();
  const auto space = cfg.space(cfg.theta.min, cfg.eta.min);
  const auto closed = ncps::closed_forms(osc, space);
  nlohmann::json j;
  j["closed_form"] = ncps::to_json(closed);
  j["bounds"] = ncps::to_json(ncps::nc_uncertainty_bounds(closed, space));
  j["bbm_bound"] = ncps::bbm_bound(space.dim(), space.hbar());
  if (cfg.quadrature) {
    ncps::SolveOptions opts;
    opts.t_min = std::min(0.0, cfg.t);
    opts.t_max = std::max(1.0, cfg.t + 1.0);
    const ncps::ExactSolution sol(osc, space, opts);
    const auto quad = ncps::info_from_state(sol.ground_state(cfg.t), space, cfg.info_grids());
    j["quadrature"] = ncps::to_json(quad);
    j["quadrature_bounds"] = ncps::to_json(ncps::nc_uncertainty_bounds(quad, space));
  }
  const std::string text = j.dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    auto os = open_out(cfg.out);
    os << text;
  }
  return kOk;
}

// Writes <out>_position.{csv,bin} and/or <out>_momentum.{csv,bin}. The
// momentum field is the quadrature transform of the position field.
int cmd_state(const ncps::RunConfig& cfg) {
  if (!cfg.theta.is_scalar() || !cfg.eta.is_scalar()) throw ncps::ArgumentError("state needs scalar theta and eta");
  if (cfg.out.empty()) throw ncps::ArgumentError("state needs --out <prefix>");
  const auto space = cfg.space(cfg.theta.min, cfg.eta.min);
  ncps::SolveOptions opts;
  opts.t_min = std::min(0.0, cfg.t);
  opts.t_max = std::max(1.0, cfg.t + 1.0);
  const ncps::ExactSolution sol(cfg.oscillator(), space, opts);
  std::vector<int> n = cfg.n.empty() ? std::vector<int>(static_cast<std::size_t>(cfg.dim), 0) : cfg.n;
  const ncps::QuantumState s = sol.state(n, cfg.t);
  const ncps::GridSpec spec = cfg.info_grids().spec(cfg.dim);
  const ncps::SampledField psi = ncps::evaluate_on_grid(s, spec);
  auto dump = [&](const ncps::SampledField& f, const std::string& tag) {
    auto csv = open_out(cfg.out + "_" + tag + ".csv");
    ncps::write_csv(csv, f);
    auto bin = open_out(cfg.out + "_" + tag + ".bin", std::ios::out | std::ios::binary);
    ncps::write_binary(bin, f);
    std::cerr << tag << ": " << f.values.size() << " nodes, norm " << f.norm
              << (f.truncation_warning ? " (truncation warning)" : "") << '\n';
  };
  if (cfg.domain != "momentum") dump(psi, "position");
  if (cfg.domain != "position")
    dump(ncps::fourier_quadrature(psi, ncps::default_axes(s, ncps::Domain::momentum, spec), s.hbar, -1), "momentum");
  return kOk;
}

int cmd_verify(const ncps::RunConfig& cfg) {
  const ncps::VerifyResult r = ncps::run_verify(cfg);
  std::unique_ptr<std::ofstream> csv;
  if (!cfg.out.empty()) csv = std::make_unique<std::ofstream>(open_out(cfg.out));
  std::size_t failed = 0, total = 0;
  for (const auto& t : r.tables) {
    ncps::print_summary(std::cout, t);
    if (csv) {
      *csv << "# " << t.title << '\n';
      ncps::write_csv(*csv, t);
    }
    for (const auto& row : t.rows) {
      ++total;
      if (!row.pass) ++failed;
    }
  }
  std::cout << (failed ? "FAIL" : "PASS") << ": " << total - failed << "/" << total << " checks passed in "
            << r.seconds << " s\n";
  return failed ? kValidationFailure : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Information measures of the noncommutative oscillator"};
  app.require_subcommand(1);
  Flags f;
  CLI::App* sweep = app.add_subcommand("sweep", "closed-form (and optional quadrature) reports over a theta/eta grid");
  CLI::App* info = app.add_subcommand("info", "single-point report as JSON");
  CLI::App* state = app.add_subcommand("state", "export sampled wavefunctions");
  CLI::App* verify = app.add_subcommand("verify", "run the oracle suite");
  for (auto* sub : {sweep, info, state, verify}) add_common(sub, f);
  state->add_option("--n", f.n, "quantum numbers, one per axis")->delimiter(',');
  state->add_option("--domain", f.domain, "position, momentum or both")
      ->check(CLI::IsMember({"position", "momentum", "both"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (sweep->parsed()) return cmd_sweep(resolve(sweep, f));
    if (info->parsed()) return cmd_info(resolve(info, f));
    if (state->parsed()) return cmd_state(resolve(state, f));
    if (verify->parsed()) return cmd_verify(resolve(verify, f));
  } catch (const ncps::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
