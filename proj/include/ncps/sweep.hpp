#pragma once

// Cartesian (theta, eta) sweeps of the information report. Points are
// evaluated on a small worker pool; rows are buffered and emitted in
// theta-major order, so the output does not depend on scheduling.

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ncps/config.hpp"
#include "ncps/infotheory.hpp"
#include "ncps/wavefunctions.hpp"

namespace ncps {

struct SweepPoint {
  double theta = 0.0;
  double eta = 0.0;
};

inline std::vector<SweepPoint> sweep_points(const RunConfig& cfg) {
  std::vector<SweepPoint> pts;
  for (double th : cfg.theta.values())
    for (double et : cfg.eta.values()) pts.push_back({th, et});
  return pts;
}

// Runs fn(i) for i in [0, count) on `threads` workers (0: hardware
// concurrency). The first exception is rethrown after all workers stop.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

struct SweepRow {
  InfoReport closed;
  std::optional<InfoReport> quadrature;
};

inline std::vector<SweepRow> run_sweep(const RunConfig& cfg) {
  cfg.validate();
  const OscillatorConfig osc = cfg.oscillator();
  const auto pts = sweep_points(cfg);
  std::vector<SweepRow> rows(pts.size());
  parallel_for(pts.size(), cfg.threads, [&](std::size_t i) {
    const NCSpace space = cfg.space(pts[i].theta, pts[i].eta);
    rows[i].closed = closed_forms(osc, space);
    if (cfg.quadrature) {
      SolveOptions opts;
      opts.t_max = std::max(1.0, cfg.t + 1.0);
      opts.t_min = std::min(0.0, cfg.t);
      const ExactSolution sol(osc, space, opts);
      rows[i].quadrature = info_from_state(sol.ground_state(cfg.t), space, cfg.info_grids());
    }
  });
  return rows;
}

// CSV with the documented header; with quadrature enabled each point gets a
// closed-form row followed by a quadrature row.
inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kReportCsvHeader << '\n';
  for (const auto& r : rows) {
    write_csv_row(os, r.closed);
    if (r.quadrature) write_csv_row(os, *r.quadrature);
  }
}

}  // namespace ncps
