#pragma once

// Run configuration shared by the command-line front end: parameter ranges,
// drive specs, JSON config files.
//
// Drive spec grammar (one per axis, axes numbered from 1):
//   <axis>=zero
//   <axis>=const:<E0>
//   <axis>=sin:<amplitude>,<omega>[,<phase>]
//   <axis>=ramp:<slope>[,<offset>]
//   <axis>=table:<path>      two columns (t, E) separated by comma or blanks, '#' comments

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ncps/errors.hpp"
#include "ncps/infotheory.hpp"
#include "ncps/nc_model.hpp"
#include "ncps/signal.hpp"

namespace ncps {

namespace detail {

inline double parse_double(std::string_view s, const char* what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
    throw ArgumentError(std::string(what) + ": not a number: '" + std::string(s) + "'");
  return v;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    out.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

}  // namespace detail

// Scalar value or inclusive linear range "min:max:count".
struct Range {
  double min = 0.0;
  double max = 0.0;
  int count = 1;

  static Range scalar(double v) { return {v, v, 1}; }

  static Range parse(std::string_view text) {
    const auto parts = detail::split(text, ':');
    Range r;
    if (parts.size() == 1) {
      r = scalar(detail::parse_double(parts[0], "range"));
    } else if (parts.size() == 3) {
      r.min = detail::parse_double(parts[0], "range min");
      r.max = detail::parse_double(parts[1], "range max");
      const double c = detail::parse_double(parts[2], "range count");
      if (c != std::floor(c) || c < 1 || c > 1e7) throw ArgumentError("range count must be an integer >= 1");
      r.count = static_cast<int>(c);
    } else {
      throw ArgumentError("range must be a number or min:max:count, got '" + std::string(text) + "'");
    }
    r.validate();
    return r;
  }

  void validate() const {
    if (count < 1) throw ArgumentError("range count must be >= 1");
    if (min < 0.0 || max < 0.0) throw ArgumentError("range values must be >= 0");
    if (max < min) throw ArgumentError("range max must be >= min");
    if (count == 1 && max != min) throw ArgumentError("single-point range needs min == max");
  }

  bool is_scalar() const { return count == 1; }

  // Endpoints are reproduced exactly; interior nodes are min + i*(max-min)/(count-1).
  std::vector<double> values() const {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
      v[static_cast<std::size_t>(i)] =
          i + 1 == count && count > 1 ? max : min + (max - min) * i / std::max(count - 1, 1);
    return v;
  }
};

inline std::vector<std::pair<double, double>> read_drive_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("drive table: cannot open '" + path + "'");
  std::vector<std::pair<double, double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    for (char& c : line)
      if (c == ',' || c == '\t' || c == '\r') c = ' ';
    std::istringstream ls(line);
    std::string a, b;
    if (!(ls >> a)) continue;
    if (!(ls >> b)) throw ArgumentError("drive table: expected two columns in '" + path + "'");
    rows.emplace_back(detail::parse_double(a, "drive table"), detail::parse_double(b, "drive table"));
  }
  return rows;
}

struct DriveSpec {
  int axis = 1;  // 1-based
  DriveSignal signal;
};

inline DriveSpec parse_drive_spec(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw ArgumentError("drive spec needs <axis>=<preset>: '" + std::string(text) + "'");
  const double ax = detail::parse_double(text.substr(0, eq), "drive axis");
  if (ax != 1 && ax != 2 && ax != 3) throw ArgumentError("drive axis must be 1, 2 or 3");
  std::string_view rest = text.substr(eq + 1);
  const auto colon = rest.find(':');
  const std::string_view name = rest.substr(0, colon);
  const std::string_view args = colon == std::string_view::npos ? std::string_view{} : rest.substr(colon + 1);
  std::vector<double> p;
  if (name != "table" && !args.empty())
    for (auto a : detail::split(args, ',')) p.push_back(detail::parse_double(a, "drive parameter"));

  DriveSpec d;
  d.axis = static_cast<int>(ax);
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (p.size() < lo || p.size() > hi)
      throw ArgumentError("drive preset '" + std::string(name) + "': wrong number of parameters");
  };
  if (name == "zero") {
    need(0, 0);
    d.signal = DriveSignal::zero();
  } else if (name == "const") {
    need(1, 1);
    d.signal = DriveSignal::constant(p[0]);
  } else if (name == "sin") {
    need(2, 3);
    d.signal = DriveSignal::sinusoid(p[0], p[1], p.size() > 2 ? p[2] : 0.0);
  } else if (name == "ramp") {
    need(1, 2);
    d.signal = DriveSignal::ramp(p[0], p.size() > 1 ? p[1] : 0.0);
  } else if (name == "table") {
    if (args.empty()) throw ArgumentError("drive preset 'table' needs a file path");
    std::vector<double> ts, vs;
    for (const auto& [t, v] : read_drive_table(std::string(args))) {
      ts.push_back(t);
      vs.push_back(v);
    }
    d.signal = DriveSignal::table(std::move(ts), std::move(vs));
  } else {
    throw ArgumentError("unknown drive preset '" + std::string(name) + "'");
  }
  return d;
}

struct RunConfig {
  int dim = 2;
  Range theta;
  Range eta;
  double mass = 1.0;
  double omega0 = 1.0;
  double charge = 1.0;
  double hbar = 1.0;
  std::vector<std::string> drive;  // raw specs, see the grammar above
  double t = 0.0;
  std::optional<std::size_t> grid_points;
  std::optional<double> grid_sigmas;
  bool quadrature = false;
  std::string out;
  double perturb_phase = 0.0;
  std::vector<int> n;            // quantum numbers for `state`
  std::string domain = "both";   // position | momentum | both
  unsigned threads = 0;          // 0: hardware concurrency

  void validate() const {
    if (dim != 2 && dim != 3) throw ArgumentError("dim must be 2 or 3");
    theta.validate();
    eta.validate();
    for (double v : {mass, omega0, hbar})
      if (!(v > 0.0) || !std::isfinite(v)) throw ArgumentError("m, omega0 and hbar must be finite and > 0");
    if (!std::isfinite(charge)) throw ArgumentError("q must be finite");
    if (!std::isfinite(t)) throw ArgumentError("t must be finite");
    if (grid_points && *grid_points < 8) throw ArgumentError("grid points must be >= 8");
    if (grid_sigmas && !(*grid_sigmas > 0.0)) throw ArgumentError("grid sigmas must be > 0");
    if (domain != "position" && domain != "momentum" && domain != "both")
      throw ArgumentError("domain must be position, momentum or both");
    for (int k : n)
      if (k < 0 || k > kHermiteCap) throw ArgumentError("quantum numbers must lie in [0, " + std::to_string(kHermiteCap) + "]");
    if (!n.empty() && static_cast<int>(n.size()) != dim) throw ArgumentError("need one quantum number per axis");
  }

  DriveField drive_field() const {
    std::vector<DriveSignal> comps(static_cast<std::size_t>(dim));
    for (const auto& s : drive) {
      DriveSpec d = parse_drive_spec(s);
      if (d.axis > dim) throw DimensionError("drive axis " + std::to_string(d.axis) + " exceeds dim");
      comps[static_cast<std::size_t>(d.axis - 1)] = std::move(d.signal);
    }
    return DriveField(std::move(comps));
  }

  OscillatorConfig oscillator() const { return OscillatorConfig(mass, omega0, charge, drive_field()); }

  NCSpace space(double th, double et) const { return NCSpace(th, et, dim, hbar); }

  InfoGrids info_grids() const {
    InfoGrids g;
    if (grid_points) g.points_2d = g.points_3d = *grid_points;
    if (grid_sigmas) g.sigmas = *grid_sigmas;
    return g;
  }
};

namespace detail {
inline Range range_from_json(const nlohmann::json& j, const char* key) {
  if (j.is_number()) {
    Range r = Range::scalar(j.get<double>());
    r.validate();
    return r;
  }
  if (j.is_string()) return Range::parse(j.get<std::string>());
  if (j.is_object()) {
    Range r{j.at("min").get<double>(), j.at("max").get<double>(), j.at("count").get<int>()};
    r.validate();
    return r;
  }
  throw ArgumentError(std::string("config: bad value for '") + key + "'");
}
}  // namespace detail

// Merges a JSON object into `cfg`. Keys mirror the long flag names with
// '-' replaced by '_'. Unknown keys are rejected.
inline void apply_json(RunConfig& cfg, const nlohmann::json& j) {
  if (!j.is_object()) throw ArgumentError("config: top level must be an object");
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "dim") cfg.dim = v.get<int>();
      else if (key == "theta") cfg.theta = detail::range_from_json(v, "theta");
      else if (key == "eta") cfg.eta = detail::range_from_json(v, "eta");
      else if (key == "m") cfg.mass = v.get<double>();
      else if (key == "omega0") cfg.omega0 = v.get<double>();
      else if (key == "q") cfg.charge = v.get<double>();
      else if (key == "hbar") cfg.hbar = v.get<double>();
      else if (key == "drive") cfg.drive = v.is_string() ? std::vector<std::string>{v.get<std::string>()}
                                                          : v.get<std::vector<std::string>>();
      else if (key == "t") cfg.t = v.get<double>();
      else if (key == "grid_points") cfg.grid_points = v.get<std::size_t>();
      else if (key == "grid_sigmas") cfg.grid_sigmas = v.get<double>();
      else if (key == "quadrature") cfg.quadrature = v.get<bool>();
      else if (key == "out") cfg.out = v.get<std::string>();
      else if (key == "perturb_phase") cfg.perturb_phase = v.get<double>();
      else if (key == "n") cfg.n = v.get<std::vector<int>>();
      else if (key == "domain") cfg.domain = v.get<std::string>();
      else if (key == "threads") cfg.threads = v.get<unsigned>();
      else throw ArgumentError("config: unknown key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("config: ") + e.what());
  }
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("config: cannot open '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ArgumentError(std::string("config: ") + e.what());
  }
  RunConfig cfg;
  apply_json(cfg, j);
  return cfg;
}

}  // namespace ncps
