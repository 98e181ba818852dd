#pragma once

// Uniform tensor-product grids and complex/real fields sampled on them.
// Values are stored row-major: the last axis varies fastest.

#include <bit>
#include <charconv>
#include <complex>
#include <cstdint>
#include <cstring>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "ncps/errors.hpp"

namespace ncps {

using cplx = std::complex<double>;

enum class Domain { position, momentum };

inline const char* to_string(Domain d) { return d == Domain::position ? "position" : "momentum"; }

struct Grid1D {
  double start = 0.0;
  double spacing = 1.0;
  std::size_t points = 0;

  // `points` nodes spanning [center - half_extent, center + half_extent].
  static Grid1D centered(double center, double half_extent, std::size_t points) {
    if (points < 2) throw ArgumentError("grid needs at least 2 points per axis");
    if (!(half_extent > 0.0)) throw ArgumentError("grid extent must be > 0");
    return {center - half_extent, 2.0 * half_extent / static_cast<double>(points - 1), points};
  }

  double operator[](std::size_t i) const { return start + spacing * static_cast<double>(i); }
  double back() const { return (*this)[points - 1]; }
  double center() const { return start + 0.5 * spacing * static_cast<double>(points - 1); }
};

inline std::size_t total_points(const std::vector<Grid1D>& axes) {
  std::size_t n = 1;
  for (const auto& g : axes) n *= g.points;
  return n;
}

// Strides for row-major indexing.
inline std::vector<std::size_t> strides(const std::vector<Grid1D>& axes) {
  std::vector<std::size_t> s(axes.size(), 1);
  for (std::size_t a = axes.size(); a-- > 1;) s[a - 1] = s[a] * axes[a].points;
  return s;
}

// Trapezoid weight of node i on a 1D grid.
inline double trapezoid_weight(const Grid1D& g, std::size_t i) {
  return (i == 0 || i + 1 == g.points) ? 0.5 * g.spacing : g.spacing;
}

template <typename T>
struct Sampled {
  std::vector<Grid1D> axes;
  std::vector<T> values;
  Domain domain = Domain::position;

  std::size_t dim() const { return axes.size(); }
  std::size_t size() const { return values.size(); }
  double cell_volume() const {
    double v = 1.0;
    for (const auto& g : axes) v *= g.spacing;
    return v;
  }

  // Trapezoid-rule integral of f(value, multi-index weight-free) over the grid.
  template <typename F>
  double integrate(F&& f) const {
    const std::size_t dim = axes.size();
    std::vector<std::vector<double>> wt(dim);
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t j = 0; j < axes[a].points; ++j) wt[a].push_back(trapezoid_weight(axes[a], j));
    double sum = 0.0;
    std::vector<std::size_t> idx(dim, 0);
    for (std::size_t k = 0; k < values.size(); ++k) {
      double w = 1.0;
      for (std::size_t a = 0; a < dim; ++a) w *= wt[a][idx[a]];
      sum += w * f(values[k], idx);
      advance_index(idx);
    }
    return sum;
  }

  // Odometer step over the row-major index (last axis fastest).
  void advance_index(std::vector<std::size_t>& idx) const {
    for (std::size_t a = axes.size(); a-- > 0;) {
      if (++idx[a] < axes[a].points) return;
      idx[a] = 0;
    }
  }
};

struct SampledField : Sampled<cplx> {
  bool truncation_warning = false;  // boundary not decayed below 1e-12 of the peak
  double norm = 0.0;                // discrete L2 norm squared (trapezoid)
};

using SampledDensity = Sampled<double>;

inline double discrete_norm(const SampledField& f) {
  return f.integrate([](const cplx& v, const auto&) { return std::norm(v); });
}

inline SampledDensity density(const SampledField& f) {
  SampledDensity d;
  d.axes = f.axes;
  d.domain = f.domain;
  d.values.resize(f.values.size());
  for (std::size_t i = 0; i < f.values.size(); ++i) d.values[i] = std::norm(f.values[i]);
  return d;
}

// Largest |value| on the grid boundary relative to the largest |value|.
inline double boundary_ratio(const SampledField& f) {
  double peak = 0.0, edge = 0.0;
  std::vector<std::size_t> idx(f.axes.size(), 0);
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    const double a = std::abs(f.values[k]);
    peak = std::max(peak, a);
    bool on_edge = false;
    for (std::size_t ax = 0; ax < f.axes.size(); ++ax)
      if (idx[ax] == 0 || idx[ax] + 1 == f.axes[ax].points) on_edge = true;
    if (on_edge) edge = std::max(edge, a);
    f.advance_index(idx);
  }
  return peak > 0.0 ? edge / peak : 0.0;
}

namespace detail {
inline void put_number(std::ostream& os, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  os.write(buf, res.ptr - buf);
}
}  // namespace detail

// CSV: metadata comment lines, then one row per node with axis coordinates,
// real and imaginary parts.
inline void write_csv(std::ostream& os, const SampledField& f) {
  os << "# domain=" << to_string(f.domain) << " dim=" << f.dim() << " norm=";
  detail::put_number(os, f.norm);
  os << '\n';
  const char* sym = f.domain == Domain::position ? "x" : "p";
  for (std::size_t a = 0; a < f.dim(); ++a) os << sym << (a + 1) << ',';
  os << "re,im\n";
  const auto st = strides(f.axes);
  for (std::size_t k = 0; k < f.values.size(); ++k) {
    std::size_t rem = k;
    for (std::size_t a = 0; a < f.dim(); ++a) {
      detail::put_number(os, f.axes[a][rem / st[a]]);
      rem %= st[a];
      os << ',';
    }
    detail::put_number(os, f.values[k].real());
    os << ',';
    detail::put_number(os, f.values[k].imag());
    os << '\n';
  }
}

// Binary layout, all little-endian:
//   char[4]  magic "NCPF"
//   uint32   version (1)
//   uint32   domain (0 position, 1 momentum)
//   uint32   dim
//   per axis: uint64 points, float64 start, float64 spacing
//   float64  norm
//   values:  float64 (re, im) pairs in row-major order
namespace detail {
template <typename T>
void put_le(std::ostream& os, T v) {
  static_assert(std::endian::native == std::endian::little, "big-endian hosts are not supported");
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
template <typename T>
T get_le(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!is) throw ValidationError("binary field: unexpected end of data");
  return v;
}
}  // namespace detail

inline void write_binary(std::ostream& os, const SampledField& f) {
  os.write("NCPF", 4);
  detail::put_le<std::uint32_t>(os, 1);
  detail::put_le<std::uint32_t>(os, f.domain == Domain::position ? 0u : 1u);
  detail::put_le<std::uint32_t>(os, static_cast<std::uint32_t>(f.dim()));
  for (const auto& g : f.axes) {
    detail::put_le<std::uint64_t>(os, g.points);
    detail::put_le<double>(os, g.start);
    detail::put_le<double>(os, g.spacing);
  }
  detail::put_le<double>(os, f.norm);
  for (const auto& v : f.values) {
    detail::put_le<double>(os, v.real());
    detail::put_le<double>(os, v.imag());
  }
}

inline SampledField read_binary(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "NCPF", 4) != 0) throw ValidationError("binary field: bad magic");
  if (detail::get_le<std::uint32_t>(is) != 1) throw ValidationError("binary field: unsupported version");
  SampledField f;
  f.domain = detail::get_le<std::uint32_t>(is) == 0 ? Domain::position : Domain::momentum;
  const auto dim = detail::get_le<std::uint32_t>(is);
  if (dim < 1 || dim > 3) throw ValidationError("binary field: bad dimension");
  for (std::uint32_t a = 0; a < dim; ++a) {
    Grid1D g;
    g.points = detail::get_le<std::uint64_t>(is);
    g.start = detail::get_le<double>(is);
    g.spacing = detail::get_le<double>(is);
    f.axes.push_back(g);
  }
  f.norm = detail::get_le<double>(is);
  f.values.resize(total_points(f.axes));
  for (auto& v : f.values) {
    const double re = detail::get_le<double>(is);
    const double im = detail::get_le<double>(is);
    v = {re, im};
  }
  return f;
}

}  // namespace ncps
