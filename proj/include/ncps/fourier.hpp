#pragma once

// Position <-> momentum transforms with the symmetric convention
//
//   Xi(p) = (2 pi hbar)^(-D/2) \int psi(r) exp(-i p.r / hbar) d^D r.
//
// Two routes are provided:
//  * momentum_numeric: FFT on the reciprocal grid dp = 2 pi hbar / (N dx),
//    with the phase correction for grids that do not start at the origin.
//  * fourier_quadrature: trapezoid quadrature of the integral onto an
//    arbitrary uniform output grid (dense per-axis kernels, Eigen GEMM).

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "ncps/errors.hpp"
#include "ncps/grid.hpp"

namespace ncps {

namespace detail {

using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Applies out[.., k, ..] = sum_j K(k, j) in[.., j, ..] along `axis`.
inline std::vector<cplx> apply_along_axis(const std::vector<cplx>& in, const std::vector<Grid1D>& axes,
                                          std::size_t axis, const RowMat& K) {
  std::size_t outer = 1, inner = 1;
  for (std::size_t a = 0; a < axis; ++a) outer *= axes[a].points;
  for (std::size_t a = axis + 1; a < axes.size(); ++a) inner *= axes[a].points;
  const auto n_in = static_cast<Eigen::Index>(axes[axis].points);
  const auto n_out = K.rows();
  std::vector<cplx> out(outer * static_cast<std::size_t>(n_out) * inner);
  if (inner == 1) {
    // last axis: one GEMM instead of `outer` matrix-vector products
    Eigen::Map<const RowMat> src(in.data(), static_cast<Eigen::Index>(outer), n_in);
    Eigen::Map<RowMat> dst(out.data(), static_cast<Eigen::Index>(outer), n_out);
    dst.noalias() = src * K.transpose();
    return out;
  }
  for (std::size_t o = 0; o < outer; ++o) {
    Eigen::Map<const RowMat> src(in.data() + o * static_cast<std::size_t>(n_in) * inner, n_in,
                                 static_cast<Eigen::Index>(inner));
    Eigen::Map<RowMat> dst(out.data() + o * static_cast<std::size_t>(n_out) * inner, n_out,
                           static_cast<Eigen::Index>(inner));
    dst.noalias() = K * src;
  }
  return out;
}

}  // namespace detail

// Trapezoid quadrature of the transform onto `out_axes`. `sign` = -1 maps
// position to momentum, +1 is the inverse kernel.
inline SampledField fourier_quadrature(const SampledField& in, const std::vector<Grid1D>& out_axes, double hbar,
                                       int sign = -1) {
  if (out_axes.size() != in.axes.size()) throw DimensionError("fourier_quadrature: axis count mismatch");
  if (!(hbar > 0.0)) throw ArgumentError("fourier_quadrature: hbar must be > 0");
  const double pref = 1.0 / std::sqrt(2.0 * std::numbers::pi * hbar);
  std::vector<cplx> data = in.values;
  std::vector<Grid1D> cur = in.axes;
  for (std::size_t a = 0; a < in.axes.size(); ++a) {
    const Grid1D& gi = in.axes[a];
    const Grid1D& go = out_axes[a];
    detail::RowMat K(static_cast<Eigen::Index>(go.points), static_cast<Eigen::Index>(gi.points));
    for (std::size_t k = 0; k < go.points; ++k) {
      for (std::size_t j = 0; j < gi.points; ++j) {
        const double arg = sign * go[k] * gi[j] / hbar;
        K(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) =
            pref * trapezoid_weight(gi, j) * cplx(std::cos(arg), std::sin(arg));
      }
    }
    data = detail::apply_along_axis(data, cur, a, K);
    cur[a] = go;
  }
  SampledField out;
  out.axes = out_axes;
  out.values = std::move(data);
  out.domain = in.domain == Domain::position ? Domain::momentum : Domain::position;
  out.norm = discrete_norm(out);
  return out;
}

// Reciprocal grid of the FFT: spacing 2 pi hbar / (N dx), node floor(N/2) at 0.
inline Grid1D reciprocal_grid(const Grid1D& g, double hbar) {
  const double dp = 2.0 * std::numbers::pi * hbar / (static_cast<double>(g.points) * g.spacing);
  return {-static_cast<double>(g.points / 2) * dp, dp, g.points};
}

// Discrete transform on the reciprocal grid via FFT (rectangle rule, so
// Parseval holds to rounding). `out_start` overrides the first output node
// per axis; the output spacing is always the reciprocal one. The truncation
// flag is set when the input density at the boundary exceeds 1e-12 of its peak.
inline SampledField fourier_fft(const SampledField& in, double hbar, int sign,
                                const std::optional<std::vector<double>>& out_start = std::nullopt) {
  if (!(hbar > 0.0)) throw ArgumentError("fourier_fft: hbar must be > 0");
  if (out_start && out_start->size() != in.axes.size()) throw DimensionError("fourier_fft: out_start size");
  const double pi = std::numbers::pi;
  std::vector<cplx> data = in.values;
  std::vector<Grid1D> out_axes(in.axes.size());
  const auto st = strides(in.axes);
  Eigen::FFT<double> fft;
  for (std::size_t a = 0; a < in.axes.size(); ++a) {
    const Grid1D& gx = in.axes[a];
    Grid1D gp = reciprocal_grid(gx, hbar);
    if (out_start) gp.start = (*out_start)[a];
    out_axes[a] = gp;
    const std::size_t n = gx.points;
    const double x0 = gx.start, dx = gx.spacing, p0 = gp.start, dp = gp.spacing;
    const double s = static_cast<double>(sign);
    std::vector<cplx> pre(n), post(n);
    for (std::size_t j = 0; j < n; ++j) pre[j] = std::polar(1.0, s * p0 * dx * static_cast<double>(j) / hbar);
    const double scale = dx / std::sqrt(2.0 * pi * hbar);
    for (std::size_t k = 0; k < n; ++k)
      post[k] = scale * std::polar(1.0, s * (p0 + dp * static_cast<double>(k)) * x0 / hbar);

    std::vector<cplx> line(n), spec(n);
    const std::size_t stride = st[a];
    const std::size_t lines = data.size() / n;
    for (std::size_t l = 0; l < lines; ++l) {
      const std::size_t base = (l / stride) * stride * n + (l % stride);
      for (std::size_t j = 0; j < n; ++j) {
        cplx v = data[base + j * stride] * pre[j];
        line[j] = sign < 0 ? v : std::conj(v);
      }
      fft.fwd(spec, line);
      for (std::size_t k = 0; k < n; ++k) {
        cplx v = sign < 0 ? spec[k] : std::conj(spec[k]);
        data[base + k * stride] = v * post[k];
      }
    }
  }
  SampledField out;
  out.axes = std::move(out_axes);
  out.values = std::move(data);
  out.domain = in.domain == Domain::position ? Domain::momentum : Domain::position;
  const double r = boundary_ratio(in);
  out.truncation_warning = r * r > 1e-12;
  out.norm = out.cell_volume() *
             std::accumulate(out.values.begin(), out.values.end(), 0.0,
                             [](double acc, const cplx& v) { return acc + std::norm(v); });
  return out;
}

// Position-domain field to momentum domain on the reciprocal grid.
inline SampledField momentum_numeric(const SampledField& position, double hbar) {
  if (position.domain != Domain::position) throw ArgumentError("momentum_numeric: input must be a position field");
  return fourier_fft(position, hbar, -1);
}

// d/dx of periodic samples by FFT; the Nyquist mode is dropped for even n.
inline std::vector<cplx> spectral_derivative(const std::vector<cplx>& f, double spacing) {
  const std::size_t n = f.size();
  Eigen::FFT<double> fft;
  std::vector<cplx> spec, out;
  fft.fwd(spec, f);
  const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * spacing);
  for (std::size_t j = 0; j < n; ++j) {
    const auto m = static_cast<double>(j < (n + 1) / 2 ? static_cast<long>(j) : static_cast<long>(j) - static_cast<long>(n));
    if (n % 2 == 0 && j == n / 2) spec[j] = 0.0;
    else spec[j] *= cplx(0.0, m * dk);
  }
  fft.inv(out, spec);
  return out;
}

}  // namespace ncps
