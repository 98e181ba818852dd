#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "ncps/infotheory.hpp"

using namespace ncps;

namespace {

const double kLnPi = std::log(std::numbers::pi);

// Isotropic Gaussian density with per-axis variance s2, centered at c.
SampledDensity gaussian(std::size_t dim, double s2, double c, std::size_t points) {
  SampledDensity d;
  for (std::size_t a = 0; a < dim; ++a) d.axes.push_back(Grid1D::centered(c, 9.0 * std::sqrt(s2), points));
  d.values.resize(total_points(d.axes));
  const auto st = strides(d.axes);
  for (std::size_t k = 0; k < d.values.size(); ++k) {
    double v = 1.0;
    std::size_t rem = k;
    for (std::size_t a = 0; a < dim; ++a) {
      const double x = d.axes[a][rem / st[a]] - c;
      rem %= st[a];
      v *= std::exp(-x * x / (2 * s2)) / std::sqrt(2 * std::numbers::pi * s2);
    }
    d.values[k] = v;
  }
  return d;
}

InfoReport quad(const OscillatorConfig& cfg, const NCSpace& sp, double t = 0.0, SolveOptions o = {}) {
  const ExactSolution sol(cfg, sp, o);
  return info_from_state(sol.ground_state(t), sp);
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1.0); }

}  // namespace

TEST(Fisher, GaussianIdentity) {
  for (std::size_t dim : {1u, 2u, 3u}) {
    const double s2 = 0.37;
    const auto d = gaussian(dim, s2, 0.4, dim == 3 ? 128 : 200);
    const auto F = fisher_commutative(d);
    ASSERT_EQ(F.per_axis.size(), dim);
    for (double f : F.per_axis) EXPECT_NEAR(f, 1.0 / s2, 2e-6 / s2);
    EXPECT_NEAR(F.total, dim / s2, 2e-6 * dim / s2);
    EXPECT_NEAR(shannon(d), 0.5 * dim * (1.0 + std::log(2 * std::numbers::pi * s2)), 1e-10);
    const auto m = axis_moments(d);
    for (std::size_t a = 0; a < dim; ++a) {
      EXPECT_NEAR(m.mean[a], 0.4, 1e-12);
      EXPECT_NEAR(m.variance[a], s2, 1e-10);
    }
  }
}

TEST(Fisher, RejectsUnnormalizedDensity) {
  auto d = gaussian(2, 1.0, 0.0, 64);
  for (auto& v : d.values) v *= 2.0;
  EXPECT_THROW(fisher_commutative(d), ValidationError);
  EXPECT_THROW(shannon(d), ValidationError);
  d.values[3] = -1.0;
  EXPECT_THROW(shannon(d), ValidationError);
}

TEST(Fisher, GroundStateExamples) {
  const auto c = quad(OscillatorConfig{}, NCSpace(0, 0, 2));
  EXPECT_NEAR(c.F_x.total, 4.0, 1e-6);
  EXPECT_NEAR(c.F_p.total, 4.0, 1e-6);
  EXPECT_NEAR(c.S_r_nc, 1.0 + kLnPi, 1e-6);
  const auto t1 = quad(OscillatorConfig{}, NCSpace(1, 0, 2));
  EXPECT_NEAR(t1.F_x.total, 3.577709, 1e-6);
  EXPECT_NEAR(t1.F_p.total, 4.472136, 1e-6);
  EXPECT_NEAR(t1.F_r_nc, 2.981424, 1e-6);
  EXPECT_NEAR(t1.F_p_nc, 4.472136, 1e-6);
  EXPECT_NEAR(t1.S_r_nc, 2.256301, 1e-6);
}

TEST(FisherNC, Examples) {
  FisherComponents fx{{1.788854382, 1.788854382}, 3.577708764}, fp{{2.236067977, 2.236067977}, 4.472135955};
  const auto c = fisher_nc(fx, fp, NCSpace(0, 0, 2));
  EXPECT_EQ(c.F_r, fx.total);
  EXPECT_EQ(c.F_p, fp.total);
  const auto n = fisher_nc(fx, fp, NCSpace(1, 0, 2));
  EXPECT_NEAR(n.F_r, 3.577708764 / (1 + 3.577708764 / (4 * 4.472135955)), 1e-12);
  EXPECT_NEAR(n.F_r, 4.0 / std::sqrt(1.25) / 1.2, 1e-8);
  EXPECT_THROW(fisher_nc(fx, fp, NCSpace(0, 0, 3)), DimensionError);
  const auto r3 = closed_forms(OscillatorConfig{}, NCSpace(0, 0, 3));
  EXPECT_DOUBLE_EQ(r3.F_r_nc, 6.0);
  EXPECT_DOUBLE_EQ(r3.F_p_nc, 6.0);
}

TEST(ClosedForms, BbmEqualityEverywhere) {
  for (int dim : {2, 3})
    for (double th : {0.0, 0.3, 1.0, 2.0, 7.5})
      for (double et : {0.0, 0.9, 2.0, 11.0})
        for (double h : {1.0, 0.6}) {
          const auto r = closed_forms(OscillatorConfig(1.3, 0.7), NCSpace(th, et, dim, h));
          EXPECT_NEAR(r.bbm_sum, dim * (1 + kLnPi + std::log(h)), 1e-12);
        }
  EXPECT_NEAR(bbm_bound(2, 1.0), 4.289459, 1e-6);
  EXPECT_NEAR(bbm_bound(3, 1.0), 6.434189, 1e-6);
}

TEST(ClosedForms, CommutativeCornerSaturates) {
  const auto r = closed_forms(OscillatorConfig{}, NCSpace(0, 0, 2));
  EXPECT_EQ(r.F_r_nc, 4.0);
  EXPECT_EQ(r.F_p_nc, 4.0);
  EXPECT_EQ(r.var_r_nc, 1.0);
  EXPECT_EQ(r.var_p_nc, 1.0);
  EXPECT_EQ(r.cr_r, 4.0);
  EXPECT_EQ(r.cr_p, 4.0);
  EXPECT_EQ(r.provenance, Provenance::closed_form);
}

TEST(ClosedForms, DualityInNaturalUnits) {
  for (double th : {0.0, 0.4, 1.3, 2.0})
    for (double et : {0.0, 0.7, 1.9}) {
      const auto a = closed_forms(OscillatorConfig{}, NCSpace(th, et, 2));
      const auto b = closed_forms(OscillatorConfig{}, NCSpace(et, th, 2));
      EXPECT_NEAR(a.F_r_nc, b.F_p_nc, 1e-12);
      EXPECT_NEAR(a.F_p_nc, b.F_r_nc, 1e-12);
      EXPECT_NEAR(a.S_r_nc, b.S_p_nc, 1e-12);
      EXPECT_NEAR(a.S_p_nc, b.S_r_nc, 1e-12);
    }
}

TEST(ClosedForms, CramerRaoHoldsOnSweepGrid) {
  for (int dim : {2, 3})
    for (int i = 0; i <= 20; ++i)
      for (int j = 0; j <= 20; ++j) {
        const auto r = closed_forms(OscillatorConfig{}, NCSpace(0.1 * i, 0.1 * j, dim));
        EXPECT_GE(r.cr_r, dim * dim - 1e-9);
        EXPECT_GE(r.cr_p, dim * dim - 1e-9);
        // equal axis widths saturate; in 3D the out-of-plane width differs
        double inv = 0.0, var = 0.0;
        for (double v : r.var_x) {
          inv += 1.0 / v;
          var += v;
        }
        EXPECT_NEAR(r.cr_r_commutative(), inv * var, 1e-12 * inv * var);
        EXPECT_GE(r.cr_r_commutative(), dim * dim - 1e-12);
        if (dim == 2 || (i == 0 && j == 0)) {
          EXPECT_NEAR(r.cr_r_commutative(), dim * dim, 1e-12);
        }
      }
}

TEST(InfoFromState, MatchesClosedForms2D) {
  for (double th : {0.0, 0.5, 1.0})
    for (double et : {0.0, 0.5, 1.0}) {
      const NCSpace sp(th, et, 2);
      const auto q = quad(OscillatorConfig{}, sp);
      const auto c = closed_forms(OscillatorConfig{}, sp);
      EXPECT_EQ(q.provenance, Provenance::quadrature);
      for (auto [a, b] : {std::pair{q.F_r_nc, c.F_r_nc}, {q.F_p_nc, c.F_p_nc}, {q.S_r_nc, c.S_r_nc},
                          {q.S_p_nc, c.S_p_nc}, {q.var_r_nc, c.var_r_nc}, {q.var_p_nc, c.var_p_nc},
                          {q.cr_r, c.cr_r}, {q.cr_p, c.cr_p}, {q.bbm_sum, c.bbm_sum}})
        EXPECT_LT(rel(a, b), 1e-6) << th << "," << et;
    }
}

TEST(InfoFromState, GaugeAndTimeIndependent) {
  const OscillatorConfig cfg(1, 1, 1, DriveField({DriveSignal::sinusoid(0.9, 1.4), DriveSignal::constant(0.3)}));
  const NCSpace sp(0.8, 0.4, 2);
  SolveOptions other;
  other.initial[0] = {0.7, -0.2};
  other.initial[1] = {-0.4, 0.5};
  const auto a = quad(cfg, sp, 2.0);
  const auto b = quad(cfg, sp, 2.0, other);
  const auto c = quad(cfg, sp, 0.0);
  const auto d = quad(cfg, sp, 3.7);
  for (auto [x, y] : {std::pair{a.F_r_nc, b.F_r_nc}, {a.F_p_nc, b.F_p_nc}, {a.S_r_nc, b.S_r_nc}, {a.S_p_nc, b.S_p_nc},
                      {a.var_r_nc, b.var_r_nc}, {a.var_p_nc, b.var_p_nc}})
    EXPECT_NEAR(x, y, 1e-10);
  for (auto [x, y] : {std::pair{c.F_r_nc, d.F_r_nc}, {c.F_p_nc, d.F_p_nc}, {c.S_r_nc, d.S_r_nc}, {c.S_p_nc, d.S_p_nc},
                      {c.var_r_nc, d.var_r_nc}, {c.var_p_nc, d.var_p_nc}})
    EXPECT_NEAR(x, y, 1e-8);
}

TEST(InfoFromState, ExcitedStatesSatisfyBbmInequality) {
  const NCSpace sp(0.5, 0.8, 2);
  const ExactSolution sol(OscillatorConfig{}, sp);
  for (auto n : {std::vector<int>{1, 0}, std::vector<int>{2, 1}}) {
    const auto r = info_from_state(sol.state(n, 0.5), sp);
    EXPECT_GT(r.bbm_sum, bbm_bound(2, 1.0));
    EXPECT_GE(r.cr_r_commutative(), 4.0 - 1e-9);
  }
}

TEST(UncertaintyBounds, Examples) {
  const auto c = closed_forms(OscillatorConfig{}, NCSpace(0, 0, 2));
  const auto b0 = nc_uncertainty_bounds(c, NCSpace(0, 0, 2));
  EXPECT_TRUE(b0.ok());
  EXPECT_DOUBLE_EQ(b0.margin_r, b0.delta_r);
  const NCSpace s1(1, 0, 2);
  const auto b1 = nc_uncertainty_bounds(closed_forms(OscillatorConfig{}, s1), s1);
  EXPECT_NEAR(b1.delta_r, std::sqrt(2 * 0.559017 + 0.25 * 2 * 0.447214), 1e-6);
  EXPECT_NEAR(b1.delta_r, 1.158292, 1e-6);
  EXPECT_TRUE(b1.ok());
  const NCSpace big(1e3, 0.0, 2);
  const auto bb = nc_uncertainty_bounds(closed_forms(OscillatorConfig{}, big), big);
  EXPECT_GE(bb.delta_r / bb.floor_r, 1.0);
  const NCSpace bigger(1e4, 0.0, 2);
  const auto bc = nc_uncertainty_bounds(closed_forms(OscillatorConfig{}, bigger), bigger);
  EXPECT_NEAR(bb.delta_r / bb.floor_r, bc.delta_r / bc.floor_r, 1e-3);
}

TEST(Serialization, CsvRowAndJson) {
  const auto r = closed_forms(OscillatorConfig{}, NCSpace(0, 0, 2));
  std::ostringstream os;
  write_csv_row(os, r);
  EXPECT_EQ(os.str().substr(0, 14), "0,0,2,4,4,2.14");
  EXPECT_EQ(os.str().substr(os.str().size() - 13), ",closed-form\n");
  EXPECT_EQ(std::string(kReportCsvHeader),
            "theta,eta,dim,F_r_nc,F_p_nc,S_r_nc,S_p_nc,var_r_nc,var_p_nc,cr_r,cr_p,bbm_sum,provenance");
  const auto j = to_json(r);
  EXPECT_EQ(j.at("F_r_nc").get<double>(), 4.0);
  EXPECT_EQ(j.at("provenance").get<std::string>(), "closed-form");
}
