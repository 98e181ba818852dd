#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "ncps/sweep.hpp"

using namespace ncps;

TEST(Sweep, ThetaMajorOrderAndRowCount) {
  RunConfig c;
  c.theta = Range::parse("0:2:5");
  c.eta = Range::parse("0:1:3");
  const auto rows = run_sweep(c);
  ASSERT_EQ(rows.size(), 15u);
  EXPECT_EQ(rows[0].closed.theta, 0.0);
  EXPECT_EQ(rows[1].closed.eta, 0.5);
  EXPECT_EQ(rows[3].closed.theta, 0.5);
  EXPECT_EQ(rows[14].closed.theta, 2.0);
  EXPECT_EQ(rows[14].closed.eta, 1.0);
}

TEST(Sweep, CsvIndependentOfThreadCount) {
  RunConfig c;
  c.theta = Range::parse("0:2:21");
  c.eta = Range::parse("0:2:21");
  std::string out[3];
  unsigned threads[3] = {1, 3, 8};
  for (int k = 0; k < 3; ++k) {
    c.threads = threads[k];
    std::ostringstream os;
    write_sweep_csv(os, run_sweep(c));
    out[k] = os.str();
  }
  EXPECT_EQ(out[0], out[1]);
  EXPECT_EQ(out[0], out[2]);
}

TEST(Sweep, FullGridBbmAndCorner) {
  for (int dim : {2, 3}) {
    RunConfig c;
    c.dim = dim;
    c.theta = Range::parse("0:2:41");
    c.eta = Range::parse("0:2:41");
    const auto rows = run_sweep(c);
    ASSERT_EQ(rows.size(), 1681u);
    for (const auto& r : rows) EXPECT_NEAR(r.closed.bbm_sum, dim * (1 + std::log(std::numbers::pi)), 1e-12);
    EXPECT_EQ(rows[0].closed.F_r_nc, 2.0 * dim);
  }
}

TEST(Sweep, QuadratureRowsFollowClosedRows) {
  RunConfig c;
  c.theta = Range::parse("0:1:2");
  c.quadrature = true;
  std::ostringstream os;
  write_sweep_csv(os, run_sweep(c));
  std::istringstream is(os.str());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(is, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 5u);
  EXPECT_NE(lines[1].find("closed-form"), std::string::npos);
  EXPECT_NE(lines[2].find("quadrature"), std::string::npos);
}

TEST(ParallelFor, PropagatesErrors) {
  EXPECT_THROW(parallel_for(10, 4, [](std::size_t i) {
                 if (i == 7) throw ValidationError("boom");
               }),
               ValidationError);
  std::vector<int> hit(100, 0);
  parallel_for(100, 4, [&](std::size_t i) { hit[i] = 1; });
  for (int h : hit) EXPECT_EQ(h, 1);
}
