#include <cmath>

#include <gtest/gtest.h>

#include "ncps/special.hpp"

using namespace ncps;

TEST(Hermite, Examples) {
  for (double x : {-3.0, 0.0, 2.2}) EXPECT_EQ(hermite(0, x), 1.0);
  EXPECT_EQ(hermite(1, 2.5), 5.0);
  EXPECT_NEAR(hermite(4, 1.3), -23.4224, 1e-12);
  EXPECT_THROW(hermite(-1, 0.0), ArgumentError);
}

TEST(Hermite, RecurrenceMatchesExplicitPolynomials) {
  auto explicit_h = [](int n, double x) {
    switch (n) {
      case 0: return 1.0;
      case 1: return 2 * x;
      case 2: return 4 * x * x - 2;
      case 3: return 8 * x * x * x - 12 * x;
      case 4: return 16 * std::pow(x, 4) - 48 * x * x + 12;
      default: return 32 * std::pow(x, 5) - 160 * x * x * x + 120 * x;
    }
  };
  for (int n = 0; n <= 5; ++n)
    for (int k = 0; k <= 400; ++k) {
      const double x = -10.0 + 0.05 * k;
      const double ref = explicit_h(n, x);
      EXPECT_NEAR(hermite(n, x), ref, 1e-12 * std::max(1.0, std::abs(ref))) << n << " " << x;
    }
}

TEST(Hermite, NormalizationConstant) {
  EXPECT_EQ(hermite_norm(0), 1.0);
  EXPECT_NEAR(hermite_norm(1), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(hermite_norm(3), 1.0 / std::sqrt(48.0), 1e-15);
  const double ref10 = 1.0 / std::sqrt(1024.0 * 3628800.0);
  EXPECT_NEAR(hermite_norm(10), ref10, 1e-14 * ref10);
  EXPECT_GT(hermite_norm(kHermiteCap), 0.0);
}
