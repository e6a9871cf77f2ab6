#include <gtest/gtest.h>

#include <vector>

#include "netdim/rng.hpp"

using netdim::Rng;

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
}

TEST(Rng, SplitIgnoresParentConsumption) {
  Rng a(7), b(7);
  for (int i = 0; i < 10; ++i) b.next();
  Rng sa = a.split(3), sb = b.split(3);
  EXPECT_EQ(sa.next(), sb.next());
  EXPECT_NE(a.split(3).next(), a.split(4).next());
}

TEST(Rng, BelowIsUniform) {
  Rng rng(1);
  constexpr int kBins = 7, kDraws = 70000;
  std::vector<int> counts(kBins, 0);
  for (int i = 0; i < kDraws; ++i) ++counts[rng.below(kBins)];
  double chi2 = 0.0;
  const double expected = static_cast<double>(kDraws) / kBins;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 6 degrees of freedom, p = 0.001 critical value.
  EXPECT_LT(chi2, 22.46);
}

TEST(Rng, UnitInHalfOpenInterval) {
  Rng rng(9);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.unit();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 10000, 0.5, 0.02);
}
