#include <gtest/gtest.h>

#include "eqdelta/eqdelta.hpp"

using namespace eqdelta;

TEST(ContFrac, EvaluatesNegativeContinuedFractions) {
  EXPECT_EQ(eval_ncf(ncf({3, 2})).value, rat(5, 2));
  EXPECT_EQ(eval_ncf(ncf({2, 2, 2})).value, rat(4, 3));
  EXPECT_EQ(eval_ncf(ncf({-2})).value, Rat(-2));
}

TEST(ContFrac, InfiniteValues) {
  EXPECT_TRUE(eval_ncf({}).infinite);
  EXPECT_TRUE(eval_ncf(ncf({1, 0})).infinite);
  EXPECT_EQ(eval_ncf(ncf({5, 1, 0})).value, Rat(5));
}

TEST(ContFrac, StandardExpansionRoundTrips) {
  for (long long p = -40; p <= 40; ++p)
    for (long long q = 1; q <= 40; ++q) {
      if (p == 0 || gcd(Int(p), Int(q)) != 1) continue;
      Ncf e = expand_standard(Slope(p, q));
      NcfValue v = eval_ncf(e);
      ASSERT_FALSE(v.infinite);
      EXPECT_EQ(v.value, rat(p, q));
      for (std::size_t k = 1; k < e.size(); ++k) EXPECT_GE(e[k], 2) << p << "/" << q;
    }
}

TEST(ContFrac, EvenExpansionKnownValues) {
  EXPECT_EQ(expand_even(Slope(2, 1)), ncf({2}));
  EXPECT_EQ(expand_even(Slope(4, 3)), ncf({2, 2, 2}));
  Ncf e = expand_even(Slope(-7, 2));
  EXPECT_EQ(eval_ncf(e).value, rat(-7, 2));
}

TEST(ContFrac, BothOddIsRejected) {
  try {
    expand_even(Slope(3, 5));
    FAIL() << "expected BothOdd";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "BothOdd");
  }
}

TEST(ContFrac, ZeroDenominator) { EXPECT_THROW(Slope(1, 0), Error); }
