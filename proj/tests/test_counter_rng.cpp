#include <gtest/gtest.h>

#include <cmath>

#include "fsc/counter_rng.hpp"

namespace fsc {
namespace {

// Known-answer vectors published with Random123 (kat_vectors, philox4x32 10).
TEST(Philox4x32, KnownAnswers) {
  using C = Philox4x32::Counter;
  using K = Philox4x32::Key;
  EXPECT_EQ(Philox4x32::block(C{0, 0, 0, 0}, K{0, 0}), (C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(Philox4x32::block(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}),
            (C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(Philox4x32::block(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}),
            (C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(KeyedGaussian, DeterministicAndKeyed) {
  EXPECT_EQ(keyed_gaussian(7, 123, 4), keyed_gaussian(7, 123, 4));
  EXPECT_NE(keyed_gaussian(7, 123, 4), keyed_gaussian(8, 123, 4));
  EXPECT_NE(keyed_gaussian(7, 123, 4), keyed_gaussian(7, 124, 4));
  EXPECT_NE(keyed_gaussian(7, 123, 4), keyed_gaussian(7, 123, 5));
}

TEST(KeyedGaussian, Moments) {
  const int n = 200000;
  double sum = 0, sum2 = 0, sum4 = 0;
  for (int t = 0; t < n / 4; ++t) {
    for (int c = 0; c < 4; ++c) {
      const double z = keyed_gaussian(99, t, c);
      sum += z;
      sum2 += z * z;
      sum4 += z * z * z * z;
    }
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(sum2 / n, 1.0, 0.015);
  EXPECT_NEAR(sum4 / n, 3.0, 0.1);
}

TEST(KeyedUniform, RangeAndMean) {
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = keyed_uniform(3, i, i % 5);
    ASSERT_GT(u, 0.0);
    ASSERT_LE(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.005);
  EXPECT_EQ(unit_interval(0), 0x1.0p-53);
  EXPECT_EQ(unit_interval(~std::uint64_t{0}), 1.0);
}

}  // namespace
}  // namespace fsc
