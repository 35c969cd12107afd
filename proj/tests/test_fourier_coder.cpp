#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fsc/errors.hpp"
#include "fsc/fourier_coder.hpp"
#include "oracles.hpp"

namespace fsc {
namespace {

const AngleDefinition kLe90 = AngleDefinition::le90();

CoderSpec spec_n(int n) {
  CoderSpec s;
  s.n_freq = n;
  return s;
}

std::vector<double> enc(double theta, int n) { return encode(OrientedAngle(theta, kLe90), spec_n(n)).components; }

TEST(CoderSpec, ChannelLayout) {
  CoderSpec s = spec_n(3);
  EXPECT_EQ(s.channel_count(), 7);
  EXPECT_EQ(s.cos_index(1), 1);
  EXPECT_EQ(s.sin_index(3), 6);
  s.include_dc = false;
  EXPECT_EQ(s.channel_count(), 6);
  EXPECT_EQ(s.cos_index(1), 0);
  EXPECT_THROW(spec_n(0).validate(), InvalidInput);
  CoderSpec bad_omega;
  bad_omega.omega = 0;
  EXPECT_THROW(bad_omega.validate(), InvalidInput);
}

TEST(Encode, Examples) {
  const auto a = enc(0.0, 1);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_DOUBLE_EQ(a[0], 0.0);
  EXPECT_DOUBLE_EQ(a[1], 1.0);
  EXPECT_DOUBLE_EQ(a[2], 0.0);

  const auto b = enc(kPi / 4, 2);
  const std::vector<double> want_b{0, 0, 1, -1, 0};
  for (size_t i = 0; i < 5; ++i) EXPECT_NEAR(b[i], want_b[i], 1e-15) << i;

  // Frozen from a 30-digit evaluation of cos/sin at gamma = pi/4 and pi/2.
  const auto c = enc(kPi / 8, 2);
  const std::vector<double> want_c{0, 0.707106781186547524400844362105, 0.707106781186547524400844362105, 0, 1};
  for (size_t i = 0; i < 5; ++i) EXPECT_NEAR(c[i], want_c[i], 1e-15) << i;
}

TEST(DcTarget, IsZero) {
  for (int n : {1, 2, 4}) EXPECT_EQ(dc_target(spec_n(n)), 0.0);
}

TEST(DecodeSingle, Examples) {
  EXPECT_DOUBLE_EQ(decode_single(1, 0, 1, 2), 0.0);
  EXPECT_DOUBLE_EQ(decode_single(0, 1, 1, 2), kPi / 4);
  // atan2(-1, -1) = -3pi/4, divided by k * omega = 4.
  EXPECT_NEAR(decode_single(-0.70711, -0.70711, 2, 2), -0.589048622548086232211745634365, 1e-15);
  EXPECT_THROW(decode_single(0, 0, 1, 2), DegenerateModulus);
}

TEST(DecodeSingle, RangeIsHalfOpenInterval) {
  // atan2 covers (-pi, pi]; the upper end is attained on the negative real axis.
  EXPECT_DOUBLE_EQ(decode_single(-1, 0, 1, 2), kPi / 2);
}

TEST(Decode, Examples) {
  EXPECT_NEAR(decode(enc(0.3, 2), spec_n(2)).theta_pred.value(), 0.3, 1e-12);
  const auto edge = decode(enc(-kPi / 2, 2), spec_n(2));
  EXPECT_LT(angular_distance(edge.theta_pred.value(), -kPi / 2, kPi), 1e-12);

  // 1.2 rad lies above pi/4, so the fine estimate alone lands half a period off.
  const auto r = decode(enc(1.2, 2), spec_n(2));
  EXPECT_TRUE(r.branch_corrected);
  EXPECT_NEAR(r.theta_pred.value(), 1.2, 1e-12);
  ASSERT_EQ(r.gamma_estimates.size(), 2u);
  EXPECT_NEAR(r.gamma_estimates[1], 0.5 * std::atan2(std::sin(4.8), std::cos(4.8)), 1e-15);
}

TEST(Decode, Errors) {
  EXPECT_THROW(decode(std::vector<double>{0, 1, 0}, spec_n(2)), InvalidInput);
  EXPECT_THROW(decode(std::vector<double>{0, 1, 0, 0, 0}, spec_n(2)), DegenerateModulus);
  EXPECT_THROW(decode(std::vector<double>{0, 0, 0}, spec_n(1)), DegenerateModulus);
  CoderSpec s = spec_n(2);
  s.modulus_floor = 0.5;
  EXPECT_THROW(decode(std::vector<double>{0, 1, 0, 0.3, 0}, s), DegenerateModulus);
}

TEST(Decode, DcChannelIgnored) {
  auto raw = enc(0.7, 2);
  const double base = decode(raw, spec_n(2)).theta_pred.value();
  raw[0] = 123.0;
  EXPECT_DOUBLE_EQ(decode(raw, spec_n(2)).theta_pred.value(), base);
}

TEST(Decode, HigherHarmonicsIgnored) {
  auto raw = enc(0.7, 4);
  const double base = decode(raw, spec_n(4)).theta_pred.value();
  for (int i = 5; i < 9; ++i) raw[i] = -0.9;
  EXPECT_DOUBLE_EQ(decode(raw, spec_n(4)).theta_pred.value(), base);
}

TEST(Decode, PropertyRoundTripCentidegreeGrid) {
  for (int n : {1, 2, 4}) {
    double worst = 0.0;
    for (double theta : oracle::centidegree_grid()) {
      const double got = decode(enc(theta, n), spec_n(n)).theta_pred.value();
      worst = std::max(worst, oracle::distance(got, theta, kPi));
    }
    EXPECT_LT(worst, 1e-9) << "N=" << n;
  }
}

TEST(Decode, PropertyRoundTripWithoutDc) {
  CoderSpec s = spec_n(2);
  s.include_dc = false;
  for (double theta : oracle::centidegree_grid()) {
    const auto e = encode(OrientedAngle(theta, kLe90), s).components;
    ASSERT_EQ(e.size(), 4u);
    ASSERT_LT(angular_distance(decode(e, s).theta_pred.value(), theta, kPi), 1e-9);
  }
}

TEST(Decode, PropertyScaleInvariance) {
  oracle::Gen gen(21);
  for (int i = 0; i < 5000; ++i) {
    std::vector<double> raw(5);
    for (double& v : raw) v = gen.uniform(-1, 1);
    const double lambda = std::exp(gen.uniform(-6, 6));
    std::vector<double> scaled(raw);
    for (double& v : scaled) v *= lambda;
    const double a = decode(raw, spec_n(2)).theta_pred.value();
    const double b = decode(scaled, spec_n(2)).theta_pred.value();
    ASSERT_LT(angular_distance(a, b, kPi), 1e-12);
  }
}

TEST(Decode, BoundaryContinuity) {
  const double delta = 1e-4;
  for (int n : {1, 2, 4}) {
    const auto lo = enc(-kPi / 2 + delta, n);
    const auto hi = enc(kPi / 2 - delta, n);
    double inf_norm = 0.0;
    for (size_t i = 0; i < lo.size(); ++i) inf_norm = std::max(inf_norm, std::abs(lo[i] - hi[i]));
    EXPECT_LE(inf_norm, 2.0 * n * 2 * delta) << "N=" << n;
  }
}

TEST(Decode, BranchMatchesBruteForceOracle) {
  // Exhaustive 1e-4 rad sweep. The oracle picks whichever of the two
  // candidates (fine estimate alone, or shifted by half a period) is nearer
  // the ground truth.
  int fired = 0;
  for (double theta = -kPi / 2; theta < kPi / 2; theta += 1e-4) {
    const auto raw = enc(theta, 2);
    const auto r = decode(raw, spec_n(2));
    const double fine = 0.5 * std::atan2(raw[4], raw[3]);
    const double plain = oracle::distance(fine / 2, theta, kPi);
    const double shifted = oracle::distance(fine / 2 + kPi / 2, theta, kPi);
    if (std::abs(plain - shifted) < 1e-9) continue;  // both equally good
    ASSERT_EQ(r.branch_corrected, shifted < plain) << theta;
    fired += r.branch_corrected;
  }
  EXPECT_GT(fired, 0);
}

TEST(PerFrequencyModulus, Examples) {
  for (double theta : {-1.3, 0.0, 0.4, 1.5}) {
    for (double m : per_frequency_modulus(enc(theta, 4), spec_n(4))) {
      EXPECT_NEAR(m, 1.0, 1e-15);
    }
  }
  auto half = enc(0.9, 2);
  for (double& v : half) v *= 0.5;
  const auto hm = per_frequency_modulus(half, spec_n(2));
  EXPECT_NEAR(hm[0], 0.5, 1e-15);
  EXPECT_NEAR(hm[1], 0.5, 1e-15);

  const auto m = per_frequency_modulus(std::vector<double>{0, 0.6, 0.8, 0.3, -0.4}, spec_n(2));
  EXPECT_NEAR(m[0], 1.0, 1e-15);
  EXPECT_NEAR(m[1], 0.5, 1e-15);
  EXPECT_THROW(per_frequency_modulus(std::vector<double>{0, 1}, spec_n(2)), InvalidInput);
}

TEST(PerFrequencyModulus, PropertyCleanEncodingOnManifold) {
  oracle::Gen gen(22);
  for (int i = 0; i < 5000; ++i) {
    const double theta = gen.uniform(-kPi / 2, kPi / 2);
    for (double m : per_frequency_modulus(enc(theta, 4), spec_n(4))) {
      ASSERT_NEAR(m, 1.0, 4 * std::numeric_limits<double>::epsilon());
    }
  }
}

}  // namespace
}  // namespace fsc
