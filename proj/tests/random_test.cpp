#include <cmath>
#include <cstdint>
#include <set>

#include <gtest/gtest.h>

#include "hpmsim/random.hpp"

using hpmsim::rng::Philox4x32;
using hpmsim::rng::Stream;

// Known-answer vectors from the Random123 distribution (kat_vectors).
TEST(Philox, KnownAnswerZero) {
  const auto out = Philox4x32::block({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(out, (Philox4x32::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u}));
}

TEST(Philox, KnownAnswerOnes) {
  const auto out = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(out, (Philox4x32::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu}));
}

TEST(Philox, KnownAnswerPi) {
  const auto out =
      Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(out, (Philox4x32::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u}));
}

TEST(Stream, ReproducibleAndIndependent) {
  Stream a(42, 7);
  Stream b(42, 7);
  Stream c(42, 8);
  Stream d(43, 7);
  int same_c = 0;
  int same_d = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    same_c += x == c.next_u64();
    same_d += x == d.next_u64();
  }
  EXPECT_EQ(same_c, 0);
  EXPECT_EQ(same_d, 0);
  EXPECT_EQ(a.blocks_consumed(), 500u);
}

TEST(Stream, UniformOpenInterval) {
  Stream s(1, 0);
  double sum = 0.0;
  constexpr int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / n));
  for (int i = 0; i < 1000; ++i) {
    const double v = s.uniform(0.05, 0.25);
    ASSERT_GE(v, 0.05);
    ASSERT_LE(v, 0.25);
  }
}

TEST(Stream, NormalMoments) {
  Stream s(99, 3);
  constexpr int n = 200000;
  double sum = 0.0;
  double sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = s.normal(2.0, 3.0);
    sum += z;
    sq += z * z;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  EXPECT_NEAR(mean, 2.0, 5.0 * 3.0 / std::sqrt(n));
  EXPECT_NEAR(var, 9.0, 9.0 * 5.0 * std::sqrt(2.0 / n));
}

TEST(Stream, NormalConsumesTwoUniforms) {
  Stream s(5, 5);
  (void)s.normal(0.0, 1.0);
  EXPECT_EQ(s.blocks_consumed(), 1u);
  (void)s.normal(0.0, 1.0);
  EXPECT_EQ(s.blocks_consumed(), 2u);
}

TEST(Stream, RayleighMean) {
  Stream s(11, 0);
  constexpr int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = s.rayleigh(1.0);
    ASSERT_GE(r, 0.0);
    sum += r;
  }
  // E = sigma sqrt(pi/2), sd = sigma sqrt((4 - pi)/2).
  EXPECT_NEAR(sum / n, std::sqrt(M_PI / 2.0), 5.0 * std::sqrt((4.0 - M_PI) / 2.0 / n));
}

TEST(Stream, DistinctSeedsGiveDistinctFirstWords) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) seen.insert(Stream(seed, 0).next_u64());
  EXPECT_EQ(seen.size(), 2000u);
}
