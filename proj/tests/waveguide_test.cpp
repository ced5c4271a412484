#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "hpmsim/waveguide.hpp"

using namespace hpmsim::waveguide;

namespace {
const WaveguideSpec kWr340{};
}

TEST(Cutoff, Wr340) {
  EXPECT_NEAR(cutoff_frequency(kWr340, ModeFamily::te, 1, 0), 1.736e9, 1e6);
  EXPECT_DOUBLE_EQ(te10_cutoff(kWr340), 2.998e8 / (2 * 0.08636));
  EXPECT_NEAR(cutoff_frequency(kWr340, ModeFamily::te, 2, 0), 3.471e9, 1e6);
  EXPECT_NEAR(cutoff_frequency(kWr340, ModeFamily::te, 0, 1), 2.998e8 / (2 * 0.04318), 1.0);
  EXPECT_NEAR(cutoff_frequency(kWr340, ModeFamily::te, 0, 1), 3.471e9, 1e6);
}

TEST(Cutoff, InvalidModes) {
  EXPECT_THROW(cutoff_frequency(kWr340, ModeFamily::te, 0, 0), std::domain_error);
  EXPECT_THROW(cutoff_frequency(kWr340, ModeFamily::tm, 1, 0), std::domain_error);
  EXPECT_THROW(cutoff_frequency(kWr340, ModeFamily::tm, 0, 1), std::domain_error);
  EXPECT_THROW(cutoff_frequency(kWr340, ModeFamily::te, -1, 1), std::domain_error);
  WaveguideSpec square{0.05, 0.05, 5.8e7};
  EXPECT_THROW(cutoff_frequency(square, ModeFamily::te, 1, 0), std::domain_error);
}

TEST(Cutoff, LinearInBroadWallIndex) {
  const double f1 = cutoff_frequency(kWr340, ModeFamily::te, 1, 0);
  for (int m = 1; m <= 5; ++m) EXPECT_NEAR(cutoff_frequency(kWr340, ModeFamily::te, m, 0), m * f1, 1e-6);
}

TEST(ModeChart, SingleModeAtOperatingFrequency) {
  const auto modes = mode_chart(kWr340, 2.45e9);
  ASSERT_EQ(modes.size(), 1u);
  EXPECT_EQ(modes[0].family, ModeFamily::te);
  EXPECT_EQ(modes[0].m, 1);
  EXPECT_EQ(modes[0].n, 0);
}

TEST(ModeChart, FirstModesUpToFiveGigahertz) {
  // TE10, TE20/TE01, TE11, TM11, TE21, TM21.
  const auto modes = mode_chart(kWr340, 5.0e9);
  ASSERT_EQ(modes.size(), 7u);
  EXPECT_EQ(modes[0].m, 1);
  EXPECT_EQ(modes[0].n, 0);
  // TE20 and TE01 share a cutoff for a = 2b.
  EXPECT_NEAR(modes[1].cutoff_hz, modes[2].cutoff_hz, 1.0);
  EXPECT_NEAR(modes[1].cutoff_hz, 3.4715e9, 1e6);
  EXPECT_EQ(modes[3].family, ModeFamily::te);
  EXPECT_EQ(modes[3].m, 1);
  EXPECT_EQ(modes[3].n, 1);
  EXPECT_EQ(modes[4].family, ModeFamily::tm);
  EXPECT_EQ(modes[4].m, 1);
  EXPECT_EQ(modes[4].n, 1);
  EXPECT_NEAR(modes[4].cutoff_hz, 0.5 * 2.998e8 * std::hypot(1 / 0.08636, 1 / 0.04318), 1.0);
  // TE21 and TM21 at 4.909 GHz; TE30 (5.21 GHz) is excluded.
  EXPECT_NEAR(modes[5].cutoff_hz, 4.9094e9, 1e6);
  EXPECT_EQ(modes[5].family, ModeFamily::te);
  EXPECT_EQ(modes[6].family, ModeFamily::tm);
  EXPECT_EQ(modes[6].m, 2);
  EXPECT_EQ(modes[6].n, 1);
  for (std::size_t i = 1; i < modes.size(); ++i) EXPECT_LE(modes[i - 1].cutoff_hz, modes[i].cutoff_hz);
}

TEST(ModeChart, EmptyBelowCutoff) { EXPECT_TRUE(mode_chart(kWr340, 1.5e9).empty()); }

TEST(ModeChart, Te10IsLowestForAnyRectangle) {
  for (double a : {0.02, 0.05, 0.1}) {
    for (double ratio : {0.2, 0.5, 0.9}) {
      WaveguideSpec s{a, a * ratio, 5.8e7};
      const auto modes = mode_chart(s, 1e12);
      ASSERT_FALSE(modes.empty());
      EXPECT_EQ(modes[0].m, 1);
      EXPECT_EQ(modes[0].n, 0);
    }
  }
}

TEST(SurfaceResistance, Copper) {
  EXPECT_NEAR(surface_resistance(2.45e9, 5.8e7), 0.01291, 1e-5);
  EXPECT_NEAR(surface_resistance(4 * 2.45e9, 5.8e7) / surface_resistance(2.45e9, 5.8e7), 2.0, 1e-12);
  EXPECT_LT(surface_resistance(2.45e9, 1e20), 1e-8);
}

TEST(Attenuation, OperatingPoint) {
  const double db = te10_attenuation_db(kWr340, 2.45e9);
  EXPECT_NEAR(db, 0.009, 0.2 * 0.009);
  // 1 m run: about 0.2% power loss.
  EXPECT_NEAR(1.0 - std::pow(10.0, -db / 10.0), 0.0021, 0.0005);
  EXPECT_NEAR(db / te10_attenuation_np(kWr340, 2.45e9), 8.686, 1e-12);
}

TEST(Attenuation, EvanescentBelowCutoff) {
  EXPECT_THROW(te10_attenuation_db(kWr340, 1.7e9), EvanescentModeError);
  EXPECT_THROW(te10_attenuation_db(kWr340, te10_cutoff(kWr340)), EvanescentModeError);
}

TEST(Attenuation, DivergesAtCutoffSingleMinimumAbove) {
  const double fc = te10_cutoff(kWr340);
  EXPECT_GT(te10_attenuation_db(kWr340, fc * (1 + 1e-8)), 100 * te10_attenuation_db(kWr340, 2.45e9));
  std::vector<double> a;
  for (double f = fc * 1.001; f < 40e9; f *= 1.01) a.push_back(te10_attenuation_db(kWr340, f));
  int minima = 0;
  for (std::size_t i = 1; i + 1 < a.size(); ++i)
    if (a[i] < a[i - 1] && a[i] < a[i + 1]) ++minima;
  EXPECT_EQ(minima, 1);
  EXPECT_GT(a.back(), a[a.size() / 2]);
}

TEST(PhaseConstant, ApproachesFreeSpaceWavenumber) {
  const double f = 100e9;
  EXPECT_NEAR(te10_phase_constant(kWr340, f) / (2 * M_PI * f / 2.998e8), 1.0, 1e-3);
}
