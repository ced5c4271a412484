#include <cmath>

#include <gtest/gtest.h>

#include "hpmsim/coupling.hpp"

using namespace hpmsim::coupling;

namespace {

constexpr double kLambda = 2.998e8 / 2.45e9;

CouplingParams wire(double length) {
  CouplingParams p;
  p.wire_length_m = length;
  return p;
}

}  // namespace

TEST(InducedVoltage, ShortDipole) {
  EXPECT_NEAR(induced_voltage(300.0, wire(0.06)), 9.0, 1e-12);
  EXPECT_EQ(induced_voltage(0.0, wire(0.2)), 0.0);
  auto p = wire(0.1);
  p.orientation_factor = 0.0;
  EXPECT_EQ(induced_voltage(250.0, p), 0.0);
  p.orientation_factor = 1.0;
  p.polarization_efficiency = 0.25;
  EXPECT_NEAR(induced_voltage(100.0, p), 100.0 * 0.05 * 0.5, 1e-12);
  EXPECT_THROW(induced_voltage(-1.0, p), std::domain_error);
}

TEST(InducedVoltage, OrientationFactorIsDipoleProjection) {
  EXPECT_NEAR(orientation_factor(M_PI / 2), 1.0, 1e-15);
  EXPECT_NEAR(orientation_factor(0.0), 0.0, 1e-15);
  EXPECT_NEAR(orientation_factor(-M_PI / 6), 0.5, 1e-15);
}

TEST(ResonanceFactor, Examples) {
  EXPECT_NEAR(resonance_factor(kLambda / 2, kLambda, 10.0, 0.02), 10.0, 1e-12);
  EXPECT_NEAR(resonance_factor(0.0612, 0.12237, 10.0, 0.02), 10.0, 1e-4);
  EXPECT_NEAR(resonance_factor(0.30, 0.12237, 10.0, 0.02), 1.0, 1e-12);
  EXPECT_NEAR(resonance_factor(0.12237 / 2 - 0.02, 0.12237, 10.0, 0.02), 1.0 + 9.0 * std::exp(-0.5), 1e-12);
  // 0.0412 m sits 15 um short of one sigma below the half-wave.
  EXPECT_NEAR(resonance_factor(0.0412, 0.12237, 10.0, 0.02), 6.459, 5e-3);
}

TEST(ResonanceFactor, SymmetricWithPeakAtHalfWave) {
  const double half = kLambda / 2;
  for (double d = 0.001; d < 0.05; d += 0.001) {
    EXPECT_NEAR(resonance_factor(half + d, kLambda, 10.0, 0.02), resonance_factor(half - d, kLambda, 10.0, 0.02),
                1e-12);
    EXPECT_LT(resonance_factor(half + d, kLambda, 10.0, 0.02), 10.0);
  }
}

TEST(ResonanceFactor, UnityQualityIsBareDipole) {
  for (double l = 0.01; l < 0.3; l += 0.01) EXPECT_DOUBLE_EQ(resonance_factor(l, kLambda, 1.0, 0.02), 1.0);
}

TEST(CoupledVoltage, Examples) {
  const auto p = wire(kLambda / 2);
  EXPECT_NEAR(coupled_voltage(300.0, p, kLambda), 300.0 * kLambda / 4 * 10.0, 1e-9);
  EXPECT_NEAR(coupled_voltage(300.0, wire(0.0612), 0.12237), 91.8, 0.05);
  EXPECT_NEAR(coupled_voltage(200.0, wire(0.0612), 0.12237), 61.2, 0.05);
  EXPECT_EQ(coupled_voltage(0.0, p, kLambda), 0.0);
}

TEST(CoupledVoltage, LinearInField) {
  const auto p = wire(0.0612);
  const double v1 = coupled_voltage(100.0, p, kLambda);
  const double v2 = coupled_voltage(350.0, p, kLambda);
  EXPECT_NEAR(v2 / v1, 3.5, 1e-12);
}

TEST(CoupledVoltage, MonotoneInPolarizationAndOrientation) {
  auto p = wire(0.08);
  double prev = -1.0;
  for (double eta = 0.1; eta <= 1.0; eta += 0.05) {
    p.polarization_efficiency = eta;
    const double v = coupled_voltage(200.0, p, kLambda);
    EXPECT_GE(v, prev);
    prev = v;
  }
  prev = -1.0;
  p.polarization_efficiency = 1.0;
  for (double f = 0.0; f <= 1.0; f += 0.05) {
    p.orientation_factor = f;
    const double v = coupled_voltage(200.0, p, kLambda);
    EXPECT_GE(v, prev);
    prev = v;
  }
}

TEST(CouplingParams, Validation) {
  auto p = wire(0.05);
  p.quality_factor = 0.5;
  EXPECT_THROW(p.validate(), std::domain_error);
  p = wire(0.0);
  EXPECT_THROW(p.validate(), std::domain_error);
  p = wire(0.05);
  p.polarization_efficiency = 0.05;
  EXPECT_THROW(p.validate(), std::domain_error);
}

TEST(RelativeCoupling, UnityAtHalfWave) {
  EXPECT_NEAR(relative_coupling(kLambda / 2, kLambda, 10.0, 0.02), 1.0, 1e-15);
  EXPECT_LT(relative_coupling(0.25, kLambda, 10.0, 0.02), 1.0);
  EXPECT_LT(relative_coupling(0.02, kLambda, 10.0, 0.02), 1.0);
}
