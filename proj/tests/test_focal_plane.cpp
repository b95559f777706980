#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "aoa/focal_plane.hpp"
#include "oracles.hpp"

namespace {

aoa::BeamParams narrow() { return aoa::BeamParams::from_beamwidth(0.5, 1.55e-6, 1e-3, 100.0, 0.02); }
aoa::ReceiverGeometry quad() { return {1e-3, 4e-6, 4, 2e-4}; }

TEST(Geometry, CellsTileTheArray) {
  for (int m_count : {1, 3, 4, 16, 64}) {
    aoa::ReceiverGeometry g{1e-3, 4e-6, m_count, 2e-4};
    const auto whole = aoa::array_bounds(g);
    EXPECT_DOUBLE_EQ(whole.lo, -1e-3);
    EXPECT_DOUBLE_EQ(whole.hi, 1e-3);
    EXPECT_EQ(aoa::detector_bounds(g, 0).lo, whole.lo);
    EXPECT_EQ(aoa::detector_bounds(g, m_count - 1).hi, whole.hi);
    for (int m = 1; m < m_count; ++m) {
      EXPECT_EQ(aoa::detector_bounds(g, m).lo, aoa::detector_bounds(g, m - 1).hi);
    }
  }
}

TEST(Geometry, ValidationAndIndexChecks) {
  EXPECT_THROW((aoa::ReceiverGeometry{0.0, 4e-6, 4, 2e-4}.validate()), std::invalid_argument);
  EXPECT_THROW((aoa::ReceiverGeometry{1e-3, 4e-6, 0, 2e-4}.validate()), std::invalid_argument);
  EXPECT_THROW((aoa::ReceiverGeometry{1e-3, 4e-6, 4, -1.0}.validate()), std::invalid_argument);
  EXPECT_THROW(aoa::detector_bounds(quad(), 4), std::out_of_range);
  EXPECT_THROW(aoa::detector_bounds(quad(), -1), std::out_of_range);
}

TEST(DetectorMean, MatchesQuadratureOracle) {
  const auto p = narrow();
  const auto g = quad();
  for (double t = -1.2; t <= 1.2; t += 0.05) {
    for (int m = 0; m < g.detector_count; ++m) {
      const double ref = oracle::cell_mean(p, g, t, m);
      EXPECT_NEAR(aoa::detector_mean(p, g, t, m), ref, 1e-10 * aoa::received_power(p, 0.0))
          << "t=" << t << " m=" << m;
    }
  }
}

TEST(DetectorMean, SumsToCapturedPower) {
  const auto p = narrow();
  const auto g = quad();
  for (double t : {0.0, 0.1, 0.5}) {
    double total = 0.0;
    for (int m = 0; m < g.detector_count; ++m) total += aoa::detector_mean(p, g, t, m);
    const double x0 = aoa::spot_center(g, t);
    const double captured = aoa::received_power(p, t) * aoa::gauss_mass(aoa::array_bounds(g), x0, g.spot_radius);
    EXPECT_NEAR(total, captured, 1e-15);
  }
}

TEST(DetectorSignals, AlphaBetaSplitTheDerivative) {
  const auto p = narrow();
  const auto g = quad();
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> angle(-1.3, 1.3);
  for (int i = 0; i < 60; ++i) {
    const double t = angle(rng);
    const auto sigs = aoa::detector_signals(p, g, t);
    ASSERT_EQ(sigs.size(), 4u);
    for (const auto& s : sigs) {
      const double fd = oracle::diff([&](double x) { return aoa::detector_mean(p, g, x, s.index); }, t, 1e-6);
      EXPECT_NEAR(s.derivative(), fd, 1e-6 * std::abs(fd) + 1e-12);
      EXPECT_DOUBLE_EQ(s.mean, aoa::detector_mean(p, g, t, s.index));
      const auto one = aoa::detector_mean_deriv(p, g, t, s.index);
      EXPECT_DOUBLE_EQ(one.alpha, s.alpha);
      EXPECT_DOUBLE_EQ(one.beta, s.beta);
    }
  }
}

TEST(DetectorSignals, EnergyTermVanishesOnAxis) {
  const auto sigs = aoa::detector_signals(narrow(), quad(), 0.0);
  for (const auto& s : sigs) EXPECT_EQ(s.alpha, 0.0);
}

TEST(Noise, ConstantAndAreaProportional) {
  const auto g = quad();
  aoa::NoiseModel c{1e-6, aoa::NoiseMode::constant, 0.0};
  aoa::NoiseModel a{1e-6, aoa::NoiseMode::area_proportional, 0.0};
  for (int m = 0; m < 4; ++m) {
    EXPECT_DOUBLE_EQ(aoa::noise_variance(g, c, m), 1e-12);
    EXPECT_DOUBLE_EQ(aoa::noise_variance(g, a, m), 0.25e-12);
  }
  EXPECT_THROW((aoa::NoiseModel{0.0, aoa::NoiseMode::constant, 0.0}.validate()), std::invalid_argument);
  EXPECT_THROW((aoa::NoiseModel{1e-6, aoa::NoiseMode::constant, -1.0}.validate()), std::invalid_argument);
  EXPECT_EQ(aoa::parse_noise_mode("area_proportional"), aoa::NoiseMode::area_proportional);
  EXPECT_THROW(aoa::parse_noise_mode("shot"), std::invalid_argument);
}

TEST(Geometry, QuadrantBounds) {
  const auto b = aoa::detector_bounds(quad(), 0);
  EXPECT_NEAR(b.lo, -1.0e-3, 1e-18);
  EXPECT_NEAR(b.hi, -0.5e-3, 1e-18);
  const aoa::ReceiverGeometry one{1e-3, 4e-6, 1, 2e-4};
  EXPECT_NEAR(aoa::detector_bounds(one, 0).lo, -1e-3, 1e-18);
  EXPECT_NEAR(aoa::detector_bounds(one, 0).hi, 1e-3, 1e-18);
}

TEST(Noise, AreaProportionalConservesTotalVariance) {
  const aoa::NoiseModel a{2e-6, aoa::NoiseMode::area_proportional, 0.0};
  for (int m_count : {1, 3, 4, 7, 16, 64}) {
    const aoa::ReceiverGeometry g{1e-3, 4e-6, m_count, 2e-4};
    double total = 0.0;
    for (int m = 0; m < m_count; ++m) total += aoa::noise_variance(g, a, m);
    EXPECT_NEAR(total, 4e-12, 1e-24);
  }
}

}  // namespace
