#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "aoa/numerics.hpp"
#include "oracles.hpp"

namespace {

using aoa::Interval;

TEST(LambertW, KnownValues) {
  EXPECT_EQ(aoa::lambert_w0(0.0), 0.0);
  EXPECT_NEAR(aoa::lambert_w0(std::numbers::e), 1.0, 1e-15);
  EXPECT_NEAR(aoa::lambert_w0(1.0), 0.5671432904097838, 1e-15);  // omega constant
  EXPECT_NEAR(aoa::lambert_w0(2.0 * std::exp(2.0)), 2.0, 1e-14);
}

TEST(LambertW, RejectsInvalidInput) {
  EXPECT_THROW(aoa::lambert_w0(-0.1), std::domain_error);
  EXPECT_THROW(aoa::lambert_w0(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
  EXPECT_THROW(aoa::lambert_w0(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST(LambertW, MatchesNewtonOracle) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> exponent(-12.0, 12.0);
  for (int i = 0; i < 500; ++i) {
    const double x = std::pow(10.0, exponent(rng));
    const double w = aoa::lambert_w0(x);
    EXPECT_NEAR(w, oracle::lambert_w(x), 1e-13 * std::max(1.0, w)) << "x = " << x;
  }
}

TEST(LambertW, MonotoneAndTiny) {
  double prev = 0.0;
  for (double x = 1e-300; x < 1e300; x *= 7.3) {
    const double w = aoa::lambert_w0(x);
    EXPECT_GT(w, prev);
    prev = w;
  }
  EXPECT_NEAR(aoa::lambert_w0(1e-20), 1e-20, 1e-35);
}

TEST(Erf, ReferenceValues) {
  EXPECT_NEAR(aoa::erf(1.0 / std::numbers::sqrt2), 0.6826894921370859, 1e-15);
  EXPECT_EQ(aoa::erf(0.0), 0.0);
  EXPECT_NEAR(aoa::erf(-2.0), -aoa::erf(2.0), 0.0);
  EXPECT_THROW(aoa::erf(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST(GaussMass, AgreesWithQuadrature) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    double a = u(rng);
    double b = u(rng);
    if (a > b) std::swap(a, b);
    const double c = u(rng);
    const double s = 0.1 + std::abs(u(rng));
    EXPECT_NEAR(aoa::gauss_mass({a, b}, c, s), oracle::spot_mass(a, b, c, s), 1e-11);
  }
}

TEST(GaussMass, TailsAndLimits) {
  EXPECT_NEAR(aoa::gauss_mass({-1e300, 1e300}, 0.0, 1.0), 1.0, 1e-15);
  EXPECT_GT(aoa::gauss_mass({10.0, 11.0}, 0.0, 1.0), 0.0);
  EXPECT_NEAR(aoa::gauss_mass({10.0, 11.0}, 0.0, 1.0) / 7.619661958203076e-24, 1.0, 1e-9);
  EXPECT_EQ(aoa::gauss_mass({1.0, 1.0}, 0.0, 1.0), 0.0);
  EXPECT_THROW(aoa::gauss_mass({0.0, 1.0}, 0.0, 0.0), std::domain_error);
}

TEST(FiniteDifference, PolynomialsAndErrors) {
  auto cube = [](double x) { return x * x * x; };
  EXPECT_NEAR(aoa::central_diff(cube, 2.0, 1e-4), 12.0, 1e-7);
  EXPECT_NEAR(aoa::central_diff2(cube, 2.0, 1e-3), 12.0, 1e-5);
  EXPECT_THROW(aoa::central_diff(cube, 0.0, 0.0), std::domain_error);
  auto bad = [](double x) { return x > 0 ? std::numeric_limits<double>::infinity() : 0.0; };
  EXPECT_THROW(aoa::central_diff(bad, 0.0, 1e-3), aoa::numerical_error);
}

TEST(Integrate, SmoothIntegrands) {
  EXPECT_NEAR(aoa::integrate_adaptive([](double x) { return std::sin(x); }, 0.0, std::numbers::pi),
              2.0, 1e-11);
  EXPECT_NEAR(aoa::integrate_adaptive([](double x) { return std::exp(-x * x); }, -6.0, 6.0),
              std::sqrt(std::numbers::pi), 1e-11);
  EXPECT_EQ(aoa::integrate_adaptive([](double) { return 1.0; }, 1.0, 1.0), 0.0);
  EXPECT_THROW(aoa::integrate_adaptive([](double) { return 1.0; }, 1.0, 0.0), std::domain_error);
}

TEST(Linspace, EndpointsExact) {
  const auto v = aoa::linspace(0.0, 0.3, 7);
  ASSERT_EQ(v.size(), 7u);
  EXPECT_EQ(v.front(), 0.0);
  EXPECT_EQ(v.back(), 0.3);
  EXPECT_EQ(aoa::linspace(1.0, 2.0, 1), std::vector<double>{1.0});
  EXPECT_TRUE(aoa::linspace(1.0, 2.0, 0).empty());
}

TEST(Maximize, FindsInteriorAndEdgeMaxima) {
  const auto m = aoa::maximize_1d([](double x) { return -(x - 0.3) * (x - 0.3); }, {-1.0, 1.0}, 1e-12);
  EXPECT_NEAR(m.argmax, 0.3, 1e-6);
  const auto e = aoa::maximize_1d([](double x) { return x; }, {-1.0, 1.0}, 1e-12);
  EXPECT_NEAR(e.argmax, 1.0, 1e-9);
  const auto pt = aoa::maximize_1d([](double x) { return x; }, {0.5, 0.5}, 1e-12);
  EXPECT_EQ(pt.argmax, 0.5);
  EXPECT_THROW(aoa::maximize_1d([](double x) { return x; }, {1.0, 0.0}, 1e-12), std::domain_error);
}

TEST(Maximize, PicksGlobalOfMultimodal) {
  auto f = [](double x) { return std::exp(-50 * (x + 0.5) * (x + 0.5)) + 2 * std::exp(-50 * (x - 0.6) * (x - 0.6)); };
  EXPECT_NEAR(aoa::maximize_1d(f, {-1.0, 1.0}, 1e-12).argmax, 0.6, 1e-5);
}

TEST(GaussMass, Additive) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int i = 0; i < 500; ++i) {
    double p[3] = {u(rng), u(rng), u(rng)};
    std::sort(p, p + 3);
    const double c = u(rng);
    const double s = 0.05 + std::abs(u(rng));
    EXPECT_NEAR(aoa::gauss_mass({p[0], p[1]}, c, s) + aoa::gauss_mass({p[1], p[2]}, c, s),
                aoa::gauss_mass({p[0], p[2]}, c, s), 1e-12);
  }
}

TEST(Maximize, NeverWorseThanGridOrEndpoints) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const double a1 = u(rng), a2 = u(rng), a3 = u(rng);
    auto f = [&](double x) { return a1 * std::sin(7 * x) + a2 * std::cos(3 * x) + a3 * x * x; };
    const aoa::Interval iv{-2.0, 1.5};
    aoa::MaximizeOptions opts{64};
    const auto m = aoa::maximize_1d(f, iv, 1e-10, opts);
    EXPECT_GE(m.value, f(iv.lo));
    EXPECT_GE(m.value, f(iv.hi));
    for (double x : aoa::linspace(iv.lo, iv.hi, opts.grid_points)) EXPECT_GE(m.value, f(x));
    EXPECT_DOUBLE_EQ(m.value, f(m.argmax));
  }
}

}  // namespace
