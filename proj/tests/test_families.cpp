#include "deltakit/families.hpp"
#include "deltakit/testfn.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"

using namespace deltakit;
constexpr double kPi = std::numbers::pi;

TEST(Dirichlet, Values) {
  EXPECT_NEAR(dirichlet_kernel(2.0, 0.5), 0.53569706680232757262, 1e-15);
  EXPECT_NEAR(dirichlet_kernel(3.0, 0.0), 3.0 / kPi, 1e-16);
  EXPECT_NEAR(dirichlet_step(1.0, kPi), 0.58948987223608363512, 1e-14);
  EXPECT_NEAR(dirichlet_ramp(1.0, 1.0), 0.15482127375092578303, 1e-14);
  EXPECT_EQ(dirichlet_step(7.0, 0.0), 0.0);
  EXPECT_EQ(dirichlet_ramp(7.0, 0.0), 0.0);
}

TEST(Dirichlet, KernelIsContinuousThroughTheOrigin) {
  const double R = 40.0;
  for (double x : {1e-9, 1e-7, 2.4e-6, 2.6e-6, 1e-5}) {
    const double direct = std::sin(R * x) / (kPi * x);
    EXPECT_NEAR(dirichlet_kernel(R, x), direct, 1e-12 * R) << x;
  }
}

TEST(Lorentz, Values) {
  EXPECT_NEAR(lorentz_delta(0.5, 0.0), 1.0 / (kPi * 0.5), 1e-16);
  EXPECT_NEAR(lorentz_step(2.0, 1.0), 0.35241638234956672582, 1e-15);
  EXPECT_NEAR(lorentz_ramp(3.0, 0.7), 0.16141148421533670418, 1e-15);
  EXPECT_EQ(lorentz_ramp(3.0, 0.0), 0.0);
}

TEST(Families, ParityIsExact) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> ux(0.0, 8.0), up(0.5, 300.0);
  for (int i = 0; i < 400; ++i) {
    const double x = ux(rng), p = up(rng);
    EXPECT_EQ(dirichlet_kernel(p, -x), dirichlet_kernel(p, x));
    EXPECT_EQ(dirichlet_step(p, -x), -dirichlet_step(p, x));
    EXPECT_EQ(dirichlet_ramp(p, -x), dirichlet_ramp(p, x));
    EXPECT_EQ(lorentz_delta(1.0 / p, -x), lorentz_delta(1.0 / p, x));
    EXPECT_EQ(lorentz_step(p, -x), -lorentz_step(p, x));
    EXPECT_EQ(lorentz_ramp(p, -x), lorentz_ramp(p, x));
  }
}

// Each primitive differentiates to the level below.
TEST(Families, PrimitivesAreConsistent) {
  for (auto fam : {RegFamily::fourier(), RegFamily::lorentz()}) {
    for (double p : {1.0, 4.0, 25.0}) {
      for (double x = -3.0; x <= 3.0; x += 0.173) {
        for (int j = 1; j <= 2; ++j) {
          const double d = derivative([&](double t) { return fam.level(j, p, t); }, x, 1);
          const double below = fam.level(j - 1, p, x);
          EXPECT_NEAR(d, below, 1e-6 * std::max(1.0, std::abs(below))) << to_string(fam.kind) << p << ' ' << x;
        }
      }
    }
  }
}

// Anchored primitives equal the integral from 0, computed independently.
TEST(Families, PrimitivesMatchIndependentQuadrature) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> ux(-4.0, 4.0);
  for (int i = 0; i < 20; ++i) {
    const double x = ux(rng);
    const double n = 6.0;
    EXPECT_NEAR(dirichlet_step(n, x), oracle::integrate([n](double t) { return dirichlet_kernel(n, t); }, 0.0, x), 1e-12);
    EXPECT_NEAR(lorentz_step(n, x), oracle::integrate([n](double t) { return lorentz_delta(1.0 / n, t); }, 0.0, x), 1e-12);
    EXPECT_NEAR(lorentz_ramp(n, x), oracle::integrate([n](double t) { return lorentz_step(n, t); }, 0.0, x), 1e-12);
  }
}

TEST(Families, LorentzKernelHasUnitMass) {
  for (double eps : {1.0, 0.1, 0.01}) EXPECT_NEAR(2.0 * lorentz_step(1.0 / eps, INFINITY), 1.0, 1e-15);
}

TEST(Families, RampTendsToHalfAbs) {
  for (double n : {1.0, 10.0, 100.0}) {
    for (double x = -5.0; x <= 5.0; x += 0.01) {
      EXPECT_LE(std::abs(dirichlet_ramp(n, x) - 0.5 * std::abs(x)), 2.0 / (n * kPi) + 1e-12);
      EXPECT_LE(std::abs(lorentz_ramp(n, x) - 0.5 * std::abs(x)),
                1.0 / (kPi * n) + std::log1p(25.0 * n * n) / (2 * kPi * n));
    }
  }
}

TEST(Families, RejectBadParameters) {
  EXPECT_THROW(dirichlet_kernel(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(dirichlet_step(-1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(dirichlet_ramp(INFINITY, 1.0), std::invalid_argument);
  EXPECT_THROW(lorentz_delta(0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(lorentz_step(NAN, 1.0), std::invalid_argument);
  EXPECT_THROW(lorentz_ramp(-3.0, 1.0), std::invalid_argument);
  EXPECT_THROW(RegFamily::fourier().level(3, 1.0, 1.0), std::invalid_argument);
}

TEST(LimitObjects, Values) {
  const auto step = limit_object(LimitKind::step_theta);
  const auto half = limit_object(LimitKind::abs_half);
  EXPECT_EQ(step(-2.0), -0.5);
  EXPECT_EQ(step(0.0), 0.0);
  EXPECT_EQ(step(3.0), 0.5);
  EXPECT_EQ(half(-3.0), 1.5);
  EXPECT_EQ(half(0.0), 0.0);
}

TEST(LimitObjects, StepsConvergePointwise) {
  const auto step = limit_object(LimitKind::step_theta);
  for (double x : {-2.0, -0.3, 0.0, 0.3, 2.0}) {
    EXPECT_NEAR(dirichlet_step(1e6, x), step(x), 1e-5) << x;
    EXPECT_NEAR(lorentz_step(1e6, x), step(x), 1e-5) << x;
  }
}
