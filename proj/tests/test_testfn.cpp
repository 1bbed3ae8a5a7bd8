#include "deltakit/testfn.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"

using namespace deltakit;

// -----------------------------------------------------------------------------
// Mollifier and steps
// -----------------------------------------------------------------------------

TEST(Mollifier, DefinitionBranches) {
  EXPECT_EQ(mollifier(0.0), 0.0);
  EXPECT_EQ(mollifier(-3.0), 0.0);
  EXPECT_NEAR(mollifier(1.0), 0.36787944117144232, 1e-16);
}

TEST(Mollifier, UnderflowRegionIsExactZero) {
  EXPECT_EQ(mollifier(0.5 * kMollifierCutoff), 0.0);
  EXPECT_GT(mollifier(2.0 * kMollifierCutoff), 0.0);
  for (double x = 1e-6; x < 0.01; x *= 1.1) {
    if (x < kMollifierCutoff) {
      EXPECT_EQ(mollifier(x), 0.0) << x;
    } else {
      EXPECT_GT(mollifier(x), 0.0) << x;
    }
  }
}

TEST(SmoothStep, UpValues) {
  const auto F = smooth_step_up(1, 2);
  EXPECT_EQ(F(0.5), 0.0);
  EXPECT_EQ(F(3.0), 1.0);
  EXPECT_EQ(F(1.5), 0.5);
}

TEST(SmoothStep, DownValues) {
  const auto G = smooth_step_down(3, 4);
  EXPECT_EQ(G(2.0), 1.0);
  EXPECT_EQ(G(5.0), 0.0);
  EXPECT_EQ(G(3.5), 0.5);
}

TEST(SmoothStep, MatchesRatioOfMollifiers) {
  const auto F = smooth_step_up(1, 2);
  for (double x = 1.05; x < 2.0; x += 0.05) {
    const double fa = std::exp(-1.0 / (x - 1.0));
    const double gb = std::exp(-1.0 / (2.0 - x));
    EXPECT_NEAR(F(x), fa / (fa + gb), 1e-15) << x;
  }
}

TEST(SmoothStep, StrictlyMonotoneInside) {
  const auto F = smooth_step_up(-0.3, 1.7);
  double prev = 0.0;
  // Strict while 1 - F is representable; the last stretch rounds to 1.
  for (double x = -0.25; x < 1.6; x += 0.01) {
    const double v = F(x);
    EXPECT_GT(v, prev) << x;
    EXPECT_LT(v, 1.0) << x;
    prev = v;
  }
  for (double x = 1.6; x < 1.7; x += 0.001) {
    EXPECT_GE(F(x), prev) << x;
    EXPECT_LE(F(x), 1.0) << x;
    prev = F(x);
  }
}

TEST(SmoothStep, RejectsBadKnots) {
  EXPECT_THROW(smooth_step_up(2, 2), std::invalid_argument);
  EXPECT_THROW(smooth_step_up(3, 2), std::invalid_argument);
  EXPECT_THROW(smooth_step_down(1, 1), std::invalid_argument);
}

// -----------------------------------------------------------------------------
// Bump
// -----------------------------------------------------------------------------

TEST(Bump, ReferenceValues) {
  const auto f = bump(1, 2, 3, 4);
  EXPECT_EQ(f(2.5), 1.0);
  EXPECT_EQ(f(0.9), 0.0);
  EXPECT_EQ(f(1.5), 0.5);
  EXPECT_EQ(f.support(), Interval(1, 4));
}

TEST(Bump, RejectsNonIncreasingKnots) {
  EXPECT_THROW(bump(1, 1, 3, 4), std::invalid_argument);
  EXPECT_THROW(bump(1, 3, 2, 4), std::invalid_argument);
  EXPECT_THROW(bump(1, 2, 3, 3), std::invalid_argument);
}

TEST(Bump, RangeAndSupportProperty) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> gap(0.05, 2.0), start(-3.0, 3.0), where(-10.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = start(rng), b = a + gap(rng), c = b + gap(rng), d = c + gap(rng);
    const auto f = bump(a, b, c, d);
    for (int i = 0; i < 200; ++i) {
      const double x = where(rng);
      const double v = f(x);
      EXPECT_GE(v, 0.0);
      EXPECT_LE(v, 1.0);
      if (x < a || x > d) {
        EXPECT_EQ(v, 0.0);
      }
      if (x >= b && x <= c) {
        EXPECT_EQ(v, 1.0);
      }
    }
  }
}

TEST(Bump, PlateauExactness) {
  const auto f = bump(-2, -1, 1, 2);
  const double h = 1e-9;
  for (double x = -1.0 + h; x <= 1.0 - h; x += 0.001) EXPECT_NEAR(f(x), 1.0, 1e-14);
}

TEST(Bump, FlatContactAtSupportEnds) {
  const auto f = bump(-2, -1, 1, 2);
  for (int order = 1; order <= 3; ++order) {
    EXPECT_LE(std::abs(derivative(f, -2.0, order)), 1e-4) << order;
    EXPECT_LE(std::abs(derivative(f, 2.0, order)), 1e-4) << order;
  }
}

TEST(TestFunctionOps, ShiftScaleCombine) {
  const auto f = bump(-2, -1, 1, 2);
  const auto g = f.shifted(3.0);
  EXPECT_EQ(g.support(), Interval(1, 5));
  EXPECT_EQ(g(3.0), 1.0);
  EXPECT_EQ(g(0.5), 0.0);
  EXPECT_EQ(f.scaled(0.5)(0.0), 0.5);
  const auto h = linear_combination(2.0, f, -1.0, g);
  EXPECT_EQ(h.support(), Interval(-2, 5));
  EXPECT_DOUBLE_EQ(h(1.5), 2.0 * f(1.5) - g(1.5));
}

// -----------------------------------------------------------------------------
// Derivatives
// -----------------------------------------------------------------------------

TEST(Derivative, PlateauAndOutside) {
  const auto f = bump(1, 2, 3, 4);
  EXPECT_EQ(derivative(f, 2.5, 1), 0.0);
  EXPECT_EQ(derivative(f, 0.5, 2), 0.0);
}

TEST(Derivative, StepSlopeMatchesFineDifference) {
  const auto F = smooth_step_up(1, 2);
  const double d = derivative(F, 1.5, 1);
  EXPECT_GT(d, 0.0);
  // Logistic form: F = 1/(1+e^u), u = 1/(x-1) - 1/(2-x), so F' = -F(1-F) u'.
  const double x = 1.5;
  const double du = -1.0 / ((x - 1) * (x - 1)) - 1.0 / ((2 - x) * (2 - x));
  const double exact = -0.5 * 0.5 * du;
  EXPECT_NEAR(d, exact, 1e-8);
  const double h = 1e-5;
  EXPECT_NEAR(d, (F(x + h) - F(x - h)) / (2 * h), 1e-6);
}

TEST(Derivative, PolynomialOrders) {
  auto p = [](double x) { return x * x * x * x - 2 * x * x * x + x; };
  EXPECT_NEAR(derivative(p, 1.3, 1), 4 * std::pow(1.3, 3) - 6 * 1.3 * 1.3 + 1, 1e-8);
  EXPECT_NEAR(derivative(p, 1.3, 2), 12 * 1.3 * 1.3 - 12 * 1.3, 1e-6);
  EXPECT_NEAR(derivative(p, 1.3, 3), 24 * 1.3 - 12, 1e-4);
  EXPECT_NEAR(derivative(p, 1.3, 4), 24.0, 1e-2);
}

TEST(Derivative, TrigonometricAccuracy) {
  for (double x : {-2.0, 0.0, 0.7, 3.0}) {
    EXPECT_NEAR(derivative([](double t) { return std::sin(t); }, x, 1), std::cos(x), 1e-10);
    EXPECT_NEAR(derivative([](double t) { return std::sin(t); }, x, 2), -std::sin(x), 1e-7);
  }
}

TEST(Derivative, OrderOutOfRange) {
  const auto f = bump(1, 2, 3, 4);
  EXPECT_THROW(derivative(f, 2.0, 0), std::invalid_argument);
  EXPECT_THROW(derivative(f, 2.0, 5), std::invalid_argument);
  const TestFunction limited{[](double) { return 1.0; }, Interval{0, 1}, 2};
  EXPECT_THROW(derivative(limited, 0.5, 3), std::invalid_argument);
}

// -----------------------------------------------------------------------------
// Difference quotient
// -----------------------------------------------------------------------------

TEST(DifferenceQuotient, ZeroNearOrigin) {
  const auto g = difference_quotient(bump(1, 2, 3, 4));
  for (double x : {-0.5, -1e-8, 0.0, 1e-8, 0.5}) EXPECT_EQ(g(x), 0.0);
}

TEST(DifferenceQuotient, PlateauBump) {
  const auto f = bump(-2, -1, 1, 2);
  const auto g = difference_quotient(f);
  EXPECT_EQ(g(0.0), 0.0);
  EXPECT_LT(g(1.5), 0.0);
  EXPECT_DOUBLE_EQ(g(1.5), (f(1.5) - 1.0) / 1.5);
}

TEST(DifferenceQuotient, ContinuousAcrossSwitch) {
  const auto f = bump(-1, 1, 2, 3);  // f(0) = 1/2, f'(0) != 0
  const auto g = difference_quotient(f);
  const double r = g.switch_radius();
  EXPECT_NEAR(g(0.999 * r), g(1.001 * r), 1e-8);
  EXPECT_NEAR(g(0.0), derivative(f, 0.0, 1), 0.0);
  EXPECT_GT(g(0.0), 0.0);
}

TEST(DifferenceQuotient, TaylorConsistencyProxy) {
  for (const auto& f : {bump(-2, -1, 1, 2), bump(-1, 1, 2, 3), bump(-1.5, -0.2, 0.4, 2.5)}) {
    const auto g = difference_quotient(f);
    const double slope_at_zero = derivative(g, 0.0, 1);
    EXPECT_NEAR(slope_at_zero, 0.5 * derivative(f, 0.0, 2), 1e-5);
  }
}
