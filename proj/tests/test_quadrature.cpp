#include "deltakit/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace deltakit;

TEST(Quadrature, Polynomials) {
  EXPECT_NEAR(integrate([](double x) { return x; }, 0, 1).value, 0.5, 1e-15);
  EXPECT_NEAR(integrate([](double x) { return x * x * x; }, -1, 2).value, (16.0 - 1.0) / 4.0, 1e-14);
}

TEST(Quadrature, ReversedAndEmptyLimits) {
  auto f = [](double x) { return std::exp(x); };
  EXPECT_NEAR(integrate(f, 1, 0).value, -(std::exp(1.0) - 1.0), 1e-14);
  const auto empty = integrate(f, 2, 2);
  EXPECT_EQ(empty.value, 0.0);
  EXPECT_EQ(empty.panels_used, 1);
}

TEST(Quadrature, ResultInvariants) {
  QuadOptions opt;
  opt.max_panel = 0.3;
  const auto r = integrate([](double x) { return std::sin(10 * x); }, 0, 3, opt);
  EXPECT_GE(r.abs_error_estimate, 0.0);
  EXPECT_GE(r.panels_used, 10);
  EXPECT_NEAR(r.value, (1.0 - std::cos(30.0)) / 10.0, 1e-13);
}

TEST(Quadrature, BreakpointResolvesKink) {
  QuadOptions opt;
  opt.breakpoints = {0.3};
  const auto r = integrate([](double x) { return std::abs(x - 0.3); }, -1, 1, opt);
  EXPECT_NEAR(r.value, 0.5 * 1.3 * 1.3 + 0.5 * 0.7 * 0.7, 1e-15);
}

TEST(Quadrature, HighlyOscillatoryWithPanelCap) {
  const double R = 2000.0;
  QuadOptions opt;
  opt.max_panel = std::numbers::pi / R;
  opt.abs_tol = 1e-12;
  const auto r = integrate([R](double x) { return std::cos(R * x) * x * x; }, 0, 1, opt);
  // Exact antiderivative of x^2 cos(Rx).
  auto F = [R](double x) {
    return x * x * std::sin(R * x) / R + 2 * x * std::cos(R * x) / (R * R) - 2 * std::sin(R * x) / (R * R * R);
  };
  EXPECT_NEAR(r.value, F(1.0) - F(0.0), 1e-12);
}

TEST(Quadrature, NonFiniteIntegrandIsAnError) {
  EXPECT_THROW(integrate([](double) { return std::nan(""); }, 0, 1), QuadratureError);
  EXPECT_THROW(integrate([](double x) { return std::sqrt(x - 0.5); }, 0, 1), QuadratureError);
  EXPECT_THROW(integrate([](double x) { return x; }, 0, INFINITY), std::invalid_argument);
}

TEST(Quadrature, DeterministicAcrossThreadCounts) {
  auto f = [](double x) { return std::sin(50 * x) / (1 + x * x); };
  QuadOptions opt;
  opt.max_panel = 0.01;
  const double serial = integrate(f, -3, 4, opt).value;
  for (unsigned t : {2u, 3u, 8u}) {
    opt.threads = t;
    EXPECT_EQ(integrate(f, -3, 4, opt).value, serial) << t;
  }
}

TEST(PairwiseSum, MatchesNaiveOnIntegers) {
  std::vector<double> v(1000);
  for (int i = 0; i < 1000; ++i) v[i] = i;
  EXPECT_EQ(pairwise_sum(v), 999.0 * 1000.0 / 2.0);
}
