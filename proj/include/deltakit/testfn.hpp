#pragma once

// Smooth compactly supported test functions built from exp(-1/x).

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

#include "interval.hpp"

namespace deltakit {

/// Below this argument exp(-1/x) underflows to 0 in double; the mollifier
/// returns 0 there by branch. Between it and 1/708 the result is sub-normal.
inline constexpr double kMollifierCutoff = 1.0 / 745.0;

/// exp(-1/x) for x > 0 and exactly 0 for x <= 0.
inline double mollifier(double x) noexcept {
  if (x < kMollifierCutoff) return 0.0;
  return std::exp(-1.0 / x);
}

/// Smooth unit "up" step: 0 for x <= alpha, 1 for x >= beta.
///
/// Evaluated as 1 / (1 + g_beta/f_alpha) with the ratio taken in log space,
/// which equals f_alpha / (f_alpha + g_beta) without ever dividing two
/// underflowed exponentials.
class SmoothStepUp {
 public:
  SmoothStepUp(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(alpha < beta)) throw std::invalid_argument("smooth_step_up: require alpha < beta");
  }

  double operator()(double x) const noexcept {
    if (x <= alpha_) return 0.0;
    if (x >= beta_) return 1.0;
    return 1.0 / (1.0 + std::exp(1.0 / (x - alpha_) - 1.0 / (beta_ - x)));
  }

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

 private:
  double alpha_;
  double beta_;
};

/// Smooth unit "down" step: 1 for x <= gamma, 0 for x >= delta.
class SmoothStepDown {
 public:
  SmoothStepDown(double gamma, double delta) : gamma_(gamma), delta_(delta) {
    if (!(gamma < delta)) throw std::invalid_argument("smooth_step_down: require gamma < delta");
  }

  double operator()(double x) const noexcept {
    if (x <= gamma_) return 1.0;
    if (x >= delta_) return 0.0;
    return 1.0 / (1.0 + std::exp(1.0 / (delta_ - x) - 1.0 / (x - gamma_)));
  }

  double gamma() const noexcept { return gamma_; }
  double delta() const noexcept { return delta_; }

 private:
  double gamma_;
  double delta_;
};

inline SmoothStepUp smooth_step_up(double alpha, double beta) { return {alpha, beta}; }
inline SmoothStepDown smooth_step_down(double gamma, double delta) { return {gamma, delta}; }

/// A smooth function vanishing outside its support interval.
///
/// The wrapped body is only called for points inside the support; outside it
/// the value is exactly 0. Instances are immutable and may be evaluated from
/// several threads at once.
class TestFunction {
 public:
  static constexpr int kDefaultMaxOrder = 4;

  TestFunction(std::function<double(double)> body, Interval support,
               int max_derivative_order = kDefaultMaxOrder)
      : body_(std::move(body)), support_(support), max_order_(max_derivative_order) {
    if (!body_) throw std::invalid_argument("TestFunction: empty body");
    if (max_order_ < 0) throw std::invalid_argument("TestFunction: negative derivative order");
  }

  double operator()(double x) const {
    if (x < support_.lo() || x > support_.hi()) return 0.0;
    return body_(x);
  }

  const Interval& support() const noexcept { return support_; }
  int max_derivative_order() const noexcept { return max_order_; }

  /// x -> f(x - x0).
  TestFunction shifted(double x0) const {
    auto body = body_;
    return {[body, x0](double x) { return body(x - x0); },
            Interval{support_.lo() + x0, support_.hi() + x0}, max_order_};
  }

  /// x -> c * f(x).
  TestFunction scaled(double c) const {
    auto body = body_;
    return {[body, c](double x) { return c * body(x); }, support_, max_order_};
  }

  /// x -> a*f(x) + b*g(x) on the hull of both supports.
  friend TestFunction linear_combination(double a, const TestFunction& f, double b,
                                         const TestFunction& g) {
    return {[a, f, b, g](double x) { return a * f(x) + b * g(x); }, hull(f.support_, g.support_),
            std::min(f.max_order_, g.max_order_)};
  }

 private:
  std::function<double(double)> body_;
  Interval support_;
  int max_order_;
};

/// Product of the up step on [alpha, beta] and the down step on [gamma, delta]:
/// support [alpha, delta], identically 1 on [beta, gamma].
inline TestFunction bump(double alpha, double beta, double gamma, double delta) {
  if (!(alpha < beta && beta < gamma && gamma < delta)) {
    throw std::invalid_argument("bump: require alpha < beta < gamma < delta");
  }
  const SmoothStepUp up{alpha, beta};
  const SmoothStepDown down{gamma, delta};
  return {[up, down](double x) { return up(x) * down(x); }, Interval{alpha, delta}};
}

namespace detail {

inline double fd_step(double x, int order) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double base = order == 1 ? std::cbrt(eps) : std::pow(eps, 1.0 / (order + 2));
  const double h = base * std::max(1.0, std::abs(x));
  // Make x + h exactly representable.
  volatile double xh = x + h;
  return xh - x;
}

template <class F>
double central_difference(const F& f, double x, double h, int order) {
  switch (order) {
    case 1:
      return (f(x + h) - f(x - h)) / (2.0 * h);
    case 2:
      return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
    case 3:
      return (f(x + 2 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2 * h)) / (2.0 * h * h * h);
    case 4:
      return (f(x + 2 * h) - 4.0 * f(x + h) + 6.0 * f(x) - 4.0 * f(x - h) + f(x - 2 * h)) /
             (h * h * h * h);
    default:
      throw std::invalid_argument("derivative: unsupported order " + std::to_string(order));
  }
}

}  // namespace detail

/// Derivative of order 1..max_order at x by central differences with one
/// Richardson step (O(h^4)).
template <class F>
double derivative(const F& f, double x, int order, int max_order = TestFunction::kDefaultMaxOrder) {
  if (order < 1 || order > max_order || order > 4) {
    throw std::invalid_argument("derivative: order " + std::to_string(order) +
                                " outside [1, " + std::to_string(std::min(max_order, 4)) + "]");
  }
  const double h = detail::fd_step(x, order);
  const double coarse = detail::central_difference(f, x, h, order);
  const double fine = detail::central_difference(f, x, 0.5 * h, order);
  return (4.0 * fine - coarse) / 3.0;
}

inline double derivative(const TestFunction& f, double x, int order) {
  return derivative(f, x, order, f.max_derivative_order());
}

/// g(x) = (f(x) - f(0)) / x with g(0) = f'(0).
///
/// Near 0 (|x| below 1e-6 times the support width) the quotient is replaced
/// by f'(0) + x f''(0)/2.
class DifferenceQuotient {
 public:
  explicit DifferenceQuotient(TestFunction f)
      : f_(std::move(f)),
        f0_(f_(0.0)),
        d1_(derivative(f_, 0.0, 1)),
        d2_(f_.max_derivative_order() >= 2 ? derivative(f_, 0.0, 2) : 0.0),
        switch_radius_(1e-6 * f_.support().width()) {}

  double operator()(double x) const {
    if (std::abs(x) < switch_radius_) return d1_ + 0.5 * x * d2_;
    return (f_(x) - f0_) / x;
  }

  double value_at_zero() const noexcept { return d1_; }
  double switch_radius() const noexcept { return switch_radius_; }
  const TestFunction& function() const noexcept { return f_; }

 private:
  TestFunction f_;
  double f0_;
  double d1_;
  double d2_;
  double switch_radius_;
};

inline DifferenceQuotient difference_quotient(const TestFunction& f) { return DifferenceQuotient{f}; }

}  // namespace deltakit
