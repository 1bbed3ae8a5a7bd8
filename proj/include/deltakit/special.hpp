#pragma once

// Sine integral, Dirichlet tails, the sin^2(y)/y^2 integral and the
// two-order double integral of exp(-a x) sin(x) over [0,R]^2.

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "quadrature.hpp"

namespace deltakit {

namespace detail {

inline constexpr double kSiQuadratureLimit = 50.0;

/// sin(t)/t with the removable singularity filled by its Taylor series.
inline double sinc(double t) noexcept {
  if (std::abs(t) < 1e-4) {
    const double t2 = t * t;
    return 1.0 - t2 / 6.0 * (1.0 - t2 / 20.0);
  }
  return std::sin(t) / t;
}

/// sin^2(y)/y^2 with value 1 at y = 0.
inline double sinc_squared(double y) noexcept {
  if (std::abs(y) < 1e-4) {
    const double y2 = y * y;
    return 1.0 - y2 / 3.0 * (1.0 - 2.0 * y2 / 15.0);
  }
  const double s = std::sin(y) / y;
  return s * s;
}

/// Auxiliary functions of the sine integral for large x:
/// Si(x) = pi/2 - f(x) cos x - g(x) sin x, summed as asymptotic series up to
/// the smallest term.
struct SiAuxiliary {
  double f;
  double g;
};

inline SiAuxiliary si_auxiliary(double x) noexcept {
  const double inv2 = 1.0 / (x * x);
  double f_sum = 1.0;
  double g_sum = 1.0;
  double f_term = 1.0;
  double g_term = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double f_next = -f_term * (2.0 * k - 1.0) * (2.0 * k) * inv2;
    const double g_next = -g_term * (2.0 * k) * (2.0 * k + 1.0) * inv2;
    if (std::abs(f_next) >= std::abs(f_term) || std::abs(g_next) >= std::abs(g_term)) break;
    f_sum += f_next;
    g_sum += g_next;
    f_term = f_next;
    g_term = g_next;
    if (std::abs(f_term) < 1e-18 && std::abs(g_term) < 1e-18) break;
  }
  return {f_sum / x, g_sum * inv2};
}

}  // namespace detail

/// Si(x) = integral of sin(t)/t over [0, x]; odd in x.
///
/// |x| <= 50: tabulated Si(k pi/2) plus Gauss-Kronrod quadrature of the
/// remaining partial panel (absolute error below 1e-12). |x| > 50: asymptotic auxiliary-function series, accurate to
/// a few ulps of pi/2 at the switch point and better beyond.
inline double si(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) return -si(-x);
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return std::numbers::pi / 2;
  if (x <= detail::kSiQuadratureLimit) {
    // Si at multiples of pi/2 is tabulated once; each call then integrates
    // a single partial panel.
    constexpr double step = std::numbers::pi / 2;
    constexpr int nodes = static_cast<int>(detail::kSiQuadratureLimit / step) + 2;
    static const std::array<double, nodes> table = [] {
      std::array<double, nodes> t{};
      QuadOptions opt;
      opt.abs_tol = 1e-16;
      for (int k = 1; k < nodes; ++k)
        t[k] = t[k - 1] + integrate(detail::sinc, (k - 1) * step, k * step, opt).value;
      return t;
    }();
    const int k = static_cast<int>(x / step);
    QuadOptions opt;
    opt.abs_tol = 1e-15;
    return table[k] + integrate(detail::sinc, k * step, x, opt).value;
  }
  const auto aux = detail::si_auxiliary(x);
  return std::numbers::pi / 2 - aux.f * std::cos(x) - aux.g * std::sin(x);
}

/// Integral of sin(t)/t over [x, infinity) for x > 0, i.e. pi/2 - Si(x).
/// Bounded in magnitude by 2/x.
inline double dirichlet_tail(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("dirichlet_tail: require x > 0");
  if (x <= detail::kSiQuadratureLimit) return std::numbers::pi / 2 - si(x);
  if (std::isinf(x)) return 0.0;
  const auto aux = detail::si_auxiliary(x);
  return aux.f * std::cos(x) + aux.g * std::sin(x);
}

/// Integral of sin^2(y)/y^2 over [a, b]; b may be +infinity.
inline double sinc_sq_integral(double a, double b) {
  if (!(a >= 0.0)) throw std::invalid_argument("sinc_sq_integral: require a >= 0");
  if (!(b > a)) throw std::invalid_argument("sinc_sq_integral: require b > a");

  QuadOptions opt;
  opt.abs_tol = 1e-14;
  opt.max_panel = std::numbers::pi / 2;

  if (std::isfinite(b)) return integrate(detail::sinc_squared, a, b, opt).value;

  if (a <= detail::kSiQuadratureLimit) {
    if (a == 0.0) return std::numbers::pi / 2;
    return std::numbers::pi / 2 - integrate(detail::sinc_squared, 0.0, a, opt).value;
  }

  // Tail for large a: sin^2 y = (1 - cos 2y)/2, and the integral of
  // exp(2iy) y^-2 over [a, inf) is expanded by repeated integration by parts:
  //   -exp(2ia) * sum_k (2)_k a^{-2-k} / (2i)^{k+1}.
  const std::complex<double> i_omega{0.0, 2.0};
  std::complex<double> term = 1.0 / (i_omega * a * a);
  std::complex<double> sum = term;
  for (int k = 1; k < 200; ++k) {
    const std::complex<double> next = term * (1.0 + k) / (i_omega * a);
    if (std::abs(next) >= std::abs(term)) break;
    sum += next;
    term = next;
    if (std::abs(term) < 1e-20) break;
  }
  const std::complex<double> oscillatory = -std::exp(i_omega * a) * sum;
  return 0.5 / a - 0.5 * oscillatory.real();
}

enum class IntegrationOrder { x_first, alpha_first };

/// S(R): the integral of exp(-a x) sin(x) over the square [0,R]x[0,R],
/// computed as an iterated integral in the requested order. Inner and outer
/// integrals both use the panel engine; the outer panels are at most 0.5 wide.
inline QuadResult fubini_S(double R, IntegrationOrder order) {
  if (!(R > 0.0) || !std::isfinite(R)) throw std::invalid_argument("fubini_S: require R > 0");

  QuadOptions inner;
  inner.abs_tol = 1e-13;
  inner.max_panel = 0.5;
  QuadOptions outer;
  outer.abs_tol = 1e-12;
  outer.max_panel = 0.5;

  double worst_inner = 0.0;
  auto inner_integral = [&](double fixed) {
    QuadResult r;
    if (order == IntegrationOrder::x_first) {
      r = integrate([fixed](double x) { return std::exp(-fixed * x) * std::sin(x); }, 0.0, R,
                    inner);
    } else {
      const double s = std::sin(fixed);
      r = integrate([fixed, s](double a) { return std::exp(-a * fixed) * s; }, 0.0, R, inner);
    }
    worst_inner = std::max(worst_inner, r.abs_error_estimate);
    return r.value;
  };

  QuadResult result = integrate(inner_integral, 0.0, R, outer);
  result.abs_error_estimate += R * worst_inner;
  return result;
}

}  // namespace deltakit
