#pragma once

// Closed-form regularizations of the delta function and their primitives
// anchored at 0.
//
//   Dirichlet (truncated Fourier integral), parameter R > 0:
//     kernel  sin(Rx)/(pi x)
//     step    Si(Rx)/pi
//     ramp    (x/pi) Si(Rx) + (cos(Rx) - 1)/(R pi)
//   Lorentz (exponentially damped Fourier integral), parameter n = 1/eps:
//     kernel  (n/pi) / (1 + n^2 x^2)
//     step    atan(nx)/pi
//     ramp    x atan(nx)/pi - ln(1 + n^2 x^2)/(2 pi n)
//
// Both ramps tend uniformly to |x|/2; both steps tend pointwise to the sign
// step with value 0 at the origin.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

#include "special.hpp"

namespace deltakit {

namespace detail {

inline void require_positive(double p, const char* what) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw std::invalid_argument(std::string(what) + ": parameter must be positive and finite");
  }
}

}  // namespace detail

/// sin(Rx)/(pi x), with value R/pi at x = 0.
inline double dirichlet_kernel(double R, double x) {
  detail::require_positive(R, "dirichlet_kernel");
  const double u = R * x;
  if (std::abs(u) < 1e-4) {
    const double u2 = u * u;
    // sin(u)/u through the u^6 term.
    return R / std::numbers::pi * (1.0 - u2 / 6.0 * (1.0 - u2 / 20.0 * (1.0 - u2 / 42.0)));
  }
  return std::sin(u) / (std::numbers::pi * x);
}

/// Si(n x)/pi, the first primitive of the Dirichlet kernel.
inline double dirichlet_step(double n, double x) {
  detail::require_positive(n, "dirichlet_step");
  return si(n * x) / std::numbers::pi;
}

/// Second primitive of the Dirichlet kernel.
inline double dirichlet_ramp(double n, double x) {
  detail::require_positive(n, "dirichlet_ramp");
  const double u = n * x;
  const double half_sine = std::sin(0.5 * u);
  // cos(u) - 1 = -2 sin^2(u/2) avoids cancellation for small u.
  return x * si(u) / std::numbers::pi - 2.0 * half_sine * half_sine / (n * std::numbers::pi);
}

/// (eps/pi) / (x^2 + eps^2); peak 1/(pi eps) at the origin.
inline double lorentz_delta(double eps, double x) {
  detail::require_positive(eps, "lorentz_delta");
  return eps / (std::numbers::pi * (x * x + eps * eps));
}

/// atan(n x)/pi.
inline double lorentz_step(double n, double x) {
  detail::require_positive(n, "lorentz_step");
  return std::atan(n * x) / std::numbers::pi;
}

/// x atan(nx)/pi - ln(1 + n^2 x^2)/(2 pi n); even in x.
inline double lorentz_ramp(double n, double x) {
  detail::require_positive(n, "lorentz_ramp");
  const double u = n * x;
  return x * std::atan(u) / std::numbers::pi - std::log1p(u * u) / (2.0 * std::numbers::pi * n);
}

enum class FamilyKind { fourier_kernel, lorentz };

inline std::string_view to_string(FamilyKind k) {
  return k == FamilyKind::fourier_kernel ? "fourier" : "lorentz";
}

/// One-parameter family with its first two primitives. The parameter is the
/// sharpness: R for the Dirichlet kernel, n = 1/eps for the Lorentz kernel.
struct RegFamily {
  FamilyKind kind;

  double eval(double lambda, double x) const {
    return kind == FamilyKind::fourier_kernel ? dirichlet_kernel(lambda, x)
                                              : lorentz_delta(1.0 / lambda, x);
  }
  double primitive1(double lambda, double x) const {
    return kind == FamilyKind::fourier_kernel ? dirichlet_step(lambda, x) : lorentz_step(lambda, x);
  }
  double primitive2(double lambda, double x) const {
    return kind == FamilyKind::fourier_kernel ? dirichlet_ramp(lambda, x) : lorentz_ramp(lambda, x);
  }
  /// Level 0 is eval, 1 and 2 the anchored primitives.
  double level(int j, double lambda, double x) const {
    switch (j) {
      case 0: return eval(lambda, x);
      case 1: return primitive1(lambda, x);
      case 2: return primitive2(lambda, x);
      default: throw std::invalid_argument("RegFamily: level must be 0, 1 or 2");
    }
  }

  static RegFamily fourier() { return {FamilyKind::fourier_kernel}; }
  static RegFamily lorentz() { return {FamilyKind::lorentz}; }
};

enum class LimitKind { step_theta, abs_half };

/// Pointwise limits of the primitives: the sign step (-1/2, 0, 1/2) and |x|/2.
struct LimitObject {
  LimitKind kind;

  double operator()(double x) const noexcept {
    if (kind == LimitKind::abs_half) return 0.5 * std::abs(x);
    if (x > 0.0) return 0.5;
    if (x < 0.0) return -0.5;
    return 0.0;
  }
};

inline LimitObject limit_object(LimitKind kind) { return {kind}; }

}  // namespace deltakit
