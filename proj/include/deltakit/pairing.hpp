#pragma once

// Pairing of regularized deltas with test functions, the split into a
// regular part and a Dirichlet-integral part, decay-rate fits and limit
// extrapolation.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "families.hpp"
#include "quadrature.hpp"
#include "special.hpp"
#include "testfn.hpp"

namespace deltakit {

struct PairingResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  double parameter = 0.0;  // R or eps; 0 for a plain function
  int panels_used = 0;
};

struct PairingOptions {
  double abs_tol = 1e-11;
  unsigned threads = 1;
};

namespace detail {

inline PairingResult to_pairing(const QuadResult& q, double parameter) {
  return {q.value, q.abs_error_estimate, parameter, q.panels_used};
}

inline std::vector<double> origin_breakpoint(const Interval& support) {
  if (support.lo() < 0.0 && 0.0 < support.hi()) return {0.0};
  return {};
}

}  // namespace detail

/// phi[f]: integral of phi * f over the support of f.
template <class Phi>
PairingResult pair(const Phi& phi, const TestFunction& f, const PairingOptions& opt = {}) {
  const Interval& s = f.support();
  QuadOptions q;
  q.abs_tol = opt.abs_tol;
  q.threads = opt.threads;
  q.max_panel = s.width() / 16.0;
  q.breakpoints = detail::origin_breakpoint(s);
  return detail::to_pairing(integrate([&](double x) { return phi(x) * f(x); }, s.lo(), s.hi(), q),
                            0.0);
}

/// Pairing with sin(Rx)/(pi x); panels are capped at half the period pi/R.
inline PairingResult pair_delta_R(double R, const TestFunction& f, const PairingOptions& opt = {}) {
  detail::require_positive(R, "pair_delta_R");
  const Interval& s = f.support();
  QuadOptions q;
  q.abs_tol = opt.abs_tol;
  q.threads = opt.threads;
  q.max_panel = std::min(std::numbers::pi / R, s.width() / 16.0);
  q.breakpoints = detail::origin_breakpoint(s);
  auto integrand = [R, &f](double x) { return dirichlet_kernel(R, x) * f(x); };
  return detail::to_pairing(integrate(integrand, s.lo(), s.hi(), q), R);
}

/// Pairing with the Lorentz kernel of width eps; the panels are graded
/// geometrically towards the origin starting at scale eps.
inline PairingResult pair_lorentz(double eps, const TestFunction& f, const PairingOptions& opt = {}) {
  detail::require_positive(eps, "pair_lorentz");
  const Interval& s = f.support();
  QuadOptions q;
  q.abs_tol = opt.abs_tol;
  q.threads = opt.threads;
  q.max_panel = s.width() / 16.0;
  q.breakpoints = detail::origin_breakpoint(s);
  for (double r = eps; r < s.width(); r *= 4.0) {
    q.breakpoints.push_back(r);
    q.breakpoints.push_back(-r);
  }
  auto integrand = [eps, &f](double x) { return lorentz_delta(eps, x) * f(x); };
  return detail::to_pairing(integrate(integrand, s.lo(), s.hi(), q), eps);
}

/// The Dirichlet pairing split on the symmetric interval [-M, M] containing
/// the support:
///   regular  = (1/pi) * integral of sin(Rx) (f(x) - f(0))/x
///   singular = (f(0)/pi) * integral of sin(Rx)/x = 2 f(0) Si(RM)/pi.
/// The regular part vanishes as R grows; the singular part tends to f(0).
struct Decomposition {
  double regular = 0.0;
  double singular = 0.0;
  double abs_error_estimate = 0.0;
  double radius = 0.0;

  double sum() const noexcept { return regular + singular; }
};

inline Decomposition pair_decomposed(double R, const TestFunction& f, const PairingOptions& opt = {}) {
  detail::require_positive(R, "pair_decomposed");
  const double M = f.support().symmetric_radius();
  const DifferenceQuotient g{f};
  QuadOptions q;
  q.abs_tol = opt.abs_tol;
  q.threads = opt.threads;
  q.max_panel = std::min(std::numbers::pi / R, M / 8.0);
  q.breakpoints = {0.0, f.support().lo(), f.support().hi()};
  const QuadResult regular =
      integrate([R, &g](double x) { return std::sin(R * x) * g(x); }, -M, M, q);
  Decomposition d;
  d.regular = regular.value / std::numbers::pi;
  d.singular = 2.0 * f(0.0) * si(R * M) / std::numbers::pi;
  d.abs_error_estimate = regular.abs_error_estimate / std::numbers::pi;
  d.radius = M;
  return d;
}

/// Log-log power-law fit error ~ C * param^p.
struct RateFit {
  std::vector<std::pair<double, double>> samples;  // (param, |error|)
  double fitted_exponent = std::numeric_limits<double>::quiet_NaN();
  double fitted_log_constant = std::numeric_limits<double>::quiet_NaN();
  double fit_residual = std::numeric_limits<double>::quiet_NaN();  // RMS in log space
  int excluded = 0;  // samples with zero error, left out of the fit
  // Optional a-priori bound C/param, set by oscillatory_decay.
  double bound_constant = std::numeric_limits<double>::quiet_NaN();
  bool within_bound = true;
};

/// Least-squares fit of log|error| against log(param). Zero errors are
/// excluded and counted; with fewer than two usable samples the exponent
/// stays NaN.
inline RateFit fit_power_law(std::vector<std::pair<double, double>> samples) {
  if (samples.empty()) throw std::invalid_argument("fit_power_law: no samples");
  RateFit fit;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int used = 0;
  for (auto& [p, e] : samples) {
    if (!(p > 0.0)) throw std::invalid_argument("fit_power_law: parameters must be positive");
    e = std::abs(e);
    if (e == 0.0) {
      ++fit.excluded;
      continue;
    }
    const double lx = std::log(p), ly = std::log(e);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++used;
  }
  fit.samples = std::move(samples);
  if (used < 2) return fit;
  const double denom = used * sxx - sx * sx;
  if (denom <= 0.0) return fit;
  fit.fitted_exponent = (used * sxy - sx * sy) / denom;
  fit.fitted_log_constant = (sy - fit.fitted_exponent * sx) / used;
  double ss = 0.0;
  for (const auto& [p, e] : fit.samples) {
    if (e == 0.0) continue;
    const double r = std::log(e) - (fit.fitted_log_constant + fit.fitted_exponent * std::log(p));
    ss += r * r;
  }
  fit.fit_residual = std::sqrt(ss / used);
  return fit;
}

/// I(R) = integral of g(x) sin(Rx) over the interval for each R, with the
/// fitted decay exponent and the integration-by-parts bound
/// |I(R)| <= (|g(a)| + |g(b)| + integral of |g'|) / R.
template <class G>
RateFit oscillatory_decay(const G& g, const Interval& interval, std::span<const double> R_list,
                          const PairingOptions& opt = {}) {
  if (R_list.size() < 2) throw std::invalid_argument("oscillatory_decay: need at least 2 values of R");
  for (std::size_t i = 0; i < R_list.size(); ++i) {
    detail::require_positive(R_list[i], "oscillatory_decay");
    if (i > 0 && !(R_list[i] > R_list[i - 1]))
      throw std::invalid_argument("oscillatory_decay: R values must increase");
  }

  QuadOptions smooth;
  smooth.abs_tol = 1e-10;
  smooth.max_depth = 10;
  smooth.max_panel = interval.width() / 32.0;
  smooth.breakpoints = detail::origin_breakpoint(interval);
  const double variation =
      integrate([&g](double x) { return std::abs(derivative(g, x, 1)); }, interval.lo(),
                interval.hi(), smooth)
          .value;
  const double C = std::abs(g(interval.lo())) + std::abs(g(interval.hi())) + variation;

  std::vector<std::pair<double, double>> samples;
  bool ok = true;
  for (double R : R_list) {
    QuadOptions q;
    q.abs_tol = opt.abs_tol;
    q.threads = opt.threads;
    q.max_panel = std::min(std::numbers::pi / R, interval.width() / 16.0);
    q.breakpoints = smooth.breakpoints;
    const double I =
        integrate([&g, R](double x) { return g(x) * std::sin(R * x); }, interval.lo(), interval.hi(), q)
            .value;
    samples.emplace_back(R, I);
    if (std::abs(I) > C / R * (1.0 + 1e-9) + 1e-12) ok = false;
  }
  RateFit fit = fit_power_law(samples);
  fit.bound_constant = C;
  fit.within_bound = ok;
  // fit_power_law stores |I|; keep the signed values visible to callers.
  fit.samples = std::move(samples);
  return fit;
}

/// Majorant for |lorentz pairing - f(0)|:
///   (S eps/pi)(ln(M^2 + eps^2) - ln eps^2) + |2 atan(M/eps)/pi - 1| |f(0)|
/// with S the sup of |(f(x) - f(0))/x| on [-M, M], sampled on a fine grid.
inline double lorentz_majorant(double eps, const TestFunction& f, int grid = 4001) {
  detail::require_positive(eps, "lorentz_majorant");
  const double M = f.support().symmetric_radius();
  const DifferenceQuotient g{f};
  double S = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double x = -M + 2.0 * M * i / (grid - 1);
    S = std::max(S, std::abs(g(x)));
  }
  const double log_term = std::log(M * M + eps * eps) - 2.0 * std::log(eps);
  return S * eps / std::numbers::pi * log_term +
         std::abs(2.0 * std::atan(M / eps) / std::numbers::pi - 1.0) * std::abs(f(0.0));
}

enum class ExtrapolationModel {
  inverse_param,  // value = L + c / param
  log_corrected,  // value = L + c * eps ln(1/eps), eps = 1/param
};

/// Least-squares fit of value = L + c * basis(param); returns L.
/// Samples are (param, value) with params strictly increasing (pass 1/eps
/// for the Lorentz family).
inline double extrapolate_limit(std::span<const std::pair<double, double>> samples,
                                ExtrapolationModel model = ExtrapolationModel::inverse_param) {
  if (samples.size() < 3) throw std::invalid_argument("extrapolate_limit: need at least 3 samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].first > 0.0)) throw std::invalid_argument("extrapolate_limit: params must be positive");
    if (i > 0 && !(samples[i].first > samples[i - 1].first))
      throw std::invalid_argument("extrapolate_limit: params must be strictly increasing");
  }
  auto basis = [model](double p) {
    if (model == ExtrapolationModel::inverse_param) return 1.0 / p;
    const double eps = 1.0 / p;
    return eps * std::log(p);
  };
  const double n = static_cast<double>(samples.size());
  double sb = 0, sbb = 0, sv = 0, sbv = 0;
  for (const auto& [p, v] : samples) {
    const double b = basis(p);
    sb += b;
    sbb += b * b;
    sv += v;
    sbv += b * v;
  }
  const double det = n * sbb - sb * sb;
  if (!(std::abs(det) > 1e-14 * n * sbb)) throw std::domain_error("extrapolate_limit: singular fit");
  return (sbb * sv - sb * sbv) / det;
}

}  // namespace deltakit
