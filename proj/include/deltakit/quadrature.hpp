#pragma once

// Adaptive Gauss-Kronrod (7/15) panel quadrature.
//
// The interval is first cut at the caller's breakpoints and then into panels
// no wider than `max_panel`. Each initial panel is refined independently by
// bisection until its embedded error estimate |K15 - G7| meets its share of
// the tolerance. Capping the initial panel width at half an oscillation period
// keeps oscillatory integrands such as sin(Rx)/x resolved without Filon-type
// rules.
//
// Leaf contributions are combined by pairwise summation in left-to-right
// order, so the result is bit-for-bit identical for any thread count.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "parallel.hpp"

namespace deltakit {

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int panels_used = 0;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct QuadOptions {
  double abs_tol = 1e-12;
  double rel_tol = 0.0;
  double max_panel = std::numeric_limits<double>::infinity();
  int max_depth = 26;
  unsigned threads = 1;
  std::vector<double> breakpoints;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
  double value;
  double error;
  double abs_value;  // integral of |f|, used for the round-off floor
};

template <class F>
PanelEstimate gauss_kronrod15(const F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  double abs_sum = std::abs(fc) * kKronrodWeights[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kKronrodWeights[j] * (f1 + f2);
    abs_sum += kKronrodWeights[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * (f1 + f2);
  }
  if (!std::isfinite(kronrod)) {
    throw QuadratureError("quadrature: non-finite integrand on [" + std::to_string(a) + ", " +
                          std::to_string(b) + "]");
  }
  return {kronrod * half, std::abs((kronrod - gauss) * half), abs_sum * std::abs(half)};
}

struct PanelSum {
  std::vector<double> leaves;
  double error = 0.0;
};

template <class F>
void refine(const F& f, double a, double b, double tol, double rel_tol, int depth, PanelSum& out) {
  const PanelEstimate est = gauss_kronrod15(f, a, b);
  const double roundoff_floor = 50.0 * std::numeric_limits<double>::epsilon() * est.abs_value;
  const double target = std::max(tol, rel_tol * std::abs(est.value));
  const double mid = 0.5 * (a + b);
  if (est.error <= target || est.error <= roundoff_floor || depth <= 0 || mid <= a || mid >= b) {
    out.leaves.push_back(est.value);
    out.error += est.error;
    return;
  }
  refine(f, a, mid, 0.5 * tol, rel_tol, depth - 1, out);
  refine(f, mid, b, 0.5 * tol, rel_tol, depth - 1, out);
}

/// Breakpoints plus equal subdivision so no panel exceeds max_panel.
inline std::vector<double> initial_knots(double a, double b, const QuadOptions& opt) {
  std::vector<double> cuts{a, b};
  for (double p : opt.breakpoints)
    if (p > a && p < b) cuts.push_back(p);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<double> knots{cuts.front()};
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    std::size_t pieces = 1;
    if (std::isfinite(opt.max_panel) && opt.max_panel > 0.0)
      pieces = static_cast<std::size_t>(std::ceil((hi - lo) / opt.max_panel));
    pieces = std::max<std::size_t>(pieces, 1);
    for (std::size_t k = 1; k < pieces; ++k)
      knots.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(pieces));
    knots.push_back(hi);
  }
  return knots;
}

}  // namespace detail

/// Integrates f over [a, b]. Reversed limits negate the result.
template <class F>
QuadResult integrate(const F& f, double a, double b, const QuadOptions& opt = {}) {
  if (!(std::isfinite(a) && std::isfinite(b))) {
    throw std::invalid_argument("integrate: limits must be finite");
  }
  if (a == b) return {0.0, 0.0, 1};
  if (a > b) {
    QuadResult r = integrate(f, b, a, opt);
    r.value = -r.value;
    return r;
  }
  if (!(opt.abs_tol > 0.0) && !(opt.rel_tol > 0.0)) {
    throw std::invalid_argument("integrate: need a positive tolerance");
  }

  const std::vector<double> knots = detail::initial_knots(a, b, opt);
  const std::size_t panels = knots.size() - 1;
  const double total = b - a;
  std::vector<detail::PanelSum> parts(panels);

  parallel_for(panels, opt.threads, [&](std::size_t i) {
    const double lo = knots[i];
    const double hi = knots[i + 1];
    detail::refine(f, lo, hi, opt.abs_tol * (hi - lo) / total, opt.rel_tol, opt.max_depth,
                   parts[i]);
  });

  std::vector<double> leaves;
  QuadResult result;
  for (const auto& p : parts) {
    leaves.insert(leaves.end(), p.leaves.begin(), p.leaves.end());
    result.abs_error_estimate += p.error;
  }
  result.value = pairwise_sum(leaves);
  result.panels_used = static_cast<int>(leaves.size());
  return result;
}

}  // namespace deltakit
