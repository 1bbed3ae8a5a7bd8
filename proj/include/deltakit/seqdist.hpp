#pragma once

// Fundamental sequences: sequences of continuous functions phi_n whose k-th
// primitives (anchored at 0) converge almost uniformly. Two sequences are
// equivalent when their k-th primitives share the limit; the derivative of a
// sequence shifts its primitive tower by one level.
//
// "Almost uniform" is checked on finitely many bounded intervals and on a
// finite ladder of indices; every check returns a GridReport with the sup
// errors it saw.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "families.hpp"
#include "interval.hpp"
#include "pairing.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "testfn.hpp"

namespace deltakit {

enum class SequenceKind { fourier_kernel, lorentz, generic };

class FundamentalSequence {
 public:
  using Level = std::function<double(double n, double x)>;
  using Limit = std::function<double(double x)>;

  /// `tower[j]` is the j-th anchored primitive of the terms (tower[0] is the
  /// term itself). `derivatives[i]` is the closed-form (i+1)-th derivative of
  /// the term, when known. `order` is the level whose convergence is claimed.
  FundamentalSequence(std::string name, std::vector<Level> tower, int order,
                      std::optional<Limit> limit = std::nullopt,
                      SequenceKind kind = SequenceKind::generic, std::vector<Level> derivatives = {})
      : name_(std::move(name)),
        tower_(std::move(tower)),
        lifted_(tower_.size(), false),
        derivatives_(std::move(derivatives)),
        order_(order),
        limit_(std::move(limit)),
        kind_(kind) {
    if (tower_.empty()) throw std::invalid_argument("FundamentalSequence: empty tower");
    for (const auto& l : tower_)
      if (!l) throw std::invalid_argument("FundamentalSequence: empty level");
    if (order_ < 0 || order_ >= static_cast<int>(tower_.size())) {
      throw std::invalid_argument("FundamentalSequence: order " + std::to_string(order_) +
                                  " not in the tower");
    }
  }

  const std::string& name() const noexcept { return name_; }
  int order() const noexcept { return order_; }
  int depth() const noexcept { return static_cast<int>(tower_.size()) - 1; }
  SequenceKind kind() const noexcept { return kind_; }
  const std::optional<Limit>& limit() const noexcept { return limit_; }
  bool level_is_lifted(int j) const { return lifted_.at(j); }

  double term(double n, double x) const { return tower_[0](n, x); }

  double primitive(int level, double n, double x) const {
    if (level < 0 || level > depth()) {
      throw std::out_of_range("FundamentalSequence: level " + std::to_string(level) +
                              " beyond depth " + std::to_string(depth()));
    }
    return tower_[level](n, x);
  }

  /// Same tower, different claimed order; the limit must be restated since it
  /// belongs to a particular level.
  FundamentalSequence at_order(int k, std::optional<Limit> limit = std::nullopt) const {
    FundamentalSequence s = lifted_to(k);
    s.order_ = k;
    s.limit_ = std::move(limit);
    return s;
  }

  /// Appends numerically integrated levels until the tower reaches `level`.
  /// Each new level is the anchored quadrature of the one below (tolerance
  /// 1e-10, panels no wider than pi/n).
  FundamentalSequence lifted_to(int level) const {
    FundamentalSequence s = *this;
    while (s.depth() < level) {
      Level below = s.tower_.back();
      s.tower_.push_back([below](double n, double x) {
        QuadOptions q;
        q.abs_tol = 1e-10;
        q.max_panel = std::numbers::pi / std::max(1.0, n);
        return integrate([&](double t) { return below(n, t); }, 0.0, x, q).value;
      });
      s.lifted_.push_back(true);
    }
    return s;
  }

  /// Values of `level` at ascending grid points. Lifted levels are built by
  /// cumulative integration between neighbouring grid points, outward from 0.
  std::vector<double> sample(int level, double n, std::span<const double> grid) const {
    std::vector<double> out(grid.size());
    if (!lifted_.at(level)) {
      for (std::size_t i = 0; i < grid.size(); ++i) out[i] = tower_[level](n, grid[i]);
      return out;
    }
    const Level& below = tower_[level - 1];
    QuadOptions q;
    q.abs_tol = 1e-12;
    q.max_panel = std::numbers::pi / std::max(1.0, n);
    auto piece = [&](double a, double b) {
      return integrate([&](double t) { return below(n, t); }, a, b, q).value;
    };
    const auto first_nonneg = std::lower_bound(grid.begin(), grid.end(), 0.0) - grid.begin();
    const auto start = static_cast<std::size_t>(first_nonneg);
    double acc = 0.0;
    double prev = 0.0;
    for (std::size_t i = start; i < grid.size(); ++i) {
      acc += piece(prev, grid[i]);
      prev = grid[i];
      out[i] = acc;
    }
    acc = 0.0;
    prev = 0.0;
    for (std::size_t i = start; i-- > 0;) {
      acc += piece(prev, grid[i]);
      prev = grid[i];
      out[i] = acc;
    }
    return out;
  }

  friend FundamentalSequence derivative(const FundamentalSequence& seq);

 private:
  std::string name_;
  std::vector<Level> tower_;
  std::vector<bool> lifted_;
  std::vector<Level> derivatives_;
  int order_;
  std::optional<Limit> limit_;
  SequenceKind kind_;
};

/// Shifts the tower down one level: the new term is the derivative of the old
/// one, and the old term becomes the first primitive. The claimed order grows
/// by one and the limit is unchanged since it belongs to the same function.
/// A closed-form derivative is used when the sequence carries one; otherwise
/// the term is differentiated numerically.
inline FundamentalSequence derivative(const FundamentalSequence& seq) {
  FundamentalSequence d = seq;
  FundamentalSequence::Level new_term;
  if (!seq.derivatives_.empty()) {
    new_term = seq.derivatives_.front();
    d.derivatives_.erase(d.derivatives_.begin());
  } else {
    auto old = seq.tower_.front();
    new_term = [old](double n, double x) {
      return derivative([&](double t) { return old(n, t); }, x, 1);
    };
  }
  d.tower_.insert(d.tower_.begin(), std::move(new_term));
  d.lifted_.insert(d.lifted_.begin(), false);
  d.order_ = seq.order_ + 1;
  d.name_ = seq.name_ + "'";
  return d;
}

// Built-in sequences ---------------------------------------------------------

/// sin(nx)/(pi x) with primitives Si(nx)/pi and the ramp; order 2, limit |x|/2.
inline FundamentalSequence dirichlet_sequence() {
  return {"dirichlet",
          {[](double n, double x) { return dirichlet_kernel(n, x); },
           [](double n, double x) { return dirichlet_step(n, x); },
           [](double n, double x) { return dirichlet_ramp(n, x); }},
          2,
          limit_object(LimitKind::abs_half),
          SequenceKind::fourier_kernel};
}

/// (n/pi)/(1 + n^2 x^2) with primitives atan(nx)/pi and the ramp; order 2.
inline FundamentalSequence lorentz_sequence() {
  return {"lorentz",
          {[](double n, double x) { return lorentz_delta(1.0 / n, x); },
           [](double n, double x) { return lorentz_step(n, x); },
           [](double n, double x) { return lorentz_ramp(n, x); }},
          2,
          limit_object(LimitKind::abs_half),
          SequenceKind::lorentz};
}

/// Si(nx)/pi as a sequence in its own right; its first primitive converges.
inline FundamentalSequence dirichlet_step_sequence() {
  return {"dirichlet_step",
          {[](double n, double x) { return dirichlet_step(n, x); },
           [](double n, double x) { return dirichlet_ramp(n, x); }},
          1,
          limit_object(LimitKind::abs_half),
          SequenceKind::generic,
          {[](double n, double x) { return dirichlet_kernel(n, x); }}};
}

/// The ramp itself, converging uniformly to |x|/2 at order 0.
inline FundamentalSequence dirichlet_ramp_sequence() {
  return {"dirichlet_ramp",
          {[](double n, double x) { return dirichlet_ramp(n, x); }},
          0,
          limit_object(LimitKind::abs_half),
          SequenceKind::generic,
          {[](double n, double x) { return dirichlet_step(n, x); },
           [](double n, double x) { return dirichlet_kernel(n, x); }}};
}

/// n cos(nx) with anchored primitives sin(nx) and (1 - cos nx)/n; limit 0.
inline FundamentalSequence oscillating_sequence() {
  return {"n_cos_nx",
          {[](double n, double x) { return n * std::cos(n * x); },
           [](double n, double x) { return std::sin(n * x); },
           [](double n, double x) {
             const double s = std::sin(0.5 * n * x);
             return 2.0 * s * s / n;
           }},
          2,
          [](double) { return 0.0; }};
}

/// -cos(nx)/n, uniformly convergent to 0 with sup error exactly 1/n.
inline FundamentalSequence cosine_decay_sequence() {
  return {"minus_cos_nx_over_n",
          {[](double n, double x) { return -std::cos(n * x) / n; }},
          0,
          [](double) { return 0.0; },
          SequenceKind::generic,
          {[](double n, double x) { return std::sin(n * x); }}};
}

/// The constant sequence of a continuous function.
inline FundamentalSequence constant_sequence(std::string name, std::function<double(double)> phi) {
  return {std::move(name), {[phi](double, double x) { return phi(x); }}, 0, phi};
}

inline FundamentalSequence zero_sequence() {
  return {"zero",
          {[](double, double) { return 0.0; }},
          0,
          [](double) { return 0.0; },
          SequenceKind::generic,
          {[](double, double) { return 0.0; }, [](double, double) { return 0.0; }}};
}

// Checks -----------------------------------------------------------------------

struct GridReport {
  Interval interval{-5.0, 5.0};
  int grid_points = 0;
  std::vector<double> params;
  std::vector<double> sup_error;
  std::vector<double> bound;  // empty when no per-n bound applies
  bool verdict = false;
  std::string bound_used;
};

struct CheckOptions {
  int grid = 2001;
  unsigned threads = 1;
  std::vector<double> params;  // index ladder; default 1, 2, 4, ..., n_max
  std::function<double(double n)> bound;  // optional a-priori sup bound
  std::string bound_description;
};

namespace detail {

inline std::vector<double> doubling_ladder(double n_max) {
  std::vector<double> out;
  for (double n = 1.0; n < n_max; n *= 2.0) out.push_back(n);
  out.push_back(n_max);
  return out;
}

inline std::vector<double> ladder_for(double n_max, const CheckOptions& opt) {
  if (!opt.params.empty()) return opt.params;
  if (!(n_max >= 2.0)) throw std::invalid_argument("check: n_max must be at least 2");
  return doubling_ladder(n_max);
}

inline std::vector<double> grid_points(const Interval& iv, int n) {
  std::vector<double> g;
  g.reserve(n);
  iv.uniform_grid(n, std::back_inserter(g));
  return g;
}

inline double sup_abs_diff(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

inline bool settles(const std::vector<double>& e, double tol) {
  if (e.empty()) return false;
  const bool decreased = e.back() < e.front() || e.back() == 0.0 || e.size() == 1;
  return decreased && e.back() <= tol;
}

inline void apply_bound(GridReport& r, const CheckOptions& opt) {
  if (!opt.bound) return;
  r.bound_used = opt.bound_description.empty() ? "caller-supplied bound" : opt.bound_description;
  for (std::size_t i = 0; i < r.params.size(); ++i) {
    r.bound.push_back(opt.bound(r.params[i]));
    if (r.sup_error[i] > r.bound.back()) r.verdict = false;
  }
}

}  // namespace detail

/// Sup-norm check that the k-th primitives settle on the interval. With a
/// declared limit: sup |Phi_n - Phi| must fall below tol by the last index.
/// Without one: the Cauchy diameter of the tail {Phi_m : m >= n} over the
/// ladder must fall below tol.
inline GridReport check_fundamental(const FundamentalSequence& seq, const Interval& interval,
                                    double n_max, double tol, const CheckOptions& opt = {}) {
  GridReport r;
  r.interval = interval;
  r.grid_points = opt.grid;
  r.params = detail::ladder_for(n_max, opt);
  const auto grid = detail::grid_points(interval, opt.grid);
  const int k = seq.order();

  std::vector<std::vector<double>> values(r.params.size());
  parallel_for(r.params.size(), opt.threads,
               [&](std::size_t i) { values[i] = seq.sample(k, r.params[i], grid); });

  if (seq.limit()) {
    std::vector<double> target(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j) target[j] = (*seq.limit())(grid[j]);
    for (const auto& v : values) r.sup_error.push_back(detail::sup_abs_diff(v, target));
    r.bound_used = "sup |Phi_n - Phi|";
  } else {
    if (r.params.size() < 2) throw std::invalid_argument("check_fundamental: Cauchy check needs two indices");
    // diam[i] = max over i <= a < b of sup |Phi_a - Phi_b|, built from the back.
    std::vector<double> diam(r.params.size(), 0.0);
    for (std::size_t i = r.params.size() - 1; i-- > 0;) {
      double d = diam[i + 1];
      for (std::size_t j = i + 1; j < r.params.size(); ++j)
        d = std::max(d, detail::sup_abs_diff(values[i], values[j]));
      diam[i] = d;
    }
    diam.pop_back();
    r.params.pop_back();
    r.sup_error = std::move(diam);
    r.bound_used = "Cauchy tail diameter";
  }
  r.verdict = detail::settles(r.sup_error, tol);
  detail::apply_bound(r, opt);
  return r;
}

/// Almost uniform convergence, checked on the nested intervals [-M, M] for
/// M in {1, 5, 10}. One report per interval.
inline std::vector<GridReport> check_almost_uniform(const FundamentalSequence& seq, double n_max, double tol,
                                                    const CheckOptions& opt = {}) {
  std::vector<GridReport> out;
  for (double M : {1.0, 5.0, 10.0}) out.push_back(check_fundamental(seq, Interval{-M, M}, n_max, tol, opt));
  return out;
}

/// Lifts both sequences to a common order and checks sup |Phi_n - Psi_n| -> 0.
inline GridReport check_equivalent(const FundamentalSequence& a, const FundamentalSequence& b,
                                   const Interval& interval, double n_max, double tol,
                                   const CheckOptions& opt = {}) {
  const int k = std::max(a.order(), b.order());
  const FundamentalSequence la = a.lifted_to(k);
  const FundamentalSequence lb = b.lifted_to(k);
  GridReport r;
  r.interval = interval;
  r.grid_points = opt.grid;
  r.params = detail::ladder_for(n_max, opt);
  const auto grid = detail::grid_points(interval, opt.grid);
  r.sup_error.assign(r.params.size(), 0.0);
  parallel_for(r.params.size(), opt.threads, [&](std::size_t i) {
    const auto va = la.sample(k, r.params[i], grid);
    const auto vb = lb.sample(k, r.params[i], grid);
    r.sup_error[i] = detail::sup_abs_diff(va, vb);
  });
  r.bound_used = "sup |Phi_n - Psi_n| at order " + std::to_string(k);
  r.verdict = detail::settles(r.sup_error, tol);
  detail::apply_bound(r, opt);
  return r;
}

/// (-1)^k * integral of Phi f^(k) over the support of f, where Phi is the
/// declared limit of the k-th primitives. Without a declared limit the
/// integrals against Phi_n are extrapolated in 1/n over `params`
/// (default 100, 200, 400, 800).
inline double pair_by_parts(const FundamentalSequence& seq, const TestFunction& f,
                            std::vector<double> params = {}) {
  const int k = seq.order();
  if (k > f.max_derivative_order()) {
    throw std::invalid_argument("pair_by_parts: order " + std::to_string(k) +
                                " exceeds the test function's derivative order");
  }
  const Interval& s = f.support();
  // f^(k) comes from finite differences, whose noise (about 1e-8 at k = 2)
  // sets the attainable tolerance; the depth cap stops bisection chasing it.
  QuadOptions q;
  q.abs_tol = 1e-9;
  q.max_depth = 10;
  q.max_panel = s.width() / 32.0;
  q.breakpoints = detail::origin_breakpoint(s);
  auto fk = [&](double x) { return k == 0 ? f(x) : derivative(f, x, k); };
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;

  if (seq.limit()) {
    const auto& phi = *seq.limit();
    return sign * integrate([&](double x) { return phi(x) * fk(x); }, s.lo(), s.hi(), q).value;
  }
  if (params.empty()) params = {100.0, 200.0, 400.0, 800.0};
  std::vector<std::pair<double, double>> samples;
  for (double n : params) {
    QuadOptions qn = q;
    qn.max_panel = std::min(q.max_panel, std::numbers::pi / n);
    const double v =
        integrate([&](double x) { return seq.primitive(k, n, x) * fk(x); }, s.lo(), s.hi(), qn).value;
    samples.emplace_back(n, sign * v);
  }
  return extrapolate_limit(samples);
}

/// Restriction to R \ {0}: checks that the sequence tends to 0 away from the
/// origin on |x| in [a, a + 5].
///  - Lorentz: sup |term_n| against the bound term_n(a) (the kernel decreases in |x|).
///  - Fourier kernel: sup |theta_n - theta| against 2/(pi n a), since the first
///    primitive is what converges there.
///  - Generic: sup |term_n| must settle below tol.
inline GridReport restrict_check_zero(const FundamentalSequence& seq, double a, double n_max,
                                      double tol = 1e-2, const CheckOptions& opt = {}) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("restrict_check_zero: require a > 0");
  GridReport r;
  r.interval = Interval{a, a + 5.0};
  r.grid_points = 2 * opt.grid;
  r.params = detail::ladder_for(n_max, opt);
  auto right = detail::grid_points(r.interval, opt.grid);
  std::vector<double> points;
  for (double x : right) points.push_back(-x);
  points.insert(points.end(), right.begin(), right.end());

  const bool fourier = seq.kind() == SequenceKind::fourier_kernel;
  const LimitObject step = limit_object(LimitKind::step_theta);
  r.sup_error.assign(r.params.size(), 0.0);
  parallel_for(r.params.size(), opt.threads, [&](std::size_t i) {
    const double n = r.params[i];
    double s = 0.0;
    for (double x : points) {
      const double v = fourier ? seq.primitive(1, n, x) - step(x) : seq.term(n, x);
      s = std::max(s, std::abs(v));
    }
    r.sup_error[i] = s;
  });

  switch (seq.kind()) {
    case SequenceKind::lorentz:
      r.bound_used = "|term_n(x)| <= term_n(a)";
      for (double n : r.params) r.bound.push_back(seq.term(n, a));
      break;
    case SequenceKind::fourier_kernel:
      r.bound_used = "|theta_n(x) - theta(x)| <= 2/(pi n a)";
      for (double n : r.params) r.bound.push_back(2.0 / (std::numbers::pi * n * a));
      break;
    case SequenceKind::generic:
      r.bound_used = "sup |term_n| <= tol";
      break;
  }
  if (r.bound.empty()) {
    r.verdict = detail::settles(r.sup_error, tol);
  } else {
    r.verdict = r.sup_error.back() < r.sup_error.front() || r.sup_error.back() == 0.0;
    for (std::size_t i = 0; i < r.params.size(); ++i)
      if (r.sup_error[i] > r.bound[i] * (1.0 + 1e-12)) r.verdict = false;
  }
  return r;
}

}  // namespace deltakit
