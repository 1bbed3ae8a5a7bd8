#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace deltakit {

/// Closed interval [lo, hi] with lo < hi.
class Interval {
 public:
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!(std::isfinite(lo) && std::isfinite(hi)) || !(lo < hi)) {
      throw std::invalid_argument("Interval: require finite lo < hi, got [" + std::to_string(lo) +
                                  ", " + std::to_string(hi) + "]");
    }
  }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double width() const noexcept { return hi_ - lo_; }
  double midpoint() const noexcept { return 0.5 * (lo_ + hi_); }
  bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }

  /// Smallest symmetric interval [-M, M] containing this one.
  double symmetric_radius() const noexcept { return std::max(std::abs(lo_), std::abs(hi_)); }

  /// `n` equally spaced points including both endpoints.
  template <class Out>
  void uniform_grid(int n, Out out) const {
    if (n < 2) throw std::invalid_argument("uniform_grid: need at least 2 points");
    const double step = width() / (n - 1);
    for (int i = 0; i < n; ++i) *out++ = (i == n - 1) ? hi_ : lo_ + i * step;
  }

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double lo_;
  double hi_;
};

inline Interval hull(const Interval& a, const Interval& b) {
  return {std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi())};
}

}  // namespace deltakit
