#pragma once

// Command implementations for the deltakit CLI. Each command writes its
// report to the given stream and returns the process exit status:
// 0 all checks passed, 1 a bound or tolerance failed, 2 invalid configuration.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <deltakit/deltakit.hpp>
#include <json.hpp>

namespace deltakit::cli {

using json = nlohmann::ordered_json;

enum ExitStatus : int { kPass = 0, kFail = 1, kConfigError = 2 };

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string command;
  std::string family = "fourier";
  std::vector<double> params;
  std::vector<double> bump{-2.0, -1.0, 1.0, 2.0};
  double shift = 0.0;
  std::optional<Interval> interval;
  int grid = 2001;
  std::optional<double> tolerance;
  std::string certificate;
  int fig = 0;
  std::optional<double> a;
  std::optional<double> n_max;
  std::string output_path;
  std::string format = "json";
  unsigned threads = 1;

  void validate() const {
    if (grid < 2) throw ConfigError("--grid must be at least 2");
    if (tolerance && !(*tolerance > 0.0)) throw ConfigError("--tol must be positive");
    if (format != "csv" && format != "json") throw ConfigError("--format must be csv or json");
    if (family != "fourier" && family != "lorentz") throw ConfigError("--family must be fourier or lorentz");
  }
};

/// Splits "a,b,c" into doubles.
inline std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(std::string(flag) + ": cannot parse '" + item + "' as a number");
    }
  }
  if (out.empty()) throw ConfigError(std::string(flag) + ": empty list");
  return out;
}

/// Shortest text that round-trips: 17 significant digits.
inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline json config_echo(const RunConfig& c) {
  json j;
  j["family"] = c.family;
  j["params"] = c.params;
  j["bump"] = c.bump;
  j["shift"] = c.shift;
  if (c.interval) j["interval"] = {c.interval->lo(), c.interval->hi()};
  j["grid"] = c.grid;
  if (c.tolerance) j["tol"] = *c.tolerance;
  if (!c.certificate.empty()) j["certificate"] = c.certificate;
  if (c.fig != 0) j["fig"] = c.fig;
  if (c.a) j["a"] = *c.a;
  if (c.n_max) j["n_max"] = *c.n_max;
  return j;
}

inline TestFunction configured_bump(const RunConfig& c) {
  if (c.bump.size() != 4) throw ConfigError("--bump needs exactly four values a,b,c,d");
  try {
    return deltakit::bump(c.bump[0], c.bump[1], c.bump[2], c.bump[3]).shifted(c.shift);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

inline int emit(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.output_path.empty()) {
    out << text;
    return kPass;
  }
  std::ofstream file(c.output_path, std::ios::binary);
  if (!file) throw ConfigError("cannot open --out path '" + c.output_path + "'");
  file << text;
  return kPass;
}

}  // namespace detail

/// Pairs the configured bump with the chosen family at each parameter and
/// extrapolates to the limit, which must match f(0) within --tol.
inline int cmd_pair(RunConfig c, std::ostream& out) {
  c.validate();
  const bool fourier = c.family == "fourier";
  if (c.params.empty()) {
    c.params = fourier ? std::vector<double>{100, 200, 400, 800}
                       : std::vector<double>{1e-1, 1e-2, 1e-3, 1e-4};
  }
  for (double p : c.params)
    if (!(p > 0.0) || !std::isfinite(p)) throw ConfigError("--params must be positive");
  if (c.params.size() < 3) throw ConfigError("pair: extrapolation needs at least 3 parameters");
  const double tol = c.tolerance.value_or(1e-3);
  const TestFunction f = detail::configured_bump(c);
  const double f0 = f(0.0);

  PairingOptions opt;
  opt.threads = c.threads;
  std::vector<PairingResult> results;
  std::vector<std::pair<double, double>> samples;  // (sharpness, value)
  for (double p : c.params) {
    results.push_back(fourier ? pair_delta_R(p, f, opt) : pair_lorentz(p, f, opt));
    samples.emplace_back(fourier ? p : 1.0 / p, results.back().value);
  }
  std::sort(samples.begin(), samples.end());
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (samples[i].first == samples[i - 1].first) throw ConfigError("--params must be distinct");
  const double limit = extrapolate_limit(samples);
  const double limit_error = std::abs(limit - f0);
  const bool pass = limit_error <= tol;

  std::ostringstream text;
  if (c.format == "csv") {
    text << "param,value,abs_error_estimate\n";
    for (const auto& r : results)
      text << format_real(r.parameter) << ',' << format_real(r.value) << ','
           << format_real(r.abs_error_estimate) << '\n';
    text << "limit," << format_real(limit) << ",\n";
    text << "f0," << format_real(f0) << ",\n";
  } else {
    json j;
    j["command"] = "pair";
    j["config"] = detail::config_echo(c);
    j["results"] = json::array();
    for (const auto& r : results) {
      j["results"].push_back({{"param", r.parameter},
                              {"value", r.value},
                              {"abs_error_estimate", r.abs_error_estimate},
                              {"panels_used", r.panels_used}});
    }
    j["limit"] = limit;
    j["f0"] = f0;
    j["abs_limit_error"] = limit_error;
    j["verdict"] = pass ? "pass" : "fail";
    text << j.dump(2) << '\n';
  }
  detail::emit(c, out, text.str());
  return pass ? kPass : kFail;
}

namespace detail {

struct CheckLine {
  std::string label;
  double value;
  double bound;
  bool pass;
};

inline json report_json(const GridReport& r) {
  json j;
  j["interval"] = {r.interval.lo(), r.interval.hi()};
  j["grid_points"] = r.grid_points;
  j["params"] = r.params;
  j["sup_error"] = r.sup_error;
  if (!r.bound.empty()) j["bound"] = r.bound;
  j["bound_used"] = r.bound_used;
  j["verdict"] = r.verdict ? "pass" : "fail";
  return j;
}

inline std::vector<TestFunction> standard_corpus() {
  return {bump(-2.0, -1.0, 1.0, 2.0), bump(-1.0, 1.0, 2.0, 3.0), bump(1.0, 1.3, 1.7, 2.0)};
}

}  // namespace detail

/// Runs one named certificate and reports a machine-readable verdict.
inline int cmd_certify(RunConfig c, std::ostream& out) {
  c.validate();
  const std::string& name = c.certificate;
  std::vector<detail::CheckLine> lines;
  std::optional<GridReport> report;
  CheckOptions opt;
  opt.grid = c.grid;
  opt.threads = c.threads;

  if (name == "lemma4") {
    const int n_max = static_cast<int>(c.n_max.value_or(200));
    if (n_max < 2) throw ConfigError("--n-max must be at least 2");
    for (int n = 1; n <= n_max; ++n) opt.params.push_back(n);
    opt.bound = [](double n) { return 2.0 / (n * std::numbers::pi) + 1e-9; };
    opt.bound_description = "2/(n pi) + 1e-9";
    const Interval iv = c.interval.value_or(Interval{-5.0, 5.0});
    report = check_fundamental(dirichlet_sequence(), iv, n_max, opt.bound(n_max), opt);
  } else if (name == "lemma5_rate") {
    if (c.params.empty()) c.params = {1e-1, 1e-2, 1e-3, 1e-4};
    for (const auto& f : detail::standard_corpus()) {
      for (double eps : c.params) {
        if (!(eps > 0.0)) throw ConfigError("--params must be positive");
        const double err = std::abs(pair_lorentz(eps, f).value - f(0.0));
        const double bound = lorentz_majorant(eps, f);
        lines.push_back({"majorant f0=" + format_real(f(0.0)) + " eps=" + format_real(eps), err,
                         bound, err <= bound});
      }
    }
    const Interval iv = c.interval.value_or(Interval{-5.0, 5.0});
    const double M = iv.symmetric_radius();
    std::vector<double> grid;
    iv.uniform_grid(c.grid, std::back_inserter(grid));
    for (double n : {10.0, 100.0, 1000.0}) {
      double sup = 0.0;
      for (double x : grid) sup = std::max(sup, std::abs(lorentz_ramp(n, x) - 0.5 * std::abs(x)));
      const double bound = 1.0 / (std::numbers::pi * n) + std::log1p(n * n * M * M) / (2 * std::numbers::pi * n);
      lines.push_back({"lorentz ramp n=" + format_real(n), sup, bound, sup <= bound});
    }
  } else if (name == "lemma6_lorentz" || name == "lemma6_theta") {
    const double a = c.a.value_or(0.5);
    const double n_max = c.n_max.value_or(1000);
    if (!(a > 0.0)) throw ConfigError("--a must be positive");
    if (!(n_max >= 2)) throw ConfigError("--n-max must be at least 2");
    const auto seq = name == "lemma6_lorentz" ? lorentz_sequence() : dirichlet_sequence();
    report = restrict_check_zero(seq, a, n_max, c.tolerance.value_or(1e-2), opt);
  } else if (name == "fubini") {
    if (c.params.empty()) c.params = {1, 5, 10};
    const double tol = c.tolerance.value_or(1e-8);
    for (double R : c.params) {
      if (!(R > 0.0)) throw ConfigError("--params must be positive");
      const auto xf = fubini_S(R, IntegrationOrder::x_first);
      const auto af = fubini_S(R, IntegrationOrder::alpha_first);
      const double diff = std::abs(xf.value - af.value);
      lines.push_back({"order agreement R=" + format_real(R), diff, tol, diff <= tol});
      const double dev = std::abs(xf.value - std::atan(R));
      const double est = 3.0 * (1.0 - std::exp(-R * R)) / (2.0 * R);
      lines.push_back({"|S - atan R| R=" + format_real(R), dev, est, dev <= est});
    }
  } else if (name == "si_tail") {
    for (int i = 0; i <= 120; ++i) {
      const double x = std::pow(10.0, i / 20.0);
      const double t = std::abs(dirichlet_tail(x));
      lines.push_back({"|tail(x)| x=" + format_real(x), t, 2.0 / x, t <= 2.0 / x});
    }
    const double d = std::abs(si(1e6) - std::numbers::pi / 2);
    lines.push_back({"|si(1e6) - pi/2|", d, 2e-6, d <= 2e-6});
  } else if (name == "eq23_identity") {
    const double tol = c.tolerance.value_or(1e-9);
    const Interval iv = c.interval.value_or(Interval{0.1, 5.0});
    if (iv.lo() <= 0.0) throw ConfigError("eq23_identity: --interval must lie in x > 0");
    std::vector<double> grid;
    iv.uniform_grid(c.grid, std::back_inserter(grid));
    for (double n : {1.0, 5.0, 20.0}) {
      double worst = 0.0;
      for (double x : grid) {
        const double u = n * x;
        const double rhs = (1.0 - std::cos(u)) / u + sinc_sq_integral(0.0, 0.5 * u);
        worst = std::max(worst, std::abs(si(u) - rhs));
      }
      lines.push_back({"max identity residual n=" + format_real(n), worst, tol, worst <= tol});
    }
  } else {
    throw ConfigError("unknown certificate '" + name +
                      "' (expected lemma4, lemma5_rate, lemma6_lorentz, lemma6_theta, fubini, "
                      "si_tail, eq23_identity)");
  }

  bool pass = report ? report->verdict : true;
  for (const auto& l : lines) pass = pass && l.pass;

  std::ostringstream text;
  if (c.format == "csv") {
    text << "label,value,bound,pass\n";
    for (const auto& l : lines)
      text << l.label << ',' << format_real(l.value) << ',' << format_real(l.bound) << ','
           << (l.pass ? 1 : 0) << '\n';
    if (report) {
      for (std::size_t i = 0; i < report->params.size(); ++i) {
        const bool has_bound = i < report->bound.size();
        text << "n=" << format_real(report->params[i]) << ',' << format_real(report->sup_error[i])
             << ',' << (has_bound ? format_real(report->bound[i]) : std::string{}) << ','
             << ((!has_bound || report->sup_error[i] <= report->bound[i]) ? 1 : 0) << '\n';
      }
    }
  } else {
    json j;
    j["command"] = "certify";
    j["config"] = detail::config_echo(c);
    j["results"] = json::array();
    for (const auto& l : lines)
      j["results"].push_back({{"label", l.label}, {"value", l.value}, {"bound", l.bound}, {"pass", l.pass}});
    if (report) j["report"] = detail::report_json(*report);
    j["verdict"] = pass ? "pass" : "fail";
    text << j.dump(2) << '\n';
  }
  detail::emit(c, out, text.str());
  return pass ? kPass : kFail;
}

namespace detail {

struct Row {
  double x;
  double value;
  std::string series;
};

inline std::vector<double> figure_grid(const RunConfig& c, Interval fallback) {
  std::vector<double> g;
  c.interval.value_or(fallback).uniform_grid(c.grid, std::back_inserter(g));
  return g;
}

inline std::string label(const char* stem, double n) { return std::string(stem) + format_real(n); }

}  // namespace detail

/// Data behind figures 1-9 as rows (x, value, series).
inline std::vector<detail::Row> figure_rows(const RunConfig& c) {
  using detail::Row;
  std::vector<Row> rows;
  auto add_series = [&](const std::vector<double>& xs, const std::string& name, auto&& fn) {
    for (double x : xs) rows.push_back({x, fn(x), name});
  };
  const Interval wide{-5.0, 5.0};

  switch (c.fig) {
    case 1: {
      const auto xs = detail::figure_grid(c, wide);
      for (int R = 1; R <= 20; ++R)
        add_series(xs, detail::label("R=", R), [R](double x) { return dirichlet_kernel(R, x); });
      break;
    }
    case 2: {
      const auto xs = detail::figure_grid(c, wide);
      add_series(xs, "delta_180", [](double x) { return dirichlet_kernel(180, x); });
      std::vector<double> off_origin;
      std::copy_if(xs.begin(), xs.end(), std::back_inserter(off_origin), [](double x) { return x != 0.0; });
      add_series(off_origin, "envelope_upper", [](double x) { return 1.0 / (std::numbers::pi * std::abs(x)); });
      add_series(off_origin, "envelope_lower", [](double x) { return -1.0 / (std::numbers::pi * std::abs(x)); });
      break;
    }
    case 3:
    case 4:
    case 6:
    case 7: {
      const auto xs = detail::figure_grid(c, wide);
      for (int n = 1; n <= 5; ++n) {
        switch (c.fig) {
          case 3: add_series(xs, detail::label("delta_", n), [n](double x) { return dirichlet_kernel(n, x); }); break;
          case 4: add_series(xs, detail::label("theta_", n), [n](double x) { return dirichlet_step(n, x); }); break;
          case 6: add_series(xs, detail::label("Delta_", n), [n](double x) { return dirichlet_ramp(n, x); }); break;
          default:
            add_series(xs, detail::label("lorentz_delta_", n), [n](double x) { return lorentz_delta(1.0 / n, x); });
        }
      }
      break;
    }
    case 5: {
      const auto xs = detail::figure_grid(c, wide);
      add_series(xs, "theta_180", [](double x) { return dirichlet_step(180, x); });
      break;
    }
    case 8: {
      const auto xs = detail::figure_grid(c, Interval{0.0, 3.0});
      add_series(xs, "f_1", [](double x) { return mollifier(x - 1.0); });
      add_series(xs, "g_2", [](double x) { return mollifier(2.0 - x); });
      break;
    }
    case 9: {
      const auto xs = detail::figure_grid(c, Interval{0.0, 5.0});
      const auto up = smooth_step_up(1, 2);
      const auto down = smooth_step_down(3, 4);
      add_series(xs, "F_1_2", up);
      add_series(xs, "G_3_4", down);
      add_series(xs, "product", [&](double x) { return up(x) * down(x); });
      break;
    }
    default:
      throw ConfigError("--fig must be between 1 and 9");
  }
  return rows;
}

inline int cmd_figure(RunConfig c, std::ostream& out) {
  c.validate();
  const auto rows = figure_rows(c);
  std::ostringstream text;
  if (c.format == "csv") {
    text << "x,value,series\n";
    for (const auto& r : rows) text << format_real(r.x) << ',' << format_real(r.value) << ',' << r.series << '\n';
  } else {
    json j = json::array();
    for (const auto& r : rows) j.push_back({{"x", r.x}, {"value", r.value}, {"series", r.series}});
    text << j.dump() << '\n';
  }
  return detail::emit(c, out, text.str());
}

}  // namespace deltakit::cli
