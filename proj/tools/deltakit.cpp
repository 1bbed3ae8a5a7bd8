// deltakit: pair regularized deltas with test functions, certify convergence
// bounds and emit figure data.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using deltakit::cli::ConfigError;
using deltakit::cli::RunConfig;

struct RawFlags {
  std::string params;
  std::string bump;
  std::string interval;
};

void add_common(CLI::App* cmd, RunConfig& cfg, RawFlags& raw) {
  cmd->add_option("--family", cfg.family, "Regularization family: fourier or lorentz");
  cmd->add_option("--params", raw.params, "Comma-separated parameters (R, eps or n)");
  cmd->add_option("--bump", raw.bump, "Bump knots a,b,c,d (a<b<c<d)");
  cmd->add_option("--shift", cfg.shift, "Translate the test function by x0");
  cmd->add_option("--interval", raw.interval, "Interval lo,hi");
  cmd->add_option("--grid", cfg.grid, "Grid points per interval");
  cmd->add_option("--tol", cfg.tolerance, "Tolerance");
  cmd->add_option("--out", cfg.output_path, "Write the report to this path");
  cmd->add_option("--format", cfg.format, "csv or json");
}

void apply_raw(RunConfig& cfg, const RawFlags& raw) {
  if (!raw.params.empty()) cfg.params = deltakit::cli::parse_list(raw.params, "--params");
  if (!raw.bump.empty()) cfg.bump = deltakit::cli::parse_list(raw.bump, "--bump");
  if (!raw.interval.empty()) {
    const auto v = deltakit::cli::parse_list(raw.interval, "--interval");
    if (v.size() != 2) throw ConfigError("--interval needs lo,hi");
    try {
      cfg.interval = deltakit::Interval{v[0], v[1]};
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deltakit: regularized Dirac delta toolkit"};
  app.require_subcommand(1);
  app.allow_extras(false);

  RunConfig cfg;
  RawFlags raw;
  cfg.threads = deltakit::thread_count_from_env();

  auto* pair = app.add_subcommand("pair", "Pair a family with a bump and extrapolate the limit");
  add_common(pair, cfg, raw);

  auto* certify = app.add_subcommand("certify", "Run a named convergence certificate");
  add_common(certify, cfg, raw);
  certify->add_option("certificate", cfg.certificate, "Certificate name")->required();
  certify->add_option("--n-max", cfg.n_max, "Largest sequence index");
  certify->add_option("--a", cfg.a, "Distance from the origin for restriction checks");

  auto* figure = app.add_subcommand("figure", "Emit the data behind a figure as CSV");
  add_common(figure, cfg, raw);
  figure->add_option("--fig", cfg.fig, "Figure number 1-9")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return deltakit::cli::kConfigError;
  }

  try {
    apply_raw(cfg, raw);
    if (pair->parsed()) {
      cfg.command = "pair";
      return deltakit::cli::cmd_pair(cfg, std::cout);
    }
    if (certify->parsed()) {
      cfg.command = "certify";
      return deltakit::cli::cmd_certify(cfg, std::cout);
    }
    cfg.command = "figure";
    if (figure->count("--format") == 0) cfg.format = "csv";
    return deltakit::cli::cmd_figure(cfg, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "deltakit: " << e.what() << '\n';
    return deltakit::cli::kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "deltakit: " << e.what() << '\n';
    return deltakit::cli::kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "deltakit: " << e.what() << '\n';
    return deltakit::cli::kFail;
  }
}
