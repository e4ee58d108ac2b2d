#include "gs/config.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>

namespace gs {

namespace {

// Example 3 is a long-horizon problem; the default keeps it at desk scale.
constexpr double kExample3DefaultFinalTime = 10.0;

}  // namespace

int cells_for_exponent(double length, int l) {
  const double cells = std::ldexp(length, l);
  const double rounded = std::round(cells);
  if (rounded < 1.0 || std::abs(cells - rounded) > 1e-9 * cells)
    throw ConfigError("h exponent " + std::to_string(l) +
                      " does not divide the domain into whole cells");
  return static_cast<int>(rounded);
}

RunConfig parse_config(int argc, const char* const* argv) {
  RunConfig cfg;
  CLI::App app{"Spectral Galerkin solver for the 2D Gray-Scott system", "gs-spectral"};
  app.require_subcommand(1, 1);
  app.allow_config_extras(CLI::config_extras_mode::error);

  // Config keys live in a [run] table; fallthrough lets --config follow "run".
  app.set_config("--config", "", "TOML file with a [run] table using the long option names");
  auto* run = app.add_subcommand("run", "run a convergence sweep");
  run->fallthrough();
  run->add_option("--example", cfg.example, "problem: 1, 2 or 3")
      ->required()
      ->check(CLI::IsMember({1, 2, 3}));
  run->add_option("--q", cfg.q, "spectral order, element degree is q+1")
      ->capture_default_str()
      ->check(CLI::Range(2, 8));
  run->add_option("--h-exp", cfg.h_exponents, "cell sizes 2^-l, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  run->add_option("--sigma-exp", cfg.sigma_exponents, "time steps 2^-l, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  run->add_option("--t-final", cfg.t_final,
                  "final time (default: the example's, 10 for example 3)");
  run->add_option("--ref-sigma-exp", cfg.reference_sigma_exponent,
                  "reference step 2^-l for example 3 (default: finest sigma exponent + 1)");
  run->add_option("--out", cfg.output_dir, "output directory")->capture_default_str();
  run->add_option("--snapshots", cfg.snapshot_times, "snapshot times, comma separated")
      ->delimiter(',');
  run->add_option("--snapshot-res", cfg.snapshot_resolution, "snapshot grid points per side")
      ->capture_default_str()
      ->check(CLI::Range(2, 4096));
  run->add_option("--fp-tol", cfg.fp_tol, "relative fixed-point tolerance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  run->add_option("--fp-max-iter", cfg.fp_max_iter, "fixed-point iteration cap")
      ->capture_default_str()
      ->check(CLI::Range(1, 100000));
  run->add_option("--threads", cfg.threads, "OpenMP threads (0 = runtime default)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  run->add_flag("--dump-eigenvalues", cfg.dump_eigenvalues,
                "write eigenvalues_c<cells>.csv per mesh");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  if (cfg.h_exponents.empty()) throw ConfigError("--h-exp needs at least one value");
  if (cfg.sigma_exponents.empty()) throw ConfigError("--sigma-exp needs at least one value");
  if (cfg.t_final && !(*cfg.t_final > 0.0)) throw ConfigError("--t-final must be positive");
  if (cfg.reference_sigma_exponent && cfg.example != 3)
    throw ConfigError("--ref-sigma-exp only applies to example 3");
  for (double t : cfg.snapshot_times)
    if (!(t >= 0.0)) throw ConfigError("snapshot times must be non-negative");
  return cfg;
}

StudyConfig to_study_config(const RunConfig& cfg) {
  StudyConfig study;
  study.example = cfg.example;
  study.q = cfg.q;
  GrayScottProblem problem;
  try {
    problem = make_example(cfg.example);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  // Same cell size in x and y needs a square domain, which every example has.
  const double length = problem.domain.width();
  for (int l : cfg.h_exponents) study.cells_per_side.push_back(cells_for_exponent(length, l));
  for (int l : cfg.sigma_exponents) study.sigmas.push_back(std::ldexp(1.0, -l));

  study.t_final = cfg.t_final;
  if (!study.t_final && cfg.example == 3) study.t_final = kExample3DefaultFinalTime;
  const double t_final = study.t_final.value_or(problem.t_final);

  auto check_steps = [&](double sigma) {
    const double n = t_final / sigma;
    if (std::abs(n - std::round(n)) > 1e-9 * n)
      throw ConfigError("time step " + std::to_string(sigma) +
                        " does not divide the final time into whole steps");
  };
  for (double s : study.sigmas) check_steps(s);

  if (cfg.example == 3) {
    const int finest = *std::max_element(cfg.sigma_exponents.begin(), cfg.sigma_exponents.end());
    const int ref = cfg.reference_sigma_exponent.value_or(finest + 1);
    if (ref < finest)
      throw ConfigError("--ref-sigma-exp must be at least the finest sigma exponent");
    study.reference_sigma = std::ldexp(1.0, -ref);
    check_steps(*study.reference_sigma);
  }

  study.stepper.fp_tol = cfg.fp_tol;
  study.stepper.fp_max_iter = cfg.fp_max_iter;
  study.snapshot_times = cfg.snapshot_times;
  study.snapshot_resolution = cfg.snapshot_resolution;
  study.output_dir = cfg.output_dir;
  study.dump_eigenvalues = cfg.dump_eigenvalues;
  return study;
}

}  // namespace gs
