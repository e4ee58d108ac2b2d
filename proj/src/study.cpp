#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "gs/study.hpp"

namespace gs {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string snapshot_name(int cells, double sigma, double t) {
  std::ostringstream name;
  name << "snapshot_c" << cells << "_sigma" << sigma << "_t" << t << ".txt";
  return name.str();
}

// Writes snapshots at the whole steps nearest to the requested times.
StepObserver make_snapshot_observer(const StudyConfig& cfg, const SpectralBasis& basis,
                                    const TimeGrid& grid, int cells) {
  std::multimap<int, double> wanted;
  for (double t : cfg.snapshot_times) {
    const int step = std::clamp(static_cast<int>(std::lround(t / grid.sigma)), 0, grid.n_steps);
    wanted.emplace(step, t);
  }
  return [&cfg, &basis, wanted, grid, cells](int step, const SpectralCoeffs& whole) {
    auto [lo, hi] = wanted.equal_range(step);
    for (auto it = lo; it != hi; ++it) {
      const auto path =
          std::filesystem::path(cfg.output_dir) / snapshot_name(cells, grid.sigma, it->second);
      std::ofstream out(path);
      if (!out) throw IoError("cannot open " + path.string());
      write_snapshot(out, sample_snapshot(whole, basis, cfg.snapshot_resolution));
      if (!out) throw IoError("failed writing " + path.string());
    }
  };
}

void validate(const StudyConfig& cfg, const GrayScottProblem& problem) {
  if (cfg.q < 2) throw Error("q must be at least 2");
  if (cfg.cells_per_side.empty()) throw Error("no spatial levels given");
  if (cfg.sigmas.empty()) throw Error("no time steps given");
  for (int c : cfg.cells_per_side)
    if (c < 1) throw Error("cells_per_side must be positive");
  for (double s : cfg.sigmas)
    if (!(s > 0.0)) throw Error("time steps must be positive");
  if (!problem.has_exact() && !cfg.reference_sigma)
    throw Error("problem has no exact solution: a reference time step is required");
  if (cfg.snapshot_resolution < 2) throw Error("snapshot resolution must be at least 2");
  cfg.stepper.validate();
}

}  // namespace

void compute_orders(std::vector<ErrorRecord>& rows) {
  auto find = [&](int cells, double sigma) -> const ErrorRecord* {
    for (const auto& r : rows)
      if (r.cells == cells && std::abs(r.sigma - sigma) <= 1e-12 * sigma) return &r;
    return nullptr;
  };
  for (auto& row : rows) {
    row.co_u.reset();
    row.co_v.reset();
    if (row.failed) continue;
    const ErrorRecord* coarse = find(row.cells, 2.0 * row.sigma);
    if (!coarse && row.cells % 2 == 0) coarse = find(row.cells / 2, row.sigma);
    if (!coarse || coarse->failed) continue;
    row.co_u = convergence_order(coarse->norms.err_u, row.norms.err_u);
    row.co_v = convergence_order(coarse->norms.err_v, row.norms.err_v);
  }
}

ConvergenceTable run_convergence_study(const StudyConfig& config,
                                       const std::function<void(const ErrorRecord&)>& on_row) {
  GrayScottProblem problem = make_example(config.example);
  return run_convergence_study(problem, config, on_row);
}

ConvergenceTable run_convergence_study(const GrayScottProblem& problem_in,
                                       const StudyConfig& config,
                                       const std::function<void(const ErrorRecord&)>& on_row) {
  GrayScottProblem problem = problem_in;
  if (config.t_final) problem.t_final = *config.t_final;
  validate(config, problem);
  problem.params.validate();

  ConvergenceTable table;
  table.example = config.example;
  table.q = config.q;
  table.t_final = problem.t_final;
  if (!problem.has_exact()) table.reference_sigma = config.reference_sigma;

  const Dynamics dyn = Dynamics::from_problem(problem);

  for (int cells : config.cells_per_side) {
    const auto setup_start = Clock::now();
    std::shared_ptr<const SpectralBasis> basis_ptr;
    if (config.basis_provider) {
      basis_ptr = config.basis_provider(problem.domain, cells, config.q + 1);
      if (!basis_ptr) throw Error("basis provider returned no basis");
    } else {
      basis_ptr = std::make_shared<const SpectralBasis>(SpectralBasis::compute(
          std::make_shared<const FeSpace>(build_structured_mesh(problem.domain, cells),
                                          config.q + 1)));
    }
    const SpectralBasis& basis = *basis_ptr;
    const FeSpace* space = &basis.space();
    const double setup_s = seconds_since(setup_start);

    if (config.dump_eigenvalues && !config.output_dir.empty()) {
      const auto path = std::filesystem::path(config.output_dir) /
                        ("eigenvalues_c" + std::to_string(cells) + ".csv");
      std::ofstream out(path);
      if (!out) throw IoError("cannot open " + path.string());
      write_eigenvalues_csv(out, basis);
    }

    std::optional<ReferenceTrajectory> reference;
    std::string reference_failure;
    if (!problem.has_exact()) {
      const double ref_sigma = *config.reference_sigma;
      const double min_sigma = *std::min_element(config.sigmas.begin(), config.sigmas.end());
      const double ratio = min_sigma / ref_sigma;
      const long stride = std::lround(ratio);
      if (stride < 1 || std::abs(ratio - static_cast<double>(stride)) > 1e-9 * ratio)
        throw Error("every time step must be an integer multiple of the reference step");
      reference.emplace(ref_sigma, static_cast<int>(stride));
      const auto ref_grid = TimeGrid::with_step(problem.t_final, ref_sigma);
      const auto start = Clock::now();
      try {
        const StepObserver obs[] = {std::ref(*reference)};
        run(dyn, initialize(problem, basis, ref_grid), basis, ref_grid, config.stepper, obs);
      } catch (const SolverError& e) {
        reference_failure = std::string("reference run failed: ") + e.what();
      }
      table.reference_solve_s += seconds_since(start);
    }

    for (double sigma : config.sigmas) {
      ErrorRecord rec;
      rec.cells = cells;
      rec.h = space->mesh().cell_size();
      rec.sigma = sigma;
      rec.setup_s = setup_s;
      const auto grid = TimeGrid::with_step(problem.t_final, sigma);
      if (!reference_failure.empty()) {
        rec.failed = true;
        rec.failure = reference_failure;
      } else {
        const auto start = Clock::now();
        try {
          std::vector<StepObserver> observers;
          std::optional<ExactErrorTracker> exact_tracker;
          std::optional<ReferenceErrorTracker> ref_tracker;
          if (problem.has_exact()) {
            exact_tracker.emplace(problem, basis);
            observers.push_back(std::ref(*exact_tracker));
          } else {
            ref_tracker.emplace(*reference, sigma);
            observers.push_back(std::ref(*ref_tracker));
          }
          if (!config.snapshot_times.empty() && !config.output_dir.empty())
            observers.push_back(make_snapshot_observer(config, basis, grid, cells));
          run(dyn, initialize(problem, basis, grid), basis, grid, config.stepper, observers);
          rec.norms = exact_tracker ? exact_tracker->norms() : ref_tracker->norms();
        } catch (const SolverError& e) {
          rec.failed = true;
          rec.failure = e.what();
        }
        rec.solve_s = seconds_since(start);
      }
      if (on_row) on_row(rec);
      table.rows.push_back(std::move(rec));
    }
  }
  compute_orders(table.rows);
  return table;
}

}  // namespace gs
