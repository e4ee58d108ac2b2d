#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gs/model.hpp"
#include "gs/spectral_basis.hpp"

namespace gs {

/// Raised by the time integrator; carries the step and time it failed at.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, int step = -1, double time = 0.0)
      : Error(what), step_(step), time_(time) {}
  int step() const { return step_; }
  double time() const { return time_; }

 private:
  int step_;
  double time_;
};

/// Coefficients grew past the threshold or became non-finite.
class BlowupError : public SolverError {
 public:
  using SolverError::SolverError;
};

/// The implicit stage's fixed-point iteration hit its cap.
class ConvergenceError : public SolverError {
 public:
  ConvergenceError(const std::string& what, double residual, int step = -1, double time = 0.0)
      : SolverError(what, step, time), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Uniform partition t_n = n * sigma, n = 0..N.
struct TimeGrid {
  double sigma = 0.0;
  int n_steps = 1;

  double t_final() const { return sigma * n_steps; }
  double time(double n) const { return n * sigma; }

  /// sigma = t_final / n_steps.
  static TimeGrid uniform(double t_final, int n_steps);
  /// n_steps = t_final / sigma; throws when that is not an integer.
  static TimeGrid with_step(double t_final, double sigma);
};

struct StepperConfig {
  double fp_tol = 1e-12;
  int fp_max_iter = 100;
  double blowup_threshold = 1e8;

  void validate() const;
};

/// Diffusion coefficients and reaction driving the modal system.
struct Dynamics {
  double alpha_u = 1.0;
  double alpha_v = 1.0;
  PointReaction reaction;  // empty means no reaction

  static Dynamics from_problem(const GrayScottProblem& problem);
  static Dynamics pure_diffusion(double alpha_u, double alpha_v);
};

/// Coefficients at the current whole step t_n and the neighbouring half step.
struct SolverState {
  SpectralCoeffs whole;
  SpectralCoeffs half;
  int step = 0;
};

/// Projections of (u0, v0) and of (u0 + sigma/2 u1, v0 + sigma/2 v1).
SolverState initialize(const GrayScottProblem& problem, const SpectralBasis& basis,
                       const TimeGrid& grid);

/// Reaction functionals (G^1, G^2) at one instant, in modal space.
using ModalForcing = std::array<Eigen::VectorXd, 2>;

ModalForcing modal_forcing(const Dynamics& dyn, const SpectralCoeffs& c,
                           const SpectralBasis& basis);

/// Explicit predictor from (t_n, t_{n-1/2}) to t_{n+1/2}:
///   c^{n+1/2} = c^n - k (3 c^n - c^{n-1/2}) + sigma/4 (3 G^n - G^{n-1/2}),
/// with k_j = sigma * alpha * lambda_j / 4. Forcings may be passed in when the
/// caller already has them.
SpectralCoeffs stage1_explicit(const SolverState& state, const TimeGrid& grid,
                               const SpectralBasis& basis, const Dynamics& dyn,
                               const StepperConfig& cfg, const ModalForcing* g_whole = nullptr,
                               const ModalForcing* g_half = nullptr);

struct Stage2Result {
  SpectralCoeffs next;
  int iterations = 0;
  double residual = 0.0;
};

/// Implicit corrector from t_{n+1/2} to t_{n+1}:
///   (1 + k) c^{n+1} = (1 - k) c^{n+1/2} + sigma/4 (G(c^{n+1}) + G(c^{n+1/2})),
/// solved by fixed-point iteration starting from c^{n+1/2}.
Stage2Result stage2_implicit(const SpectralCoeffs& half, const TimeGrid& grid,
                             const SpectralBasis& basis, const Dynamics& dyn,
                             const StepperConfig& cfg, const ModalForcing* g_half = nullptr);

/// Called at every whole step n = 0..N with read-only coefficients.
using StepObserver = std::function<void(int step, const SpectralCoeffs& whole)>;

struct RunSummary {
  SolverState final_state;
  int stage1_calls = 0;
  int stage2_calls = 0;
  std::vector<int> fp_iterations;       // per whole step 1..N
  std::vector<double> max_coefficient;  // per whole step 0..N
};

/// Bootstrap with one implicit stage (t_{1/2} -> t_1), then alternate
/// explicit and implicit stages for n = 1..N-1.
RunSummary run(const Dynamics& dyn, SolverState initial, const SpectralBasis& basis,
               const TimeGrid& grid, const StepperConfig& cfg,
               std::span<const StepObserver> observers = {});

RunSummary run(const GrayScottProblem& problem, const SpectralBasis& basis, const TimeGrid& grid,
               const StepperConfig& cfg, std::span<const StepObserver> observers = {});

}  // namespace gs
