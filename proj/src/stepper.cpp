#include "gs/stepper.hpp"

#include <cmath>
#include <sstream>

namespace gs {

TimeGrid TimeGrid::uniform(double t_final, int n_steps) {
  if (n_steps < 1) throw Error("time grid needs at least one step");
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) throw Error("final time must be finite and >= 0");
  return {t_final / n_steps, n_steps};
}

TimeGrid TimeGrid::with_step(double t_final, double sigma) {
  if (!(sigma > 0.0)) throw Error("time step must be positive");
  const double ratio = t_final / sigma;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > 1e-9 * std::max(1.0, n))
    throw Error("final time is not an integer multiple of the time step");
  return {sigma, static_cast<int>(n)};
}

void StepperConfig::validate() const {
  if (!(fp_tol > 0.0)) throw Error("fp_tol must be positive");
  if (fp_max_iter < 1) throw Error("fp_max_iter must be at least 1");
  if (!(blowup_threshold > 0.0)) throw Error("blowup_threshold must be positive");
}

Dynamics Dynamics::from_problem(const GrayScottProblem& problem) {
  problem.params.validate();
  return {problem.params.alpha1, problem.params.alpha2, make_point_reaction(problem)};
}

Dynamics Dynamics::pure_diffusion(double alpha_u, double alpha_v) {
  return {alpha_u, alpha_v, {}};
}

SolverState initialize(const GrayScottProblem& problem, const SpectralBasis& basis,
                       const TimeGrid& grid) {
  const double half = 0.5 * grid.sigma;
  SolverState s;
  s.step = 0;
  s.whole.time = 0.0;
  s.whole.u = project_l2(problem.u0, basis);
  s.whole.v = project_l2(problem.v0, basis);
  s.half.time = half;
  s.half.u = project_l2([&](Point2 x) { return problem.u0(x) + half * problem.u1(x); }, basis);
  s.half.v = project_l2([&](Point2 x) { return problem.v0(x) + half * problem.v1(x); }, basis);
  return s;
}

ModalForcing modal_forcing(const Dynamics& dyn, const SpectralCoeffs& c,
                           const SpectralBasis& basis) {
  if (!dyn.reaction) return {Eigen::VectorXd::Zero(c.u.size()), Eigen::VectorXd::Zero(c.v.size())};
  return nonlinear_functional(c.time, c.u, c.v, dyn.reaction, basis);
}

namespace {

double max_abs(const SpectralCoeffs& c) {
  return std::max(c.u.lpNorm<Eigen::Infinity>(), c.v.lpNorm<Eigen::Infinity>());
}

void check_blowup(const SpectralCoeffs& c, const StepperConfig& cfg, const char* where) {
  const double m = max_abs(c);
  if (!std::isfinite(m) || !c.u.allFinite() || !c.v.allFinite() || m > cfg.blowup_threshold) {
    std::ostringstream msg;
    msg << "solution blowup in " << where << " at t=" << c.time << " (max |coeff| = " << m << ")";
    throw BlowupError(msg.str(), -1, c.time);
  }
}

void check_sizes(const SpectralCoeffs& c, const SpectralBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.n_modes());
  if (c.u.size() != n || c.v.size() != n)
    throw DimensionError("coefficient length differs from the basis size");
}

}  // namespace

SpectralCoeffs stage1_explicit(const SolverState& state, const TimeGrid& grid,
                               const SpectralBasis& basis, const Dynamics& dyn,
                               const StepperConfig& cfg, const ModalForcing* g_whole,
                               const ModalForcing* g_half) {
  check_sizes(state.whole, basis);
  check_sizes(state.half, basis);
  ModalForcing gw_local, gh_local;
  if (!g_whole) {
    gw_local = modal_forcing(dyn, state.whole, basis);
    g_whole = &gw_local;
  }
  if (!g_half) {
    gh_local = modal_forcing(dyn, state.half, basis);
    g_half = &gh_local;
  }
  const double quarter = 0.25 * grid.sigma;
  const Eigen::ArrayXd& lambda = basis.eigenvalues().array();

  auto advance = [&](const Eigen::VectorXd& c, const Eigen::VectorXd& c_prev, double alpha,
                     const Eigen::VectorXd& gw, const Eigen::VectorXd& gh) {
    const Eigen::ArrayXd k = quarter * alpha * lambda;
    return Eigen::VectorXd(c.array() - k * (3.0 * c.array() - c_prev.array()) +
                           quarter * (3.0 * gw.array() - gh.array()));
  };

  SpectralCoeffs out;
  out.time = state.whole.time + 0.5 * grid.sigma;
  out.u = advance(state.whole.u, state.half.u, dyn.alpha_u, (*g_whole)[0], (*g_half)[0]);
  out.v = advance(state.whole.v, state.half.v, dyn.alpha_v, (*g_whole)[1], (*g_half)[1]);
  check_blowup(out, cfg, "explicit stage");
  return out;
}

Stage2Result stage2_implicit(const SpectralCoeffs& half, const TimeGrid& grid,
                             const SpectralBasis& basis, const Dynamics& dyn,
                             const StepperConfig& cfg, const ModalForcing* g_half) {
  check_sizes(half, basis);
  ModalForcing gh_local;
  if (!g_half) {
    gh_local = modal_forcing(dyn, half, basis);
    g_half = &gh_local;
  }
  const double quarter = 0.25 * grid.sigma;
  const Eigen::ArrayXd& lambda = basis.eigenvalues().array();
  const Eigen::ArrayXd ku = quarter * dyn.alpha_u * lambda;
  const Eigen::ArrayXd kv = quarter * dyn.alpha_v * lambda;

  // Everything except the unknown's own forcing.
  const Eigen::ArrayXd rhs_u = (1.0 - ku) * half.u.array() + quarter * (*g_half)[0].array();
  const Eigen::ArrayXd rhs_v = (1.0 - kv) * half.v.array() + quarter * (*g_half)[1].array();

  Stage2Result result;
  result.next.time = half.time + 0.5 * grid.sigma;

  if (!dyn.reaction) {
    result.next.u = rhs_u / (1.0 + ku);
    result.next.v = rhs_v / (1.0 + kv);
    result.iterations = 1;
    check_blowup(result.next, cfg, "implicit stage");
    return result;
  }

  SpectralCoeffs iter = half;
  iter.time = result.next.time;
  for (int it = 1; it <= cfg.fp_max_iter; ++it) {
    const ModalForcing g = nonlinear_functional(iter.time, iter.u, iter.v, dyn.reaction, basis);
    SpectralCoeffs next;
    next.time = iter.time;
    next.u = (rhs_u + quarter * g[0].array()) / (1.0 + ku);
    next.v = (rhs_v + quarter * g[1].array()) / (1.0 + kv);
    check_blowup(next, cfg, "implicit stage");

    const double change = std::max((next.u - iter.u).lpNorm<Eigen::Infinity>(),
                                   (next.v - iter.v).lpNorm<Eigen::Infinity>());
    const double scale = max_abs(next);
    iter = std::move(next);
    result.iterations = it;
    result.residual = scale > 0.0 ? change / scale : change;
    if (change <= cfg.fp_tol * scale) {
      result.next = std::move(iter);
      return result;
    }
  }
  std::ostringstream msg;
  msg << "implicit stage did not converge in " << cfg.fp_max_iter
      << " iterations (relative change " << result.residual << ")";
  throw ConvergenceError(msg.str(), result.residual, -1, result.next.time);
}

RunSummary run(const Dynamics& dyn, SolverState initial, const SpectralBasis& basis,
               const TimeGrid& grid, const StepperConfig& cfg,
               std::span<const StepObserver> observers) {
  cfg.validate();
  check_sizes(initial.whole, basis);
  check_sizes(initial.half, basis);

  RunSummary summary;
  SolverState& state = summary.final_state;
  state = std::move(initial);
  state.step = 0;
  state.whole.time = 0.0;
  state.half.time = grid.time(0.5);

  auto notify = [&](int n) {
    summary.max_coefficient.push_back(max_abs(state.whole));
    for (const auto& obs : observers) obs(n, state.whole);
  };

  int n = 0;
  try {
    notify(0);
    ModalForcing g_half = modal_forcing(dyn, state.half, basis);
    auto r = stage2_implicit(state.half, grid, basis, dyn, cfg, &g_half);
    ++summary.stage2_calls;
    n = 1;
    state.whole = std::move(r.next);
    state.whole.time = grid.time(1);
    state.step = 1;
    summary.fp_iterations.push_back(r.iterations);
    notify(1);

    for (; n < grid.n_steps; ++n) {
      const ModalForcing g_whole = modal_forcing(dyn, state.whole, basis);
      SpectralCoeffs half = stage1_explicit(state, grid, basis, dyn, cfg, &g_whole, &g_half);
      ++summary.stage1_calls;
      half.time = grid.time(n + 0.5);
      g_half = modal_forcing(dyn, half, basis);
      r = stage2_implicit(half, grid, basis, dyn, cfg, &g_half);
      ++summary.stage2_calls;
      state.half = std::move(half);
      state.whole = std::move(r.next);
      state.whole.time = grid.time(n + 1);
      state.step = n + 1;
      summary.fp_iterations.push_back(r.iterations);
      notify(n + 1);
    }
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(std::string("step ") + std::to_string(n) + ": " + e.what(),
                           e.residual(), n, grid.time(n));
  } catch (const BlowupError& e) {
    throw BlowupError(std::string("step ") + std::to_string(n) + ": " + e.what(), n, grid.time(n));
  } catch (const DimensionError&) {
    throw;
  } catch (const Error& e) {
    // Non-finite reaction values surface here.
    throw BlowupError(std::string("step ") + std::to_string(n) + ": " + e.what(), n, grid.time(n));
  }
  return summary;
}

RunSummary run(const GrayScottProblem& problem, const SpectralBasis& basis, const TimeGrid& grid,
               const StepperConfig& cfg, std::span<const StepObserver> observers) {
  return run(Dynamics::from_problem(problem), initialize(problem, basis, grid), basis, grid, cfg,
             observers);
}

}  // namespace gs
