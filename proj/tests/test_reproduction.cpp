// Coarse end-to-end runs of the first manufactured example. These sit apart
// from the unit tests because the explicit stage limits the step size
// to sigma * lambda_max <= 4, which the coarse steps here exceed.
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "gs/norms.hpp"
#include "gs/stepper.hpp"

using namespace gs;

TEST_CASE("example 1 coarse run stays bounded and tracks the exact norm") {
  const auto problem = example1();
  const auto basis = SpectralBasis::compute(
      std::make_shared<const FeSpace>(build_structured_mesh(problem.domain, 8), 3));
  const auto grid = TimeGrid::with_step(problem.t_final, 1.0 / 32);
  MESSAGE("sigma * lambda_max / 4 = " << grid.sigma * basis.eigenvalues().maxCoeff() / 4);
  RunSummary sum;
  CHECK_NOTHROW(sum = run(problem, basis, grid, StepperConfig{}));
  if (sum.stage2_calls == grid.n_steps) {
    const double exact = l2_norm([&](Point2 x) { return (*problem.exact_u)(x, problem.t_final); },
                                 basis.space());
    CHECK(std::abs(l2_norm(sum.final_state.whole.u) - exact) <= 0.1 * exact);
  }
}

TEST_CASE("example 1 errors decrease under step refinement") {
  const auto problem = example1();
  const auto basis = SpectralBasis::compute(
      std::make_shared<const FeSpace>(build_structured_mesh(problem.domain, 4), 3));
  std::vector<double> errors;
  for (int l : {3, 4, 5}) {
    const auto grid = TimeGrid::with_step(problem.t_final, std::ldexp(1.0, -l));
    ExactErrorTracker tracker(problem, basis);
    const StepObserver obs[] = {std::ref(tracker)};
    try {
      run(problem, basis, grid, StepperConfig{}, obs);
      errors.push_back(tracker.norms().err_u);
    } catch (const SolverError& e) {
      FAIL_CHECK("sigma = 2^-" << l << ": " << std::string(e.what()));
    }
  }
  for (std::size_t i = 0; i < errors.size(); ++i) {
    CHECK(std::isfinite(errors[i]));
    CHECK(errors[i] > 0.0);
    if (i > 0) CHECK(errors[i] < errors[i - 1]);
  }
}

TEST_CASE("degree 3 projection of cos(pi x) cos(pi y) on [-1,1]^2 with 8 cells") {
  const auto f = [](Point2 q) {
    return std::cos(std::numbers::pi * q.x) * std::cos(std::numbers::pi * q.y);
  };
  const auto basis = SpectralBasis::compute(
      std::make_shared<const FeSpace>(build_structured_mesh({-1, 1, -1, 1}, 8), 3));
  const Eigen::VectorXd nodal = basis.to_nodal(project_l2(f, basis));
  const double err = l2_error(nodal, f, basis.space());
  MESSAGE("projection error " << err);
  CHECK(err <= 1e-4);
}
