#include "gs/norms.hpp"

#include <algorithm>
#include <cmath>

#include "gs/kernels.hpp"

namespace gs {

double l2_norm(const Eigen::VectorXd& coeffs) { return coeffs.norm(); }

double l2_norm(const ScalarField& f, const FeSpace& space) {
  const auto& w = space.quadrature().weights;
  double acc = 0.0;
  for (std::size_t e = 0; e < space.n_elements(); ++e) {
    const double det = space.geometry(e).det;
    for (std::size_t q = 0; q < w.size(); ++q) {
      const double val = f(space.quadrature_point(e, q));
      acc += w[q] * det * val * val;
    }
  }
  return std::sqrt(acc);
}

double l2_error(const Eigen::VectorXd& nodal, const ScalarField& exact, const FeSpace& space) {
  Eigen::MatrixXd qvals;
  kernels::omp::interpolate_to_quadrature(space, nodal, qvals);
  const auto& w = space.quadrature().weights;
  const auto nq = w.size();
  double acc = 0.0;
  for (std::size_t e = 0; e < space.n_elements(); ++e) {
    const double det = space.geometry(e).det;
    for (std::size_t q = 0; q < nq; ++q) {
      const double d = qvals(static_cast<Eigen::Index>(e * nq + q), 0) -
                       exact(space.quadrature_point(e, q));
      acc += w[q] * det * d * d;
    }
  }
  return std::sqrt(acc);
}

std::optional<double> convergence_order(double error_coarse, double error_fine) {
  if (!(error_coarse > 0.0) || !(error_fine > 0.0) || !std::isfinite(error_coarse) ||
      !std::isfinite(error_fine))
    return std::nullopt;
  return std::log2(error_coarse / error_fine);
}

double linf_time_error(std::span<const double> per_step_errors) {
  if (per_step_errors.empty()) throw Error("no steps to take the maximum over");
  return *std::max_element(per_step_errors.begin(), per_step_errors.end());
}

ExactErrorTracker::ExactErrorTracker(const GrayScottProblem& problem, const SpectralBasis& basis)
    : problem_(&problem), basis_(&basis) {
  if (!problem.has_exact()) throw Error("problem has no exact solution to compare against");
}

void ExactErrorTracker::operator()(int /*step*/, const SpectralCoeffs& whole) {
  const FeSpace& space = basis_->space();
  Eigen::MatrixXd coeffs(whole.u.size(), 2);
  coeffs.col(0) = whole.u;
  coeffs.col(1) = whole.v;
  Eigen::MatrixXd qvals;
  kernels::omp::interpolate_to_quadrature(space, basis_->to_nodal(coeffs), qvals);

  const auto& w = space.quadrature().weights;
  const auto nq = w.size();
  const double t = whole.time;
  double eu = 0.0, ev = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t e = 0; e < space.n_elements(); ++e) {
    const double det = space.geometry(e).det;
    for (std::size_t q = 0; q < nq; ++q) {
      const Point2 x = space.quadrature_point(e, q);
      const auto r = static_cast<Eigen::Index>(e * nq + q);
      const double u = (*problem_->exact_u)(x, t), v = (*problem_->exact_v)(x, t);
      const double wq = w[q] * det;
      eu += wq * (qvals(r, 0) - u) * (qvals(r, 0) - u);
      ev += wq * (qvals(r, 1) - v) * (qvals(r, 1) - v);
      nu += wq * u * u;
      nv += wq * v * v;
    }
  }
  history_.push_back({std::sqrt(eu), std::sqrt(ev)});
  norms_.err_u = std::max(norms_.err_u, std::sqrt(eu));
  norms_.err_v = std::max(norms_.err_v, std::sqrt(ev));
  norms_.norm_exact_u = std::max(norms_.norm_exact_u, std::sqrt(nu));
  norms_.norm_exact_v = std::max(norms_.norm_exact_v, std::sqrt(nv));
  norms_.norm_num_u = std::max(norms_.norm_num_u, l2_norm(whole.u));
  norms_.norm_num_v = std::max(norms_.norm_num_v, l2_norm(whole.v));
  ++norms_.steps_seen;
}

void ReferenceTrajectory::operator()(int step, const SpectralCoeffs& whole) {
  if (step % stride_ == 0) stored_[step] = whole;
}

const SpectralCoeffs& ReferenceTrajectory::at(long step) const {
  auto it = stored_.find(step);
  if (it == stored_.end())
    throw Error("reference trajectory has no entry for step " + std::to_string(step));
  return it->second;
}

ReferenceErrorTracker::ReferenceErrorTracker(const ReferenceTrajectory& reference, double sigma)
    : reference_(&reference) {
  const double ratio = sigma / reference.sigma();
  ratio_ = std::lround(ratio);
  if (ratio_ < 1 || std::abs(ratio - static_cast<double>(ratio_)) > 1e-9 * ratio)
    throw Error("time step is not an integer multiple of the reference step");
}

void ReferenceErrorTracker::operator()(int step, const SpectralCoeffs& whole) {
  const SpectralCoeffs& ref = reference_->at(step * ratio_);
  norms_.err_u = std::max(norms_.err_u, l2_norm(whole.u - ref.u));
  norms_.err_v = std::max(norms_.err_v, l2_norm(whole.v - ref.v));
  norms_.norm_exact_u = std::max(norms_.norm_exact_u, l2_norm(ref.u));
  norms_.norm_exact_v = std::max(norms_.norm_exact_v, l2_norm(ref.v));
  norms_.norm_num_u = std::max(norms_.norm_num_u, l2_norm(whole.u));
  norms_.norm_num_v = std::max(norms_.norm_num_v, l2_norm(whole.v));
  ++norms_.steps_seen;
}

}  // namespace gs
