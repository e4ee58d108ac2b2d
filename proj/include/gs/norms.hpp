#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <span>

#include "gs/model.hpp"
#include "gs/spectral_basis.hpp"

namespace gs {

/// L2 norm of a field given by modal coefficients (Euclidean, since the
/// modes are L2-orthonormal).
double l2_norm(const Eigen::VectorXd& coeffs);

/// L2 norm of an analytic field by element quadrature.
double l2_norm(const ScalarField& f, const FeSpace& space);

/// ||u_h - u|| with u_h given by nodal coefficients and u evaluated directly
/// at the quadrature points.
double l2_error(const Eigen::VectorXd& nodal, const ScalarField& exact, const FeSpace& space);

/// log2(coarse / fine); empty when either error is not positive and finite.
std::optional<double> convergence_order(double error_coarse, double error_fine);

/// max_n of per-step L2 errors.
double linf_time_error(std::span<const double> per_step_errors);

/// Discrete L-infinity-in-time summaries of one run.
struct TrajectoryNorms {
  double norm_exact_u = 0.0;
  double norm_num_u = 0.0;
  double err_u = 0.0;
  double norm_exact_v = 0.0;
  double norm_num_v = 0.0;
  double err_v = 0.0;
  int steps_seen = 0;
};

/// Observer comparing each whole step with the problem's exact solution.
class ExactErrorTracker {
 public:
  ExactErrorTracker(const GrayScottProblem& problem, const SpectralBasis& basis);
  void operator()(int step, const SpectralCoeffs& whole);
  const TrajectoryNorms& norms() const { return norms_; }
  /// Per-step (err_u, err_v) in observation order.
  const std::vector<std::array<double, 2>>& history() const { return history_; }

 private:
  const GrayScottProblem* problem_;
  const SpectralBasis* basis_;
  TrajectoryNorms norms_;
  std::vector<std::array<double, 2>> history_;
};

/// Coefficients of a fine-step run, kept every `stride` reference steps.
class ReferenceTrajectory {
 public:
  ReferenceTrajectory(double sigma, int stride) : sigma_(sigma), stride_(stride) {}
  double sigma() const { return sigma_; }
  int stride() const { return stride_; }
  /// Observer hook.
  void operator()(int step, const SpectralCoeffs& whole);
  /// Coefficients at reference step `step`; throws gs::Error when missing.
  const SpectralCoeffs& at(long step) const;
  std::size_t size() const { return stored_.size(); }

 private:
  double sigma_;
  int stride_;
  std::map<long, SpectralCoeffs> stored_;
};

/// Observer comparing a coarser-step run with a reference trajectory on the
/// same basis; the difference is measured in modal space.
class ReferenceErrorTracker {
 public:
  /// `sigma` must be an integer multiple of the reference step.
  ReferenceErrorTracker(const ReferenceTrajectory& reference, double sigma);
  void operator()(int step, const SpectralCoeffs& whole);
  const TrajectoryNorms& norms() const { return norms_; }

 private:
  const ReferenceTrajectory* reference_;
  long ratio_;
  TrajectoryNorms norms_;
};

}  // namespace gs
