#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <iosfwd>
#include <memory>

#include "gs/fem.hpp"

namespace gs {

/// Modal coefficients of both species at one instant.
struct SpectralCoeffs {
  double time = 0.0;
  Eigen::VectorXd u;
  Eigen::VectorXd v;
};

/// Pointwise reaction (F1, F2) as a function of time, position, and the two
/// field values. Must be safe to call concurrently.
using PointReaction = std::function<std::array<double, 2>(double t, Point2 x, double u, double v)>;

/// Eigenpairs of K phi = lambda M phi: ascending eigenvalues, M-orthonormal
/// columns, each column's largest-magnitude entry positive.
struct EigenPairs {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

/// Dense generalized symmetric-definite eigensolve (Cholesky reduction of M).
/// Throws gs::Error when M is not positive definite or the solver fails.
EigenPairs solve_generalized_eigenproblem(const SymmetricMatrix& stiffness,
                                          const SymmetricMatrix& mass);

/// The L2-orthonormal, stiffness-orthogonal eigenbasis of a finite-element
/// space. Immutable; safe to share across threads.
class SpectralBasis {
 public:
  /// Assembles mass and stiffness on `space` and solves the eigenproblem.
  static SpectralBasis compute(std::shared_ptr<const FeSpace> space);
  static SpectralBasis compute(std::shared_ptr<const FeSpace> space, SymmetricMatrix mass,
                               SymmetricMatrix stiffness);

  const FeSpace& space() const { return *space_; }
  std::shared_ptr<const FeSpace> space_ptr() const { return space_; }
  const SymmetricMatrix& mass() const { return mass_; }
  const SymmetricMatrix& stiffness() const { return stiffness_; }
  const Eigen::VectorXd& eigenvalues() const { return eig_.values; }
  const Eigen::MatrixXd& modes() const { return eig_.vectors; }
  std::size_t n_modes() const { return static_cast<std::size_t>(eig_.values.size()); }

  /// Phi * c.
  Eigen::VectorXd to_nodal(const Eigen::VectorXd& coeffs) const;
  Eigen::MatrixXd to_nodal(const Eigen::MatrixXd& coeffs) const;
  /// Phi^T M b.
  Eigen::VectorXd from_nodal(const Eigen::VectorXd& nodal) const;
  /// Phi^T b for a load vector b = (f, rho_i).
  Eigen::MatrixXd from_load(const Eigen::MatrixXd& load) const;

 private:
  SpectralBasis(std::shared_ptr<const FeSpace> space, SymmetricMatrix mass,
                SymmetricMatrix stiffness, EigenPairs eig);

  std::shared_ptr<const FeSpace> space_;
  SymmetricMatrix mass_;
  SymmetricMatrix stiffness_;
  EigenPairs eig_;
};

/// c_j = (f, phi_j).
Eigen::VectorXd project_l2(const ScalarField& f, const SpectralBasis& basis);

/// G^s_j = (F_s(t, u_h, v_h), phi_j) for s = 1, 2, by element quadrature of
/// the reconstructed fields. Throws gs::Error naming time and location when
/// the reaction is not finite.
std::array<Eigen::VectorXd, 2> nonlinear_functional(double t, const Eigen::VectorXd& u,
                                                    const Eigen::VectorXd& v,
                                                    const PointReaction& reaction,
                                                    const SpectralBasis& basis);

/// Debug dump with header `j,lambda` (j is 1-based).
void write_eigenvalues_csv(std::ostream& out, const SpectralBasis& basis);

}  // namespace gs
