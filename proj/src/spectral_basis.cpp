#include "gs/spectral_basis.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "gs/kernels.hpp"

namespace gs {

EigenPairs solve_generalized_eigenproblem(const SymmetricMatrix& stiffness,
                                          const SymmetricMatrix& mass) {
  const auto n = mass.dimension();
  if (stiffness.dimension() != n) throw DimensionError("mass and stiffness sizes differ");
  if (n == 0) throw DimensionError("empty eigenproblem");

  // Reduce to a standard problem with the Cholesky factor of M, then
  // back-substitute, so the eigenvectors come out M-orthonormal.
  const Eigen::LLT<Eigen::MatrixXd> llt(mass.dense());
  if (llt.info() != Eigen::Success) throw Error("mass matrix is not positive definite");
  Eigen::MatrixXd c = llt.matrixL().solve(stiffness.dense());
  c = llt.matrixL().solve(c.transpose()).transpose();
  c = 0.5 * (c + c.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
  if (es.info() != Eigen::Success) throw Error("generalized eigensolver did not converge");
  Eigen::VectorXd w = es.eigenvalues();
  Eigen::MatrixXd a = llt.matrixU().solve(es.eigenvectors());

  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    Eigen::Index imax = 0;
    a.col(j).cwiseAbs().maxCoeff(&imax);
    if (a(imax, j) < 0.0) a.col(j) = -a.col(j);
  }
  return {std::move(w), std::move(a)};
}

SpectralBasis::SpectralBasis(std::shared_ptr<const FeSpace> space, SymmetricMatrix mass,
                             SymmetricMatrix stiffness, EigenPairs eig)
    : space_(std::move(space)),
      mass_(std::move(mass)),
      stiffness_(std::move(stiffness)),
      eig_(std::move(eig)) {}

SpectralBasis SpectralBasis::compute(std::shared_ptr<const FeSpace> space) {
  if (!space) throw Error("null finite-element space");
  auto m = assemble_mass(*space);
  auto k = assemble_stiffness(*space);
  return compute(std::move(space), std::move(m), std::move(k));
}

SpectralBasis SpectralBasis::compute(std::shared_ptr<const FeSpace> space, SymmetricMatrix mass,
                                     SymmetricMatrix stiffness) {
  if (!space) throw Error("null finite-element space");
  if (mass.dimension() != space->n_dofs())
    throw DimensionError("matrix dimension differs from the space's n_dofs");
  auto eig = solve_generalized_eigenproblem(stiffness, mass);
  return SpectralBasis(std::move(space), std::move(mass), std::move(stiffness), std::move(eig));
}

Eigen::VectorXd SpectralBasis::to_nodal(const Eigen::VectorXd& coeffs) const {
  if (coeffs.size() != eig_.vectors.cols()) throw DimensionError("to_nodal: length mismatch");
  return eig_.vectors * coeffs;
}

Eigen::MatrixXd SpectralBasis::to_nodal(const Eigen::MatrixXd& coeffs) const {
  if (coeffs.rows() != eig_.vectors.cols()) throw DimensionError("to_nodal: length mismatch");
  // Column by column: for a handful of columns a GEMM spends most of its
  // time repacking the mode matrix, matrix-vector products stream it directly.
  Eigen::MatrixXd out(eig_.vectors.rows(), coeffs.cols());
  for (Eigen::Index j = 0; j < coeffs.cols(); ++j) out.col(j).noalias() = eig_.vectors * coeffs.col(j);
  return out;
}

Eigen::VectorXd SpectralBasis::from_nodal(const Eigen::VectorXd& nodal) const {
  if (nodal.size() != eig_.vectors.rows()) throw DimensionError("from_nodal: length mismatch");
  return eig_.vectors.transpose() * (mass_.dense() * nodal);
}

Eigen::MatrixXd SpectralBasis::from_load(const Eigen::MatrixXd& load) const {
  if (load.rows() != eig_.vectors.rows()) throw DimensionError("from_load: length mismatch");
  Eigen::MatrixXd out(eig_.vectors.cols(), load.cols());
  for (Eigen::Index j = 0; j < load.cols(); ++j)
    out.col(j).noalias() = eig_.vectors.transpose() * load.col(j);
  return out;
}

Eigen::VectorXd project_l2(const ScalarField& f, const SpectralBasis& basis) {
  return basis.from_load(assemble_load(basis.space(), f)).col(0);
}

std::array<Eigen::VectorXd, 2> nonlinear_functional(double t, const Eigen::VectorXd& u,
                                                    const Eigen::VectorXd& v,
                                                    const PointReaction& reaction,
                                                    const SpectralBasis& basis) {
  const auto n = static_cast<Eigen::Index>(basis.n_modes());
  if (u.size() != n || v.size() != n) throw DimensionError("nonlinear_functional: length mismatch");
  const FeSpace& space = basis.space();

  Eigen::MatrixXd coeffs(n, 2);
  coeffs.col(0) = u;
  coeffs.col(1) = v;
  const Eigen::MatrixXd nodal = basis.to_nodal(coeffs);

  Eigen::MatrixXd qvals;
  kernels::omp::interpolate_to_quadrature(space, nodal, qvals);

  const auto nq = space.quadrature().size();
  const auto rows = static_cast<std::ptrdiff_t>(qvals.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < rows; ++r) {
    const auto e = static_cast<std::size_t>(r) / nq, q = static_cast<std::size_t>(r) % nq;
    const auto f = reaction(t, space.quadrature_point(e, q), qvals(r, 0), qvals(r, 1));
    qvals(r, 0) = f[0];
    qvals(r, 1) = f[1];
  }
  for (Eigen::Index r = 0; r < qvals.rows(); ++r)
    if (!std::isfinite(qvals(r, 0)) || !std::isfinite(qvals(r, 1))) {
      const auto e = static_cast<std::size_t>(r) / nq, q = static_cast<std::size_t>(r) % nq;
      const Point2 x = space.quadrature_point(e, q);
      std::ostringstream msg;
      msg << "non-finite reaction at t=" << t << ", (x, y)=(" << x.x << ", " << x.y << ")";
      throw Error(msg.str());
    }

  Eigen::MatrixXd load;
  kernels::omp::integrate_against_basis(space, qvals, load);
  const Eigen::MatrixXd g = basis.from_load(load);
  return {g.col(0), g.col(1)};
}

void write_eigenvalues_csv(std::ostream& out, const SpectralBasis& basis) {
  out << "j,lambda\n" << std::setprecision(17);
  for (Eigen::Index j = 0; j < basis.eigenvalues().size(); ++j)
    out << (j + 1) << ',' << basis.eigenvalues()(j) << '\n';
}

}  // namespace gs
