#include "gs/kernels.hpp"

namespace gs::kernels {

namespace {

Eigen::MatrixXd local_matrix(const FeSpace& space, std::size_t e, MatrixKind kind) {
  const auto& geom = space.geometry(e);
  return kind == MatrixKind::Mass
             ? element_mass(space.element(), space.quadrature(), geom)
             : element_stiffness(space.element(), space.quadrature(), geom);
}

void scatter_matrix(const FeSpace& space, std::size_t e, const Eigen::MatrixXd& local,
                    SymmetricMatrix& out) {
  const auto dofs = space.dofs().cell_dofs(e);
  for (std::size_t i = 0; i < dofs.size(); ++i)
    for (std::size_t j = i; j < dofs.size(); ++j) {
      if (i == j)
        out.add_symmetric(dofs[i], dofs[i], local(i, i));
      else
        out.add_symmetric(dofs[i], dofs[j], local(i, j));
    }
}

void interpolate_element(const FeSpace& space, std::size_t e, const Eigen::MatrixXd& nodal,
                         Eigen::MatrixXd& qvals) {
  const auto& tab = space.tabulation().values;
  const auto dofs = space.dofs().cell_dofs(e);
  const auto nq = space.quadrature().size();
  const auto ncols = nodal.cols();
  for (std::size_t q = 0; q < nq; ++q) {
    const auto row = static_cast<Eigen::Index>(e * nq + q);
    for (Eigen::Index c = 0; c < ncols; ++c) {
      double acc = 0.0;
      for (std::size_t i = 0; i < dofs.size(); ++i)
        acc += tab(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(i)) *
               nodal(static_cast<Eigen::Index>(dofs[i]), c);
      qvals(row, c) = acc;
    }
  }
}

void integrate_element(const FeSpace& space, std::size_t e, const Eigen::MatrixXd& qvals,
                       Eigen::MatrixXd& load) {
  const auto& tab = space.tabulation().values;
  const auto& w = space.quadrature().weights;
  const auto dofs = space.dofs().cell_dofs(e);
  const auto nq = space.quadrature().size();
  const double det = space.geometry(e).det;
  for (std::size_t q = 0; q < nq; ++q) {
    const auto row = static_cast<Eigen::Index>(e * nq + q);
    const double wq = w[q] * det;
    for (std::size_t i = 0; i < dofs.size(); ++i) {
      const double phi = wq * tab(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(i));
      load.row(static_cast<Eigen::Index>(dofs[i])) += phi * qvals.row(row);
    }
  }
}

void check_quadrature_shape(const FeSpace& space, const Eigen::MatrixXd& qvals) {
  if (static_cast<std::size_t>(qvals.rows()) != space.n_elements() * space.quadrature().size())
    throw DimensionError("quadrature value matrix has the wrong number of rows");
}

}  // namespace

namespace serial {

void assemble(const FeSpace& space, MatrixKind kind, SymmetricMatrix& out) {
  out = SymmetricMatrix(space.n_dofs());
  for (std::size_t e = 0; e < space.n_elements(); ++e)
    scatter_matrix(space, e, local_matrix(space, e, kind), out);
}

void interpolate_to_quadrature(const FeSpace& space, const Eigen::MatrixXd& nodal,
                               Eigen::MatrixXd& qvals) {
  if (static_cast<std::size_t>(nodal.rows()) != space.n_dofs())
    throw DimensionError("nodal vector length differs from n_dofs");
  qvals.resize(static_cast<Eigen::Index>(space.n_elements() * space.quadrature().size()),
               nodal.cols());
  for (std::size_t e = 0; e < space.n_elements(); ++e) interpolate_element(space, e, nodal, qvals);
}

void integrate_against_basis(const FeSpace& space, const Eigen::MatrixXd& qvals,
                             Eigen::MatrixXd& load) {
  check_quadrature_shape(space, qvals);
  load = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(space.n_dofs()), qvals.cols());
  for (std::size_t e = 0; e < space.n_elements(); ++e) integrate_element(space, e, qvals, load);
}

}  // namespace serial

namespace omp {

void assemble(const FeSpace& space, MatrixKind kind, SymmetricMatrix& out) {
  out = SymmetricMatrix(space.n_dofs());
  for (const auto& color : space.colors()) {
    const auto n = static_cast<std::ptrdiff_t>(color.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
      const auto e = color[static_cast<std::size_t>(k)];
      scatter_matrix(space, e, local_matrix(space, e, kind), out);
    }
  }
}

void interpolate_to_quadrature(const FeSpace& space, const Eigen::MatrixXd& nodal,
                               Eigen::MatrixXd& qvals) {
  if (static_cast<std::size_t>(nodal.rows()) != space.n_dofs())
    throw DimensionError("nodal vector length differs from n_dofs");
  qvals.resize(static_cast<Eigen::Index>(space.n_elements() * space.quadrature().size()),
               nodal.cols());
  const auto n = static_cast<std::ptrdiff_t>(space.n_elements());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t e = 0; e < n; ++e)
    interpolate_element(space, static_cast<std::size_t>(e), nodal, qvals);
}

void integrate_against_basis(const FeSpace& space, const Eigen::MatrixXd& qvals,
                             Eigen::MatrixXd& load) {
  check_quadrature_shape(space, qvals);
  load = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(space.n_dofs()), qvals.cols());
  for (const auto& color : space.colors()) {
    const auto n = static_cast<std::ptrdiff_t>(color.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < n; ++k)
      integrate_element(space, color[static_cast<std::size_t>(k)], qvals, load);
  }
}

}  // namespace omp

}  // namespace gs::kernels
