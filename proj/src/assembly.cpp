#include <cmath>
#include <sstream>

#include "gs/fem.hpp"
#include "gs/kernels.hpp"

namespace gs {

Eigen::MatrixXd element_mass(const ReferenceElement& elem, const QuadratureRule& quad,
                             const ElementGeometry& geom) {
  const auto nl = static_cast<Eigen::Index>(elem.n_nodes());
  Eigen::MatrixXd local = Eigen::MatrixXd::Zero(nl, nl);
  Eigen::VectorXd vals(nl);
  std::vector<Point2> grads(elem.n_nodes());
  for (std::size_t q = 0; q < quad.size(); ++q) {
    elem.evaluate(quad.points[q], {vals.data(), elem.n_nodes()}, grads);
    local.noalias() += (quad.weights[q] * geom.det) * vals * vals.transpose();
  }
  return 0.5 * (local + local.transpose());
}

Eigen::MatrixXd element_stiffness(const ReferenceElement& elem, const QuadratureRule& quad,
                                  const ElementGeometry& geom) {
  const auto nl = static_cast<Eigen::Index>(elem.n_nodes());
  Eigen::MatrixXd local = Eigen::MatrixXd::Zero(nl, nl);
  std::vector<double> vals(elem.n_nodes());
  std::vector<Point2> grads(elem.n_nodes());
  Eigen::MatrixXd g(2, nl);
  for (std::size_t q = 0; q < quad.size(); ++q) {
    elem.evaluate(quad.points[q], vals, grads);
    for (Eigen::Index i = 0; i < nl; ++i) {
      const Point2 pg = geom.physical_gradient(grads[static_cast<std::size_t>(i)]);
      g(0, i) = pg.x;
      g(1, i) = pg.y;
    }
    local.noalias() += (quad.weights[q] * geom.det) * g.transpose() * g;
  }
  return 0.5 * (local + local.transpose());
}

SymmetricMatrix assemble_mass(const FeSpace& space) {
  SymmetricMatrix m;
  kernels::omp::assemble(space, kernels::MatrixKind::Mass, m);
  return m;
}

SymmetricMatrix assemble_stiffness(const FeSpace& space) {
  SymmetricMatrix k;
  kernels::omp::assemble(space, kernels::MatrixKind::Stiffness, k);
  return k;
}

Eigen::VectorXd assemble_load(const FeSpace& space, const ScalarField& f) {
  const auto nq = space.quadrature().size();
  Eigen::MatrixXd qvals(static_cast<Eigen::Index>(space.n_elements() * nq), 1);
  for (std::size_t e = 0; e < space.n_elements(); ++e)
    for (std::size_t q = 0; q < nq; ++q) {
      const Point2 x = space.quadrature_point(e, q);
      const double value = f(x);
      if (!std::isfinite(value)) {
        std::ostringstream msg;
        msg << "non-finite field value at (" << x.x << ", " << x.y << ")";
        throw Error(msg.str());
      }
      qvals(static_cast<Eigen::Index>(e * nq + q), 0) = value;
    }
  Eigen::MatrixXd load;
  kernels::omp::integrate_against_basis(space, qvals, load);
  return load.col(0);
}

std::vector<FieldSample> evaluate_fe_function(const Eigen::VectorXd& coeffs, const FeSpace& space,
                                              std::span<const ElementPoint> points) {
  if (static_cast<std::size_t>(coeffs.size()) != space.n_dofs())
    throw DimensionError("coefficient vector length differs from n_dofs");
  const auto& elem = space.element();
  std::vector<double> vals(elem.n_nodes());
  std::vector<Point2> grads(elem.n_nodes());
  std::vector<FieldSample> out;
  out.reserve(points.size());
  for (const auto& pt : points) {
    if (pt.element >= space.n_elements()) throw Error("element index out of range");
    elem.evaluate(pt.ref, vals, grads);
    const auto dofs = space.dofs().cell_dofs(pt.element);
    const auto& geom = space.geometry(pt.element);
    FieldSample s{0.0, {0.0, 0.0}};
    for (std::size_t i = 0; i < dofs.size(); ++i) {
      const double c = coeffs(static_cast<Eigen::Index>(dofs[i]));
      const Point2 g = geom.physical_gradient(grads[i]);
      s.value += c * vals[i];
      s.gradient.x += c * g.x;
      s.gradient.y += c * g.y;
    }
    out.push_back(s);
  }
  return out;
}

Eigen::VectorXd interpolate(const FeSpace& space, const ScalarField& f) {
  const auto& pts = space.dofs().dof_points();
  Eigen::VectorXd out(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) out(static_cast<Eigen::Index>(i)) = f(pts[i]);
  return out;
}

}  // namespace gs
