#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "gs/mesh.hpp"

namespace gs {

/// Quadrature on the reference triangle (0,0), (1,0), (0,1). Weights sum to
/// the reference area 1/2.
struct QuadratureRule {
  int degree = 0;
  std::vector<Point2> points;
  std::vector<double> weights;

  std::size_t size() const { return points.size(); }
};

/// Collapsed (Duffy) tensor Gauss rule exact for total degree <= `degree`.
/// All weights are positive.
QuadratureRule triangle_quadrature(int degree);

/// Gauss-Jacobi nodes/weights on [-1, 1] for weight (1-x)^alpha.
void gauss_jacobi(int n, double alpha, std::vector<double>& nodes, std::vector<double>& weights);

/// Equispaced Lagrange element of degree p on the reference triangle.
///
/// Local node k has integer barycentric indices (i0, i1, i2) summing to p,
/// associated with the reference vertices (0,0), (1,0), (0,1). Nodes are
/// ordered vertices first, then edges, then interior.
class ReferenceElement {
 public:
  explicit ReferenceElement(int degree);

  int degree() const { return degree_; }
  std::size_t n_nodes() const { return nodes_.size(); }
  const std::vector<Point2>& nodes() const { return nodes_; }
  const std::vector<std::array<int, 3>>& barycentric_indices() const { return indices_; }

  /// Shape values and reference gradients at one point. Spans must have
  /// n_nodes() entries.
  void evaluate(Point2 ref, std::span<double> values, std::span<Point2> grads) const;

 private:
  int degree_;
  std::vector<Point2> nodes_;
  std::vector<std::array<int, 3>> indices_;
};

/// Local-to-global numbering for continuous Lagrange elements.
class DofMap {
 public:
  DofMap(const TriMesh& mesh, const ReferenceElement& elem);

  std::size_t n_dofs() const { return n_dofs_; }
  std::size_t n_local() const { return n_local_; }
  std::span<const std::size_t> cell_dofs(std::size_t tri) const {
    return {table_.data() + tri * n_local_, n_local_};
  }
  /// Physical coordinates of every global node.
  const std::vector<Point2>& dof_points() const { return points_; }

 private:
  std::size_t n_local_;
  std::size_t n_dofs_ = 0;
  std::vector<std::size_t> table_;
  std::vector<Point2> points_;
};

/// Dense symmetric matrix. Entries are written in mirrored pairs so the
/// stored matrix is exactly symmetric.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n) : data_(Eigen::MatrixXd::Zero(n, n)) {}
  explicit SymmetricMatrix(Eigen::MatrixXd dense);

  std::size_t dimension() const { return static_cast<std::size_t>(data_.rows()); }
  double operator()(std::size_t i, std::size_t j) const { return data_(i, j); }
  const Eigen::MatrixXd& dense() const { return data_; }

  void add_symmetric(std::size_t i, std::size_t j, double value) {
    data_(i, j) += value;
    if (i != j) data_(j, i) += value;
  }

  Eigen::VectorXd operator*(const Eigen::VectorXd& x) const;

 private:
  Eigen::MatrixXd data_;
};

using ScalarField = std::function<double(Point2)>;

/// Shape tables at the quadrature points: values(q, i), gradients per q.
struct Tabulation {
  Eigen::MatrixXd values;                      // n_quad x n_local
  std::vector<std::vector<Point2>> gradients;  // [q][i], reference frame
};

/// Affine geometry of one triangle.
struct ElementGeometry {
  Point2 origin;
  double jac[2][2];      // d(x,y)/d(xi,eta)
  double inv_jac_t[2][2];
  double det;            // > 0
  Point2 map(Point2 ref) const {
    return {origin.x + jac[0][0] * ref.x + jac[0][1] * ref.y,
            origin.y + jac[1][0] * ref.x + jac[1][1] * ref.y};
  }
  Point2 physical_gradient(Point2 g) const {
    return {inv_jac_t[0][0] * g.x + inv_jac_t[0][1] * g.y,
            inv_jac_t[1][0] * g.x + inv_jac_t[1][1] * g.y};
  }
};

/// Mesh, element, dof map, and quadrature bundled together with per-element
/// geometry, shape tables, and a vertex-disjoint element colouring used by
/// the parallel kernels.
class FeSpace {
 public:
  /// Quadrature degree defaults to 3 * degree (exact for cubic nonlinearities
  /// of degree-p fields).
  FeSpace(TriMesh mesh, int degree, int quadrature_degree = -1);

  const TriMesh& mesh() const { return mesh_; }
  const ReferenceElement& element() const { return elem_; }
  const DofMap& dofs() const { return dofs_; }
  const QuadratureRule& quadrature() const { return quad_; }
  const Tabulation& tabulation() const { return tab_; }
  const ElementGeometry& geometry(std::size_t tri) const { return geom_[tri]; }
  std::size_t n_dofs() const { return dofs_.n_dofs(); }
  std::size_t n_elements() const { return mesh_.n_triangles(); }

  /// Physical coordinates of quadrature point q on element e.
  Point2 quadrature_point(std::size_t e, std::size_t q) const {
    return qpoints_[e * quad_.size() + q];
  }
  /// Groups of elements with pairwise disjoint vertex sets.
  const std::vector<std::vector<std::size_t>>& colors() const { return colors_; }

 private:
  TriMesh mesh_;
  ReferenceElement elem_;
  DofMap dofs_;
  QuadratureRule quad_;
  Tabulation tab_;
  std::vector<ElementGeometry> geom_;
  std::vector<Point2> qpoints_;
  std::vector<std::vector<std::size_t>> colors_;
};

SymmetricMatrix assemble_mass(const FeSpace& space);
SymmetricMatrix assemble_stiffness(const FeSpace& space);

/// b_i = sum over elements and quadrature points of w * f(x) * rho_i(x).
/// Throws gs::Error naming the point when f is not finite there.
Eigen::VectorXd assemble_load(const FeSpace& space, const ScalarField& f);

/// A point given by its element and reference coordinates.
struct ElementPoint {
  std::size_t element;
  Point2 ref;
};

struct FieldSample {
  double value;
  Point2 gradient;
};

std::vector<FieldSample> evaluate_fe_function(const Eigen::VectorXd& coeffs, const FeSpace& space,
                                              std::span<const ElementPoint> points);

/// Nodal interpolant: coefficient i = f(dof point i).
Eigen::VectorXd interpolate(const FeSpace& space, const ScalarField& f);

/// Local matrices for a single triangle, used for hand-checkable tests.
Eigen::MatrixXd element_mass(const ReferenceElement& elem, const QuadratureRule& quad,
                             const ElementGeometry& geom);
Eigen::MatrixXd element_stiffness(const ReferenceElement& elem, const QuadratureRule& quad,
                                  const ElementGeometry& geom);
ElementGeometry make_geometry(Point2 a, Point2 b, Point2 c);

}  // namespace gs
