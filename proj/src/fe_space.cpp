#include <algorithm>

#include "gs/fem.hpp"

namespace gs {

SymmetricMatrix::SymmetricMatrix(Eigen::MatrixXd dense) : data_(std::move(dense)) {
  if (data_.rows() != data_.cols()) throw DimensionError("symmetric matrix must be square");
  if (data_ != data_.transpose()) throw Error("matrix is not exactly symmetric");
}

Eigen::VectorXd SymmetricMatrix::operator*(const Eigen::VectorXd& x) const {
  if (x.size() != data_.cols()) throw DimensionError("matrix-vector size mismatch");
  return data_ * x;
}

ElementGeometry make_geometry(Point2 a, Point2 b, Point2 c) {
  ElementGeometry g{};
  g.origin = a;
  g.jac[0][0] = b.x - a.x;
  g.jac[0][1] = c.x - a.x;
  g.jac[1][0] = b.y - a.y;
  g.jac[1][1] = c.y - a.y;
  g.det = g.jac[0][0] * g.jac[1][1] - g.jac[0][1] * g.jac[1][0];
  if (!(g.det > 0.0)) throw Error("element has non-positive Jacobian");
  g.inv_jac_t[0][0] = g.jac[1][1] / g.det;
  g.inv_jac_t[0][1] = -g.jac[1][0] / g.det;
  g.inv_jac_t[1][0] = -g.jac[0][1] / g.det;
  g.inv_jac_t[1][1] = g.jac[0][0] / g.det;
  return g;
}

FeSpace::FeSpace(TriMesh mesh, int degree, int quadrature_degree)
    : mesh_(std::move(mesh)),
      elem_(degree),
      dofs_(mesh_, elem_),
      quad_(triangle_quadrature(quadrature_degree < 0 ? 3 * degree : quadrature_degree)) {
  const auto nq = quad_.size();
  const auto nl = elem_.n_nodes();
  tab_.values.resize(static_cast<Eigen::Index>(nq), static_cast<Eigen::Index>(nl));
  tab_.gradients.assign(nq, std::vector<Point2>(nl));
  std::vector<double> vals(nl);
  for (std::size_t q = 0; q < nq; ++q) {
    elem_.evaluate(quad_.points[q], vals, tab_.gradients[q]);
    for (std::size_t i = 0; i < nl; ++i)
      tab_.values(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(i)) = vals[i];
  }

  const auto& verts = mesh_.vertices();
  geom_.reserve(mesh_.n_triangles());
  qpoints_.reserve(mesh_.n_triangles() * nq);
  for (const auto& tri : mesh_.triangles()) {
    geom_.push_back(make_geometry(verts[tri[0]], verts[tri[1]], verts[tri[2]]));
    for (std::size_t q = 0; q < nq; ++q) qpoints_.push_back(geom_.back().map(quad_.points[q]));
  }

  // Greedy colouring: elements in one colour share no vertex.
  std::vector<std::vector<char>> used;
  for (std::size_t e = 0; e < mesh_.n_triangles(); ++e) {
    const auto& tri = mesh_.triangles()[e];
    std::size_t c = 0;
    for (; c < colors_.size(); ++c)
      if (!used[c][tri[0]] && !used[c][tri[1]] && !used[c][tri[2]]) break;
    if (c == colors_.size()) {
      colors_.emplace_back();
      used.emplace_back(verts.size(), 0);
    }
    colors_[c].push_back(e);
    for (auto v : tri) used[c][v] = 1;
  }
}

}  // namespace gs
