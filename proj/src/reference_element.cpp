#include <algorithm>
#include <map>

#include "gs/fem.hpp"

namespace gs {

ReferenceElement::ReferenceElement(int degree) : degree_(degree) {
  if (degree < 1) throw Error("element degree must be at least 1");
  const int p = degree;
  indices_.push_back({p, 0, 0});
  indices_.push_back({0, p, 0});
  indices_.push_back({0, 0, p});
  for (int k = 1; k < p; ++k) indices_.push_back({p - k, k, 0});
  for (int k = 1; k < p; ++k) indices_.push_back({0, p - k, k});
  for (int k = 1; k < p; ++k) indices_.push_back({k, 0, p - k});
  for (int i2 = 1; i2 < p; ++i2)
    for (int i1 = 1; i1 + i2 < p; ++i1) indices_.push_back({p - i1 - i2, i1, i2});

  nodes_.reserve(indices_.size());
  for (const auto& idx : indices_)
    nodes_.push_back({static_cast<double>(idx[1]) / p, static_cast<double>(idx[2]) / p});
}

namespace {

// f_i(l) = prod_{m<i} (p*l - m) / (m+1) and its derivative in l.
void lagrange_factor(int p, int i, double l, double& f, double& df) {
  f = 1.0;
  df = 0.0;
  for (int m = 0; m < i; ++m) {
    const double g = (p * l - m) / (m + 1.0);
    const double dg = p / (m + 1.0);
    df = df * g + f * dg;
    f *= g;
  }
}

}  // namespace

void ReferenceElement::evaluate(Point2 ref, std::span<double> values,
                                std::span<Point2> grads) const {
  if (values.size() != n_nodes() || grads.size() != n_nodes())
    throw DimensionError("ReferenceElement::evaluate: span size mismatch");
  const double lam[3] = {1.0 - ref.x - ref.y, ref.x, ref.y};
  static constexpr double kGradLam[3][2] = {{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}};
  for (std::size_t n = 0; n < n_nodes(); ++n) {
    double f[3], df[3];
    for (int k = 0; k < 3; ++k) lagrange_factor(degree_, indices_[n][k], lam[k], f[k], df[k]);
    values[n] = f[0] * f[1] * f[2];
    const double d0 = df[0] * f[1] * f[2], d1 = f[0] * df[1] * f[2], d2 = f[0] * f[1] * df[2];
    grads[n] = {d0 * kGradLam[0][0] + d1 * kGradLam[1][0] + d2 * kGradLam[2][0],
                d0 * kGradLam[0][1] + d1 * kGradLam[1][1] + d2 * kGradLam[2][1]};
  }
}

DofMap::DofMap(const TriMesh& mesh, const ReferenceElement& elem) : n_local_(elem.n_nodes()) {
  // A node is identified by the global vertices it is a combination of and
  // the integer weights on them; neighbours sharing an edge agree on that key.
  using Key = std::vector<std::pair<std::size_t, int>>;
  std::map<Key, std::size_t> ids;
  const int p = elem.degree();
  const auto& verts = mesh.vertices();
  table_.resize(mesh.n_triangles() * n_local_);
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    const auto& tri = mesh.triangles()[t];
    for (std::size_t k = 0; k < n_local_; ++k) {
      const auto& idx = elem.barycentric_indices()[k];
      Key key;
      for (int v = 0; v < 3; ++v)
        if (idx[v] != 0) key.emplace_back(tri[v], idx[v]);
      std::sort(key.begin(), key.end());
      auto [it, inserted] = ids.try_emplace(std::move(key), n_dofs_);
      if (inserted) {
        Point2 x{0.0, 0.0};
        for (int v = 0; v < 3; ++v) {
          x.x += idx[v] * verts[tri[v]].x / p;
          x.y += idx[v] * verts[tri[v]].y / p;
        }
        points_.push_back(x);
        ++n_dofs_;
      }
      table_[t * n_local_ + k] = it->second;
    }
  }
}

}  // namespace gs
