#include "gs/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace gs {

namespace {

double signed_area(const Point2& a, const Point2& b, const Point2& c) {
  return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
}

double dist(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

}  // namespace

void RectDomain::validate() const {
  if (!(std::isfinite(x_min) && std::isfinite(x_max) && std::isfinite(y_min) &&
        std::isfinite(y_max)))
    throw Error("domain bounds must be finite");
  if (!(x_min < x_max) || !(y_min < y_max))
    throw Error("degenerate domain: require x_min < x_max and y_min < y_max");
}

TriMesh::TriMesh(RectDomain domain, int cells_per_side, std::vector<Point2> vertices,
                 std::vector<Triangle> triangles)
    : domain_(domain),
      cells_per_side_(cells_per_side),
      vertices_(std::move(vertices)),
      triangles_(std::move(triangles)) {
  domain_.validate();
  if (cells_per_side_ < 1) throw Error("cells_per_side must be positive");
  cell_dx_ = domain_.width() / cells_per_side_;
  cell_dy_ = domain_.height() / cells_per_side_;
  const std::size_t n_cells = static_cast<std::size_t>(cells_per_side_) * cells_per_side_;
  if (triangles_.size() != 2 * n_cells)
    throw Error("structured mesh needs exactly two triangles per cell");

  constexpr std::size_t kUnset = static_cast<std::size_t>(-1);
  cell_triangles_.assign(n_cells, {kUnset, kUnset});

  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    auto& tri = triangles_[t];
    for (auto v : tri)
      if (v >= vertices_.size()) throw Error("triangle references a missing vertex");
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw Error("triangle repeats a vertex");
    const Point2 &a = vertices_[tri[0]], &b = vertices_[tri[1]], &c = vertices_[tri[2]];
    double area = signed_area(a, b, c);
    if (area == 0.0) throw Error("degenerate triangle");
    if (area < 0.0) std::swap(tri[1], tri[2]);
    h_ = std::max({h_, dist(a, b), dist(b, c), dist(a, c)});

    const double cx = (a.x + b.x + c.x) / 3.0, cy = (a.y + b.y + c.y) / 3.0;
    const int i = std::clamp(static_cast<int>((cx - domain_.x_min) / cell_dx_), 0,
                             cells_per_side_ - 1);
    const int j = std::clamp(static_cast<int>((cy - domain_.y_min) / cell_dy_), 0,
                             cells_per_side_ - 1);
    auto& slot = cell_triangles_[static_cast<std::size_t>(j) * cells_per_side_ + i];
    if (slot[0] == kUnset)
      slot[0] = t;
    else if (slot[1] == kUnset)
      slot[1] = t;
    else
      throw Error("more than two triangles in one cell");
  }

  // Edges seen once are on the boundary.
  std::map<std::pair<std::size_t, std::size_t>, int> edge_count;
  for (const auto& tri : triangles_)
    for (int k = 0; k < 3; ++k) {
      auto a = tri[k], b = tri[(k + 1) % 3];
      ++edge_count[{std::min(a, b), std::max(a, b)}];
    }
  const double tol = 1e-12 * std::max(domain_.width(), domain_.height());
  for (const auto& [edge, count] : edge_count) {
    if (count > 2) throw Error("non-manifold edge");
    if (count == 2) continue;
    const Point2 &a = vertices_[edge.first], &b = vertices_[edge.second];
    BoundarySide side;
    if (std::abs(a.y - domain_.y_min) < tol && std::abs(b.y - domain_.y_min) < tol)
      side = BoundarySide::Bottom;
    else if (std::abs(a.x - domain_.x_max) < tol && std::abs(b.x - domain_.x_max) < tol)
      side = BoundarySide::Right;
    else if (std::abs(a.y - domain_.y_max) < tol && std::abs(b.y - domain_.y_max) < tol)
      side = BoundarySide::Top;
    else if (std::abs(a.x - domain_.x_min) < tol && std::abs(b.x - domain_.x_min) < tol)
      side = BoundarySide::Left;
    else
      throw Error("mesh is not conforming: dangling interior edge");
    boundary_edges_.push_back({{edge.first, edge.second}, side});
  }
}

double TriMesh::triangle_area(std::size_t t) const {
  const auto& tri = triangles_.at(t);
  return signed_area(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
}

MeshLocation TriMesh::locate(Point2 p) const {
  const double tol = 1e-12 * std::max(domain_.width(), domain_.height());
  if (p.x < domain_.x_min - tol || p.x > domain_.x_max + tol || p.y < domain_.y_min - tol ||
      p.y > domain_.y_max + tol)
    throw Error("point outside the mesh domain");
  const int i = std::clamp(static_cast<int>(std::floor((p.x - domain_.x_min) / cell_dx_)), 0,
                           cells_per_side_ - 1);
  const int j = std::clamp(static_cast<int>(std::floor((p.y - domain_.y_min) / cell_dy_)), 0,
                           cells_per_side_ - 1);
  const auto& cand = cell_triangles_[static_cast<std::size_t>(j) * cells_per_side_ + i];

  MeshLocation best;
  double best_violation = 1e300;
  for (auto t : cand) {
    const auto& tri = triangles_[t];
    const Point2 &a = vertices_[tri[0]], &b = vertices_[tri[1]], &c = vertices_[tri[2]];
    const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
    const double dx = p.x - a.x, dy = p.y - a.y;
    const double xi = ((c.y - a.y) * dx - (c.x - a.x) * dy) / det;
    const double eta = (-(b.y - a.y) * dx + (b.x - a.x) * dy) / det;
    const double violation = std::max({0.0, -xi, -eta, xi + eta - 1.0});
    if (violation < best_violation) {
      best_violation = violation;
      best = {t, {xi, eta}};
    }
  }
  return best;
}

TriMesh build_structured_mesh(const RectDomain& domain, int cells_per_side) {
  if (cells_per_side < 1) throw Error("cells_per_side must be positive");
  domain.validate();
  const int n = cells_per_side;
  const std::size_t stride = static_cast<std::size_t>(n) + 1;
  std::vector<Point2> vertices;
  vertices.reserve(stride * stride);
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i)
      vertices.push_back({domain.x_min + domain.width() * i / n,
                          domain.y_min + domain.height() * j / n});
  // Pin the far edges exactly.
  for (std::size_t k = 0; k < stride; ++k) {
    vertices[k * stride + n].x = domain.x_max;
    vertices[n * stride + k].y = domain.y_max;
  }

  std::vector<Triangle> triangles;
  triangles.reserve(2 * static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const std::size_t v00 = j * stride + i, v10 = v00 + 1;
      const std::size_t v01 = v00 + stride, v11 = v01 + 1;
      triangles.push_back({v00, v10, v11});
      triangles.push_back({v00, v11, v01});
    }
  return TriMesh(domain, n, std::move(vertices), std::move(triangles));
}

}  // namespace gs
