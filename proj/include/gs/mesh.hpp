#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched vector/matrix sizes between collaborating objects.
class DimensionError : public Error {
 public:
  using Error::Error;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Axis-aligned rectangle [x_min, x_max] x [y_min, y_max].
struct RectDomain {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }

  /// Throws gs::Error when the rectangle is empty or inverted.
  void validate() const;
};

enum class BoundarySide { Bottom, Right, Top, Left };

struct BoundaryEdge {
  std::array<std::size_t, 2> vertices;
  BoundarySide side;
};

using Triangle = std::array<std::size_t, 3>;

/// Reference coordinates (xi, eta) of a point inside a given triangle.
struct MeshLocation {
  std::size_t triangle = 0;
  Point2 ref;
};

/// Conforming triangulation of a rectangle built from a uniform grid of
/// square cells, each split into two triangles. Immutable after construction.
class TriMesh {
 public:
  /// Accepts triangles in any vertex order; they are reoriented to positive
  /// signed area. Every triangle must lie inside exactly one grid cell.
  TriMesh(RectDomain domain, int cells_per_side, std::vector<Point2> vertices,
          std::vector<Triangle> triangles);

  const RectDomain& domain() const { return domain_; }
  int cells_per_side() const { return cells_per_side_; }
  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<Triangle>& triangles() const { return triangles_; }
  const std::vector<BoundaryEdge>& boundary_edges() const { return boundary_edges_; }
  std::size_t n_triangles() const { return triangles_.size(); }

  /// Width of the underlying square cells (x direction).
  double cell_size() const { return cell_dx_; }
  /// Maximum triangle diameter.
  double h() const { return h_; }

  double triangle_area(std::size_t t) const;

  /// Finds the triangle containing p (points on shared edges resolve to
  /// either neighbour) and its reference coordinates.
  MeshLocation locate(Point2 p) const;

 private:
  RectDomain domain_;
  int cells_per_side_;
  double cell_dx_;
  double cell_dy_;
  double h_ = 0.0;
  std::vector<Point2> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<BoundaryEdge> boundary_edges_;
  // Two triangles per cell, row-major over cells.
  std::vector<std::array<std::size_t, 2>> cell_triangles_;
};

/// Uniform cells_per_side x cells_per_side grid, every cell split along the
/// diagonal from its lower-left to its upper-right corner.
TriMesh build_structured_mesh(const RectDomain& domain, int cells_per_side);

}  // namespace gs
