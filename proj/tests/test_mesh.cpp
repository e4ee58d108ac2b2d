#include <doctest.h>

#include <cmath>
#include <map>

#include "gs/mesh.hpp"

using namespace gs;

TEST_CASE("smallest structured mesh") {
  const auto mesh = build_structured_mesh({0, 1, 0, 1}, 1);
  CHECK(mesh.n_triangles() == 2);
  CHECK(mesh.vertices().size() == 4);
  CHECK(mesh.boundary_edges().size() == 4);
}

TEST_CASE("triangle areas partition the domain") {
  const auto mesh = build_structured_mesh({0, 1, 0, 1}, 8);
  CHECK(mesh.n_triangles() == 128);
  double area = 0.0;
  for (std::size_t t = 0; t < mesh.n_triangles(); ++t) {
    CHECK(mesh.triangle_area(t) > 0.0);
    area += mesh.triangle_area(t);
  }
  CHECK(std::abs(area - 1.0) <= 1e-12);
}

TEST_CASE("h is the diagonal of a cell") {
  const auto mesh = build_structured_mesh({0, 2.5, 0, 2.5}, 4);
  CHECK(mesh.h() == doctest::Approx(std::sqrt(2.0) * 0.625).epsilon(1e-14));
  CHECK(mesh.h() == doctest::Approx(0.883883).epsilon(1e-6));
  CHECK(mesh.cell_size() == doctest::Approx(0.625));
}

TEST_CASE("boundary edges cover the perimeter once per side") {
  const int n = 5;
  const RectDomain dom{-1, 1, -1, 1};
  const auto mesh = build_structured_mesh(dom, n);
  CHECK(mesh.boundary_edges().size() == 4 * n);
  int count[4] = {0, 0, 0, 0};
  double length = 0.0;
  for (const auto& e : mesh.boundary_edges()) {
    ++count[static_cast<int>(e.side)];
    const auto& a = mesh.vertices()[e.vertices[0]];
    const auto& b = mesh.vertices()[e.vertices[1]];
    length += std::hypot(a.x - b.x, a.y - b.y);
    switch (e.side) {
      case BoundarySide::Bottom: CHECK(a.y == dom.y_min); CHECK(b.y == dom.y_min); break;
      case BoundarySide::Top: CHECK(a.y == dom.y_max); CHECK(b.y == dom.y_max); break;
      case BoundarySide::Left: CHECK(a.x == dom.x_min); CHECK(b.x == dom.x_min); break;
      case BoundarySide::Right: CHECK(a.x == dom.x_max); CHECK(b.x == dom.x_max); break;
    }
  }
  for (int c : count) CHECK(c == n);
  CHECK(length == doctest::Approx(8.0));
}

TEST_CASE("triangles are counter-clockwise after construction") {
  // Hand-built mesh with one clockwise triangle.
  std::vector<Point2> v{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  std::vector<Triangle> t{{0, 2, 1}, {0, 2, 3}};
  const TriMesh mesh({0, 1, 0, 1}, 1, v, t);
  for (const auto& tri : mesh.triangles()) {
    const auto& a = mesh.vertices()[tri[0]];
    const auto& b = mesh.vertices()[tri[1]];
    const auto& c = mesh.vertices()[tri[2]];
    CHECK((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x) > 0.0);
  }
}

TEST_CASE("invalid input is rejected") {
  CHECK_THROWS_AS(build_structured_mesh({0, 1, 0, 1}, 0), Error);
  CHECK_THROWS_AS(build_structured_mesh({1, 0, 0, 1}, 2), Error);
  std::vector<Point2> v{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  // Degenerate triangle.
  CHECK_THROWS_AS(TriMesh({0, 1, 0, 1}, 1, v, {{0, 1, 1}, {0, 2, 3}}), Error);
  // Vertex index out of range.
  CHECK_THROWS_AS(TriMesh({0, 1, 0, 1}, 1, v, {{0, 1, 7}, {0, 2, 3}}), Error);
}

TEST_CASE("locate returns a containing triangle and consistent reference coordinates") {
  const auto mesh = build_structured_mesh({0, 2, -1, 1}, 4);
  const Point2 pts[] = {{0, -1}, {2, 1}, {0.3, 0.2}, {1.0, 0.0}, {1.99, -0.99}, {0.5, 0.5}};
  for (auto p : pts) {
    const auto loc = mesh.locate(p);
    const auto& tri = mesh.triangles()[loc.triangle];
    const auto& a = mesh.vertices()[tri[0]];
    const auto& b = mesh.vertices()[tri[1]];
    const auto& c = mesh.vertices()[tri[2]];
    CHECK(loc.ref.x >= -1e-12);
    CHECK(loc.ref.y >= -1e-12);
    CHECK(loc.ref.x + loc.ref.y <= 1.0 + 1e-12);
    const double x = a.x + (b.x - a.x) * loc.ref.x + (c.x - a.x) * loc.ref.y;
    const double y = a.y + (b.y - a.y) * loc.ref.x + (c.y - a.y) * loc.ref.y;
    CHECK(x == doctest::Approx(p.x));
    CHECK(y == doctest::Approx(p.y));
  }
  CHECK_THROWS_AS(mesh.locate({2.5, 0.0}), Error);
}

TEST_CASE("every interior edge is shared by exactly two triangles") {
  const auto mesh = build_structured_mesh({0, 1, 0, 1}, 3);
  std::map<std::pair<std::size_t, std::size_t>, int> edges;
  for (const auto& t : mesh.triangles())
    for (int k = 0; k < 3; ++k) {
      auto a = t[k], b = t[(k + 1) % 3];
      ++edges[{std::min(a, b), std::max(a, b)}];
    }
  std::size_t boundary = 0;
  for (const auto& [e, c] : edges) {
    CHECK((c == 1 || c == 2));
    boundary += c == 1;
  }
  CHECK(boundary == mesh.boundary_edges().size());
}
