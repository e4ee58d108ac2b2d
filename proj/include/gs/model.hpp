#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <string>

#include "gs/mesh.hpp"
#include "gs/spectral_basis.hpp"

namespace gs {

struct GrayScottParams {
  double alpha1 = 1.0;  // diffusion of u
  double alpha2 = 1.0;  // diffusion of v
  double beta0 = 1.0;   // feed rate
  double k0 = 0.0;      // removal-rate increment

  /// alpha1, alpha2, beta0 > 0 and beta0 + k0 > 0.
  void validate() const;
};

using SpaceTimeField = std::function<double(Point2, double)>;

struct GrayScottProblem {
  std::string name;
  GrayScottParams params;
  RectDomain domain;
  double t_final = 1.0;
  ScalarField u0, v0, u1, v1;
  std::optional<SpaceTimeField> source_f1, source_f2;
  std::optional<SpaceTimeField> exact_u, exact_v;

  bool has_exact() const { return exact_u.has_value() && exact_v.has_value(); }
};

/// (beta0 (1-u) - u v^2, -(beta0+k0) v + u v^2).
inline std::array<double, 2> reaction(double u, double v, const GrayScottParams& p) {
  const double uvv = u * v * v;
  return {p.beta0 * (1.0 - u) - uvv, -(p.beta0 + p.k0) * v + uvv};
}

/// Gray-Scott reaction plus the problem's source terms, if any.
std::array<double, 2> reaction(const GrayScottProblem& problem, double t, Point2 x, double u,
                               double v);

/// The problem's full reaction as a PointReaction (captures a copy).
PointReaction make_point_reaction(const GrayScottProblem& problem);

/// Omega = [-1,1]^2, T = 1, alpha1 = alpha2 = beta0 = 1, k0 = 0,
/// u = cos(pi x) cos(pi y) sin t, v = 2u. Sources make the pair exact.
GrayScottProblem example1();
/// Omega = [0,1]^2, T = 10, manufactured trigonometric solution with b = 1/2.
GrayScottProblem example2();
/// Omega = [0,2.5]^2, localized initial spot, no exact solution.
GrayScottProblem example3(double t_final = 1000.0);
/// 1, 2 or 3.
GrayScottProblem make_example(int id);

// Closed-form solutions, templated on the scalar type so tests can push
// automatic-differentiation numbers through them.
namespace exact {

template <class T>
T example1_u(T x, T y, T t) {
  using std::cos, std::sin;
  constexpr double pi = std::numbers::pi;
  return cos(pi * x) * cos(pi * y) * sin(t);
}
template <class T>
T example1_v(T x, T y, T t) {
  return 2.0 * example1_u(x, y, t);
}

inline constexpr double kExample2B = 0.5;

template <class T>
T example2_u(T x, T y, T t) {
  using std::cos, std::sin;
  constexpr double pi = std::numbers::pi;
  return 1.0 - kExample2B * cos(2.0 * pi * x) * cos(2.0 * pi * y) * sin(2.0 * pi * t);
}
template <class T>
T example2_v(T x, T y, T t) {
  using std::cos, std::sin;
  constexpr double pi = std::numbers::pi;
  return 0.25 * (1.0 + cos(2.0 * pi * x) * cos(2.0 * pi * y) * sin(2.0 * pi * t));
}

}  // namespace exact

/// Initial v for the localized-spot example.
double example3_v0(Point2 p);

}  // namespace gs
