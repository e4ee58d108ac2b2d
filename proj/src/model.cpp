#include "gs/model.hpp"

#include <cmath>
#include <numbers>

namespace gs {

namespace {
constexpr double kPi = std::numbers::pi;
}

void GrayScottParams::validate() const {
  if (!(alpha1 > 0.0 && alpha2 > 0.0)) throw Error("diffusion coefficients must be positive");
  if (!(beta0 > 0.0)) throw Error("feed rate beta0 must be positive");
  if (!(beta0 + k0 > 0.0)) throw Error("removal rate beta0 + k0 must be positive");
}

std::array<double, 2> reaction(const GrayScottProblem& problem, double t, Point2 x, double u,
                               double v) {
  auto f = reaction(u, v, problem.params);
  if (problem.source_f1) f[0] += (*problem.source_f1)(x, t);
  if (problem.source_f2) f[1] += (*problem.source_f2)(x, t);
  return f;
}

PointReaction make_point_reaction(const GrayScottProblem& problem) {
  return [problem](double t, Point2 x, double u, double v) {
    return reaction(problem, t, x, u, v);
  };
}

GrayScottProblem example1() {
  GrayScottProblem p;
  p.name = "example1";
  p.params = {1.0, 1.0, 1.0, 0.0};
  p.domain = {-1.0, 1.0, -1.0, 1.0};
  p.t_final = 1.0;
  auto shape = [](Point2 x) { return std::cos(kPi * x.x) * std::cos(kPi * x.y); };
  p.exact_u = [](Point2 x, double t) { return exact::example1_u(x.x, x.y, t); };
  p.exact_v = [](Point2 x, double t) { return exact::example1_v(x.x, x.y, t); };
  p.u0 = [](Point2) { return 0.0; };
  p.v0 = [](Point2) { return 0.0; };
  p.u1 = shape;
  p.v1 = [shape](Point2 x) { return 2.0 * shape(x); };

  // With C = cos(pi x) cos(pi y): u = C sin t, u_t = C cos t, lap u = -2 pi^2 u.
  const GrayScottParams prm = p.params;
  p.source_f1 = [prm, shape](Point2 x, double t) {
    const double c = shape(x);
    const double u = c * std::sin(t), v = 2.0 * u;
    return c * std::cos(t) + 2.0 * kPi * kPi * prm.alpha1 * u - prm.beta0 * (1.0 - u) + u * v * v;
  };
  p.source_f2 = [prm, shape](Point2 x, double t) {
    const double c = shape(x);
    const double u = c * std::sin(t), v = 2.0 * u;
    return 2.0 * c * std::cos(t) + 2.0 * kPi * kPi * prm.alpha2 * v + (prm.beta0 + prm.k0) * v -
           u * v * v;
  };
  return p;
}

GrayScottProblem example2() {
  GrayScottProblem p;
  p.name = "example2";
  p.params = {1.6e-5, 8e-6, 3.7e-2, 6e-2};
  p.domain = {0.0, 1.0, 0.0, 1.0};
  p.t_final = 10.0;
  constexpr double b = exact::kExample2B;
  auto shape = [](Point2 x) { return std::cos(2.0 * kPi * x.x) * std::cos(2.0 * kPi * x.y); };
  p.exact_u = [](Point2 x, double t) { return exact::example2_u(x.x, x.y, t); };
  p.exact_v = [](Point2 x, double t) { return exact::example2_v(x.x, x.y, t); };
  p.u0 = [](Point2) { return 1.0; };
  p.v0 = [](Point2) { return 0.25; };
  // Time derivatives at t = 0.
  p.u1 = [shape](Point2 x) { return -2.0 * kPi * b * shape(x); };
  p.v1 = [shape](Point2 x) { return 0.5 * kPi * shape(x); };

  // With C = cos(2 pi x) cos(2 pi y), S = sin(2 pi t), lap C = -8 pi^2 C:
  //   u_t = -2 pi b C cos(2 pi t),  lap u = 8 pi^2 b C S,
  //   v_t = (pi/2) C cos(2 pi t),   lap v = -2 pi^2 C S.
  const GrayScottParams prm = p.params;
  p.source_f1 = [prm, shape](Point2 x, double t) {
    const double c = shape(x), s = std::sin(2.0 * kPi * t), co = std::cos(2.0 * kPi * t);
    const double u = 1.0 - b * c * s, v = 0.25 * (1.0 + c * s);
    const double u_t = -2.0 * kPi * b * c * co;
    const double lap_u = 8.0 * kPi * kPi * b * c * s;
    return u_t - prm.alpha1 * lap_u - prm.beta0 * (1.0 - u) + u * v * v;
  };
  p.source_f2 = [prm, shape](Point2 x, double t) {
    const double c = shape(x), s = std::sin(2.0 * kPi * t), co = std::cos(2.0 * kPi * t);
    const double u = 1.0 - b * c * s, v = 0.25 * (1.0 + c * s);
    const double v_t = 0.5 * kPi * c * co;
    const double lap_v = -2.0 * kPi * kPi * c * s;
    return v_t - prm.alpha2 * lap_v + (prm.beta0 + prm.k0) * v - u * v * v;
  };
  return p;
}

double example3_v0(Point2 p) {
  if (p.x < 1.0 || p.x > 1.5 || p.y < 1.0 || p.y > 1.5) return 0.0;
  const double sx = std::sin(4.0 * kPi * p.x), sy = std::sin(4.0 * kPi * p.y);
  return 0.25 * sx * sx * sy * sy;
}

GrayScottProblem example3(double t_final) {
  GrayScottProblem p;
  p.name = "example3";
  p.params = {8e-5, 4e-5, 3e-2, 6e-2};
  p.domain = {0.0, 2.5, 0.0, 2.5};
  p.t_final = t_final;
  p.v0 = example3_v0;
  p.u0 = [](Point2 x) { return 1.0 - 2.0 * example3_v0(x); };
  // The initial time derivatives are prescribed equal to the initial values.
  p.u1 = p.u0;
  p.v1 = p.v0;
  return p;
}

GrayScottProblem make_example(int id) {
  switch (id) {
    case 1: return example1();
    case 2: return example2();
    case 3: return example3();
    default: throw Error("unknown example id (expected 1, 2 or 3)");
  }
}

}  // namespace gs
