#include <doctest.h>

#include <omp.h>

#include "gs/kernels.hpp"

using namespace gs;
using kernels::MatrixKind;

namespace {

struct Threads {
  explicit Threads(int n) : saved(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~Threads() { omp_set_num_threads(saved); }
  int saved;
};

}  // namespace

TEST_CASE("parallel kernels reproduce the serial reference") {
  // Oversubscribe on purpose so colour races would show up even on one core.
  Threads threads(4);
  for (int p : {1, 3}) {
    const FeSpace space(build_structured_mesh({0, 1.5, -0.5, 1}, 5), p);
    for (auto kind : {MatrixKind::Mass, MatrixKind::Stiffness}) {
      SymmetricMatrix a(space.n_dofs()), b(space.n_dofs());
      kernels::serial::assemble(space, kind, a);
      kernels::omp::assemble(space, kind, b);
      // Colour-ordered summation changes rounding only.
      CHECK((a.dense() - b.dense()).cwiseAbs().maxCoeff() <= 1e-14);
    }

    const auto n = static_cast<Eigen::Index>(space.n_dofs());
    const Eigen::MatrixXd nodal = Eigen::MatrixXd::Random(n, 2);
    Eigen::MatrixXd qa, qb;
    kernels::serial::interpolate_to_quadrature(space, nodal, qa);
    kernels::omp::interpolate_to_quadrature(space, nodal, qb);
    CHECK(qa.rows() == static_cast<Eigen::Index>(space.n_elements() * space.quadrature().size()));
    CHECK(qa == qb);

    Eigen::MatrixXd la, lb;
    kernels::serial::integrate_against_basis(space, qa, la);
    kernels::omp::integrate_against_basis(space, qa, lb);
    CHECK((la - lb).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("interpolate then integrate equals the mass matrix product") {
  // For fields in the space, sum_q w rho_i u_h = (M u)_i whenever the
  // quadrature is exact for degree 2p.
  const FeSpace space(build_structured_mesh({0, 1, 0, 1}, 4), 2);
  const auto n = static_cast<Eigen::Index>(space.n_dofs());
  const Eigen::VectorXd u = Eigen::VectorXd::Random(n);
  Eigen::MatrixXd q, load;
  kernels::omp::interpolate_to_quadrature(space, u, q);
  kernels::omp::integrate_against_basis(space, q, load);
  SymmetricMatrix M(space.n_dofs());
  kernels::serial::assemble(space, MatrixKind::Mass, M);
  CHECK((load.col(0) - M * u).cwiseAbs().maxCoeff() <= 1e-14);
}
