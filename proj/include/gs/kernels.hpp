#pragma once

// Element-loop kernels. Each kernel exists twice: `serial` walks elements in
// index order and is the reference the tests compare against; `omp` walks
// the vertex-disjoint colour groups of the space with an OpenMP loop inside
// each group, so no two threads ever scatter into the same global entry.

#include <Eigen/Dense>

#include "gs/fem.hpp"

namespace gs::kernels {

enum class MatrixKind { Mass, Stiffness };

// Rows of a quadrature-point matrix are indexed e * n_quad + q; columns are
// independent fields (e.g. the two species).

namespace serial {

void assemble(const FeSpace& space, MatrixKind kind, SymmetricMatrix& out);
void interpolate_to_quadrature(const FeSpace& space, const Eigen::MatrixXd& nodal,
                               Eigen::MatrixXd& qvals);
void integrate_against_basis(const FeSpace& space, const Eigen::MatrixXd& qvals,
                             Eigen::MatrixXd& load);

}  // namespace serial

namespace omp {

void assemble(const FeSpace& space, MatrixKind kind, SymmetricMatrix& out);
void interpolate_to_quadrature(const FeSpace& space, const Eigen::MatrixXd& nodal,
                               Eigen::MatrixXd& qvals);
void integrate_against_basis(const FeSpace& space, const Eigen::MatrixXd& qvals,
                             Eigen::MatrixXd& load);

}  // namespace omp

}  // namespace gs::kernels
