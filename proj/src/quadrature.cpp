#include <Eigen/Eigenvalues>
#include <cmath>

#include "gs/fem.hpp"

namespace gs {

// Golub-Welsch on the Jacobi matrix of the (1-x)^alpha weight.
void gauss_jacobi(int n, double alpha, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw Error("gauss_jacobi: need at least one point");
  const double beta = 0.0;
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    const double s = 2.0 * k + alpha + beta;
    jacobi(k, k) = (k == 0) ? (beta - alpha) / (alpha + beta + 2.0)
                            : (beta * beta - alpha * alpha) / (s * (s + 2.0));
    if (k + 1 < n) {
      const double m = k + 1.0;
      const double t = 2.0 * m + alpha + beta;
      const double off = std::sqrt(4.0 * m * (m + alpha) * (m + beta) * (m + alpha + beta) /
                                   (t * t * (t + 1.0) * (t - 1.0)));
      jacobi(k, k + 1) = jacobi(k + 1, k) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  const double mu0 = std::pow(2.0, alpha + beta + 1.0) * std::tgamma(alpha + 1.0) *
                     std::tgamma(beta + 1.0) / std::tgamma(alpha + beta + 2.0);
  nodes.resize(n);
  weights.resize(n);
  for (int k = 0; k < n; ++k) {
    nodes[k] = eig.eigenvalues()(k);
    const double v0 = eig.eigenvectors()(0, k);
    weights[k] = mu0 * v0 * v0;
  }
}

QuadratureRule triangle_quadrature(int degree) {
  if (degree < 0) throw Error("quadrature degree must be non-negative");
  const int n = std::max(1, (degree + 2) / 2);
  std::vector<double> s, ws, r, wr;
  gauss_jacobi(n, 0.0, s, ws);
  gauss_jacobi(n, 1.0, r, wr);

  QuadratureRule rule;
  rule.degree = degree;
  rule.points.reserve(static_cast<std::size_t>(n) * n);
  rule.weights.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    const double eta = 0.5 * (1.0 + r[j]);
    for (int i = 0; i < n; ++i) {
      const double xi = 0.5 * (1.0 + s[i]) * (1.0 - eta);
      rule.points.push_back({xi, eta});
      rule.weights.push_back(ws[i] * wr[j] / 8.0);
    }
  }
  return rule;
}

}  // namespace gs
