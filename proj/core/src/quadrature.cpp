#include "spinrotor/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "spinrotor/errors.hpp"

namespace spinrotor {

GaussHermiteRule gauss_hermite(int n) {
  if (n < 1 || n > 512)
    throw Error(ErrorCode::DomainError, "gauss_hermite order out of range");
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = std::sqrt(k / 2.0);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mu0 = std::sqrt(std::numbers::pi);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

}  // namespace spinrotor
