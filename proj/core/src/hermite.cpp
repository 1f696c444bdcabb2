#include "stq/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "stq/common.hpp"

namespace stq {

double hermite(int n, double x) {
  if (n < 0) throw DomainError("hermite: negative order");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> hermite_table(int n, double x) {
  if (n < 0) throw DomainError("hermite_table: negative order");
  std::vector<double> h(static_cast<std::size_t>(n) + 1);
  h[0] = 1.0;
  if (n >= 1) h[1] = 2.0 * x;
  for (int k = 1; k < n; ++k) h[k + 1] = 2.0 * x * h[k] - 2.0 * k * h[k - 1];
  return h;
}

std::vector<double> hermite_functions(int n, double x) {
  if (n < 0) throw DomainError("hermite_functions: negative order");
  std::vector<double> psi(static_cast<std::size_t>(n) + 1);
  psi[0] = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
  if (n >= 1) psi[1] = std::sqrt(2.0) * x * psi[0];
  for (int k = 1; k < n; ++k) {
    psi[k + 1] = std::sqrt(2.0 / (k + 1.0)) * x * psi[k] - std::sqrt(k / (k + 1.0)) * psi[k - 1];
  }
  return psi;
}

GaussHermiteRule gauss_hermite(int points) {
  if (points < 1) throw DomainError("gauss_hermite: need at least one point");
  // Jacobi matrix of the monic Hermite recurrence: off-diagonal √(k/2).
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(points, points);
  for (int k = 1; k < points; ++k) {
    j(k, k - 1) = j(k - 1, k) = std::sqrt(0.5 * k);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  GaussHermiteRule rule;
  rule.nodes.resize(static_cast<std::size_t>(points));
  rule.weights.resize(static_cast<std::size_t>(points));
  const double mu0 = std::sqrt(kPi);
  for (int k = 0; k < points; ++k) {
    rule.nodes[k] = es.eigenvalues()[k];
    const double v0 = es.eigenvectors()(0, k);
    rule.weights[k] = mu0 * v0 * v0;
  }
  return rule;
}

}  // namespace stq
