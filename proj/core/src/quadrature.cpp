#include "orca/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <string>

#include "orca/errors.hpp"

namespace orca {

QuadratureRule gauss_jacobi(JacobiParams params, int count) {
  if (!params.valid()) throw InvalidParams("Jacobi parameters must exceed -1");
  if (count < 1) throw InvalidParams("quadrature needs at least one node, got " + std::to_string(count));

  const double a = params.alpha;
  const double b = params.beta;
  const double ab = a + b;

  // Symmetric tridiagonal Jacobi matrix: diagonal = monic recurrence centres,
  // off-diagonal = square roots of the monic recurrence weights.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(count, count);
  for (int k = 0; k < count; ++k) {
    const double s = 2.0 * k + ab;
    jacobi(k, k) = k == 0 ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    if (k + 1 < count) {
      const int j = k + 1;
      const double t = 2.0 * j + ab;
      const double off = j == 1
                             ? 4.0 * (1.0 + a) * (1.0 + b) / (t * t * (t + 1.0))
                             : 4.0 * j * (j + a) * (j + b) * (j + ab) / (t * t * (t + 1.0) * (t - 1.0));
      jacobi(k, j) = jacobi(j, k) = std::sqrt(off);
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success) throw Error("Golub-Welsch eigen-decomposition failed");

  const double mu0 = std::exp((ab + 1.0) * std::numbers::ln2 + std::lgamma(a + 1.0) +
                              std::lgamma(b + 1.0) - std::lgamma(ab + 2.0));
  QuadratureRule rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  for (int k = 0; k < count; ++k) {
    rule.nodes[k] = solver.eigenvalues()(k);
    const double v0 = solver.eigenvectors()(0, k);
    rule.weights[k] = mu0 * v0 * v0;
  }
  return rule;
}

}  // namespace orca
