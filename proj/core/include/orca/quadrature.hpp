#pragma once

#include <vector>

#include "orca/orthopoly.hpp"

namespace orca {

/// Nodes and weights of an interpolatory quadrature rule on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Jacobi rule with `count` nodes for the weight (1 - x)^alpha (1 + x)^beta,
/// computed by the Golub-Welsch eigenvalue method on the symmetric Jacobi matrix.
/// Exact for polynomials of degree <= 2 * count - 1. Nodes are ascending.
QuadratureRule gauss_jacobi(JacobiParams params, int count);

}  // namespace orca
