#pragma once

#include <vector>

namespace spinrotor {

// Nodes and weights for int f(x) exp(-x^2) dx, exact through degree 2n-1.
struct GaussHermiteRule {
  std::vector<double> nodes;    // ascending
  std::vector<double> weights;  // sum = sqrt(pi)
};

// Golub-Welsch: eigen-decomposition of the Jacobi matrix.
GaussHermiteRule gauss_hermite(int n);

}  // namespace spinrotor
