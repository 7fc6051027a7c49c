#pragma once

#include <vector>

namespace ssf::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^alpha (1+x)^beta,
/// alpha, beta > -1 (Golub-Welsch).
Rule gauss_jacobi(int n, double alpha, double beta);

Rule gauss_legendre(int n);

/// Affine map of a Legendre rule onto [a, b].
Rule mapped_legendre(int n, double a, double b);

/// Rule for integral_a^b (t - a)^beta g(t) dt; returned weights include the
/// (t - a)^beta factor.
Rule left_singular(int n, double beta, double a, double b);

}  // namespace ssf::quad
