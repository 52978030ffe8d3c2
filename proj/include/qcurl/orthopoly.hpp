#pragma once

#include <vector>

namespace qcurl {

/// Highest polynomial index supported by the 1D kernels.
inline constexpr int kMaxPolyIndex = 64;

struct PolynomialValue {
  double value = 0.0;
  double derivative = 0.0;
};

/// Classic Jacobi polynomial J_n^{alpha,beta} and its derivative,
/// normalized so that J_n^{alpha,beta}(1) = binom(n+alpha, n).
PolynomialValue jacobi_eval(int n, double alpha, double beta, double zeta);

/// Generalized Jacobi kernel of index (-1,-1):
///   n = 0: (1-z)/2,  n = 1: (1+z)/2,  n >= 2: (z^2-1)/4 * J_{n-2}^{1,1}(z).
/// Lagrange endpoint interpolation: k11(n,-1) = delta_{0n}, k11(n,1) = delta_{1n}.
PolynomialValue k11_eval(int n, double zeta);

struct K22Eval {
  double value = 0.0;
  double derivative = 0.0;
  double second = 0.0;
};

/// Generalized Jacobi kernel of index (-2,-2) with value and first two
/// derivatives. Indices 0..3 are the Hermite endpoint interpolants; n >= 4 is
/// ((z^2-1)/4)^2 * J_{n-4}^{2,2}(z). Endpoint conditions:
///   d^l/dz^l k22(n, -1) = delta_{l,n},  d^l/dz^l k22(n, +1) = delta_{l+2,n},  l = 0,1.
K22Eval k22_eval(int n, double zeta);

struct QuadratureRule {
  std::vector<double> nodes;    // strictly increasing in (-1,1)
  std::vector<double> weights;  // positive, sum to 2
  int order = 0;                // point count
};

/// q-point Gauss-Legendre rule on [-1,1], exact for degree <= 2q-1.
QuadratureRule gauss_legendre_rule(int q);

}  // namespace qcurl
