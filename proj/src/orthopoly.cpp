#include "qcurl/orthopoly.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcurl {

namespace {

void check_index(int n) {
  if (n < 0) throw std::invalid_argument("polynomial index must be >= 0");
  if (n > kMaxPolyIndex)
    throw std::invalid_argument("polynomial index exceeds cap " + std::to_string(kMaxPolyIndex));
}

// Value-only Jacobi recurrence.
double jacobi_value(int n, double alpha, double beta, double zeta) {
  if (n == 0) return 1.0;
  double jm1 = 1.0;
  double j = 0.5 * (alpha - beta) + 0.5 * (alpha + beta + 2.0) * zeta;
  for (int m = 2; m <= n; ++m) {
    const double ab = alpha + beta;
    const double a1 = 2.0 * m * (m + ab) * (2.0 * m + ab - 2.0);
    const double a2 = (2.0 * m + ab - 1.0) * (alpha * alpha - beta * beta);
    const double a3 = (2.0 * m + ab - 1.0) * (2.0 * m + ab) * (2.0 * m + ab - 2.0);
    const double a4 = 2.0 * (m + alpha - 1.0) * (m + beta - 1.0) * (2.0 * m + ab);
    const double jnext = ((a2 + a3 * zeta) * j - a4 * jm1) / a1;
    jm1 = j;
    j = jnext;
  }
  return j;
}

}  // namespace

PolynomialValue jacobi_eval(int n, double alpha, double beta, double zeta) {
  check_index(n);
  if (alpha <= -1.0 || beta <= -1.0)
    throw std::invalid_argument("jacobi_eval requires alpha > -1 and beta > -1");
  PolynomialValue out;
  out.value = jacobi_value(n, alpha, beta, zeta);
  // d/dz J_n^{a,b} = (n+a+b+1)/2 * J_{n-1}^{a+1,b+1}
  out.derivative =
      (n == 0) ? 0.0
               : 0.5 * (n + alpha + beta + 1.0) * jacobi_value(n - 1, alpha + 1.0, beta + 1.0, zeta);
  return out;
}

PolynomialValue k11_eval(int n, double zeta) {
  check_index(n);
  PolynomialValue out;
  switch (n) {
    case 0:
      out.value = 0.5 * (1.0 - zeta);
      out.derivative = -0.5;
      return out;
    case 1:
      out.value = 0.5 * (1.0 + zeta);
      out.derivative = 0.5;
      return out;
    default:
      out.value = 0.25 * (zeta * zeta - 1.0) * jacobi_value(n - 2, 1.0, 1.0, zeta);
      out.derivative = 0.5 * (n - 1.0) * jacobi_value(n - 1, 0.0, 0.0, zeta);
      return out;
  }
}

K22Eval k22_eval(int n, double zeta) {
  check_index(n);
  const double z = zeta;
  K22Eval out;
  switch (n) {
    case 0:
      out.value = 0.25 * (1.0 - z) * (1.0 - z) * (2.0 + z);
      out.derivative = 0.75 * (z - 1.0) * (z + 1.0);
      out.second = 1.5 * z;
      return out;
    case 1:
      out.value = 0.25 * (1.0 - z) * (1.0 - z) * (1.0 + z);
      out.derivative = 0.25 * (z - 1.0) * (3.0 * z + 1.0);
      out.second = 0.5 * (3.0 * z - 1.0);
      return out;
    case 2:
      out.value = 0.25 * (1.0 + z) * (1.0 + z) * (2.0 - z);
      out.derivative = 0.75 * (1.0 - z) * (z + 1.0);
      out.second = -1.5 * z;
      return out;
    case 3:
      out.value = 0.25 * (1.0 + z) * (1.0 + z) * (z - 1.0);
      out.derivative = 0.25 * (z + 1.0) * (3.0 * z - 1.0);
      out.second = 0.5 * (3.0 * z + 1.0);
      return out;
    default: {
      const double s = 0.25 * (z * z - 1.0);
      out.value = s * s * jacobi_value(n - 4, 2.0, 2.0, z);
      // d/dz k22_n = (n-3)/2 * k11_{n-1}, and d/dz k11_m = (m-1)/2 * J_{m-1}^{0,0}
      const PolynomialValue inner = k11_eval(n - 1, z);
      out.derivative = 0.5 * (n - 3.0) * inner.value;
      out.second = 0.5 * (n - 3.0) * inner.derivative;
      return out;
    }
  }
}

QuadratureRule gauss_legendre_rule(int q) {
  if (q < 1) throw std::invalid_argument("gauss_legendre_rule requires q >= 1");
  QuadratureRule rule;
  rule.order = q;
  rule.nodes.resize(q);
  rule.weights.resize(q);

  for (int i = 0; i < (q + 1) / 2; ++i) {
    // Chebyshev-like initial guess for the i-th root (descending), then Newton.
    double x = std::cos(M_PI * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int m = 2; m <= q; ++m) {
        const double p2 = ((2.0 * m - 1.0) * x * p1 - (m - 1.0) * p0) / m;
        p0 = p1;
        p1 = p2;
      }
      dp = q * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[q - 1 - i] = x;
    rule.weights[q - 1 - i] = w;
    rule.nodes[i] = -x;
    rule.weights[i] = w;
  }
  if (q % 2 == 1) {
    rule.nodes[q / 2] = 0.0;
    double p0 = 1.0, p1 = 0.0;
    for (int m = 2; m <= q; ++m) {
      const double p2 = (-(m - 1.0) * p0) / m;
      p0 = p1;
      p1 = p2;
    }
    const double dp = q * (-p0) / (-1.0);
    rule.weights[q / 2] = 2.0 / (dp * dp);
  }
  return rule;
}

}  // namespace qcurl
