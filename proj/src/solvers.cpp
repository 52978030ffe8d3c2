#include "qcurl/solvers.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcurl {

Eigen::SparseMatrix<double> saddle_block_matrix(const SaddleSystem& s) {
  const int n = s.n_u + s.n_p;
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(s.A.nonZeros() + 2 * s.B.nonZeros()));
  for (int c = 0; c < s.A.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(s.A, c); it; ++it)
      t.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
  for (int c = 0; c < s.B.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(s.B, c); it; ++it) {
      t.emplace_back(static_cast<int>(it.row()), s.n_u + static_cast<int>(it.col()), it.value());
      t.emplace_back(s.n_u + static_cast<int>(it.col()), static_cast<int>(it.row()), it.value());
    }
  Eigen::SparseMatrix<double> k(n, n);
  k.setFromTriplets(t.begin(), t.end());
  return k;
}

Eigen::SparseMatrix<double> mass_block_matrix(const SaddleSystem& s) {
  const int n = s.n_u + s.n_p;
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(static_cast<std::size_t>(s.Mmass.nonZeros()));
  for (int c = 0; c < s.Mmass.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(s.Mmass, c); it; ++it)
      t.emplace_back(static_cast<int>(it.row()), static_cast<int>(it.col()), it.value());
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

SourceSolution solve_saddle(const SaddleSystem& s) {
  if (s.n_u < 1) throw SolverError("saddle system has no free field unknowns");
  const Eigen::SparseMatrix<double> k = saddle_block_matrix(s);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s.n_u + s.n_p);
  rhs.head(s.n_u) = s.f;

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(k);
  if (lu.info() != Eigen::Success) throw SolverError("singular saddle-point factorization");
  const Eigen::VectorXd z = lu.solve(rhs);
  SourceSolution sol;
  sol.u_coeffs = z.head(s.n_u);
  sol.p_coeffs = z.tail(s.n_p);
  sol.residual_norm = (k * z - rhs).norm();
  return sol;
}

namespace {

// Deterministic start block for the subspace iteration.
Eigen::MatrixXd seeded_block(int n, int b) {
  std::uint64_t state = 0x2545F4914F6CDD1Dull;
  Eigen::MatrixXd z(n, b);
  for (int j = 0; j < b; ++j)
    for (int i = 0; i < n; ++i) {
      state += 0x9E3779B97F4A7C15ull;
      std::uint64_t x = state;
      x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
      x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
      x ^= x >> 31;
      z(i, j) = 2.0 * (static_cast<double>(x >> 11) * 0x1.0p-53) - 1.0;
    }
  return z;
}

}  // namespace

EigenSolution solve_eigen(const SaddleSystem& s, int k, double shift) {
  if (k < 1) throw SolverError("eigensolver requires k >= 1");
  const int n = s.n_u + s.n_p;
  const Eigen::SparseMatrix<double> kmat = saddle_block_matrix(s);
  const Eigen::SparseMatrix<double> mmat = mass_block_matrix(s);
  const Eigen::SparseMatrix<double> shifted = kmat - shift * mmat;

  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(shifted);
  if (lu.info() != Eigen::Success)
    throw SolverError("shifted factorization failed: sigma collides with the spectrum");

  const int b = std::min(k + 5, s.n_u);
  if (b < k) throw SolverError("subspace smaller than requested eigenvalue count");

  const auto apply_inverse = [&](const Eigen::MatrixXd& x) {
    Eigen::MatrixXd y = Eigen::MatrixXd::Zero(n, x.cols());
    y.topRows(s.n_u) = s.Mmass * x.topRows(s.n_u);
    return Eigen::MatrixXd(lu.solve(y));
  };
  const auto m_inner = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& c) {
    return a.head(s.n_u).dot(s.Mmass * c.head(s.n_u));
  };

  Eigen::MatrixXd z = apply_inverse(seeded_block(n, b));

  const double rtol = 1e-9;
  constexpr int kMaxIter = 200;
  Eigen::MatrixXd ritz;
  std::vector<double> values(b, 0.0), residuals(b, 1.0);

  for (int iter = 0; iter < kMaxIter; ++iter) {
    // modified Gram-Schmidt in the Mmass semi-inner product, two passes
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < b; ++j) {
        Eigen::VectorXd col = z.col(j);
        for (int i = 0; i < j; ++i) col -= m_inner(z.col(i), col) * z.col(i);
        const double nr = std::sqrt(std::max(m_inner(col, col), 0.0));
        if (nr < 1e-140) {
          z.col(j) = apply_inverse(seeded_block(n, 1));
          col = z.col(j);
          for (int i = 0; i < j; ++i) col -= m_inner(z.col(i), col) * z.col(i);
          z.col(j) = col / std::sqrt(std::max(m_inner(col, col), 1e-300));
        } else {
          z.col(j) = col / nr;
        }
      }

    const Eigen::MatrixXd v = apply_inverse(z);
    Eigen::MatrixXd h(b, b);
    for (int i = 0; i < b; ++i)
      for (int j = 0; j < b; ++j) h(i, j) = m_inner(z.col(i), v.col(j));
    h = 0.5 * (h + h.transpose()).eval();

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    // order Ritz pairs by |mu| descending: closest eigenvalues to sigma first
    std::vector<int> perm(b);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int c) {
      return std::abs(es.eigenvalues()(a)) > std::abs(es.eigenvalues()(c));
    });

    Eigen::MatrixXd cmat(b, b);
    for (int j = 0; j < b; ++j) cmat.col(j) = es.eigenvectors().col(perm[j]);
    ritz = z * cmat;

    bool converged = true;
    const double mu_floor = 1e-14 * std::max(1.0, std::abs(es.eigenvalues()(perm[0])));
    for (int j = 0; j < b; ++j) {
      const double mu = es.eigenvalues()(perm[j]);
      if (std::abs(mu) < mu_floor) {
        if (j < k) converged = false;
        values[j] = 0.0;
        residuals[j] = 1.0;
        continue;
      }
      const double lambda = shift + 1.0 / mu;
      values[j] = lambda;
      const Eigen::VectorXd x = ritz.col(j);
      const Eigen::VectorXd mz = mmat * x;
      const double denom = std::abs(lambda) * mz.norm();
      residuals[j] = denom > 0.0 ? (kmat * x - lambda * mz).norm() / denom : 1.0;
      if (j < k && residuals[j] > rtol) converged = false;
    }
    if (converged) break;
    z = v * cmat;
    if (iter == kMaxIter - 1)
      throw SolverError("eigensolver did not converge: retry with a perturbed shift");
  }

  // keep the k pairs closest to sigma, discard spurious values, sort ascending
  std::vector<int> keep;
  for (int j = 0; j < b && static_cast<int>(keep.size()) < k; ++j) {
    const double lambda = values[j];
    if (!(lambda > 0.0) || std::abs(lambda) > 1e12) continue;
    if (residuals[j] > 1e-5) continue;
    keep.push_back(j);
  }
  if (static_cast<int>(keep.size()) < k)
    throw SolverError("eigensolver produced fewer valid eigenvalues than requested");
  std::sort(keep.begin(), keep.end(), [&](int a, int c) { return values[a] < values[c]; });

  EigenSolution out;
  out.eigenvectors.resize(s.n_u, k);
  out.multipliers.resize(s.n_p, k);
  for (int j = 0; j < k; ++j) {
    const int src = keep[j];
    out.eigenvalues.push_back(values[src]);
    Eigen::VectorXd x = ritz.col(src);
    const double nr = std::sqrt(x.head(s.n_u).dot(s.Mmass * x.head(s.n_u)));
    x /= nr;
    out.eigenvectors.col(j) = x.head(s.n_u);
    out.multipliers.col(j) = x.tail(s.n_p);
    const Eigen::VectorXd mz = mmat * x;
    out.residuals.push_back((kmat * x - values[src] * mz).norm() /
                            (values[src] * mz.norm()));
  }
  return out;
}

}  // namespace qcurl
