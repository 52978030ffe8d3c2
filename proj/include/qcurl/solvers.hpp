#pragma once

#include <stdexcept>
#include <vector>

#include "qcurl/assembly.hpp"

namespace qcurl {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SourceSolution {
  Eigen::VectorXd u_coeffs;
  Eigen::VectorXd p_coeffs;
  double residual_norm = 0.0;  // absolute 2-norm residual of the block system
};

/// Direct sparse factorization of the full block system
///   [A B; B^T 0] [u; p] = [f; 0].
/// Throws SolverError on a singular factorization.
SourceSolution solve_saddle(const SaddleSystem& system);

struct EigenSolution {
  std::vector<double> eigenvalues;  // ascending, positive, finite
  Eigen::MatrixXd eigenvectors;     // u-parts, Mmass-orthonormal columns
  Eigen::MatrixXd multipliers;      // p-parts of the block eigenvectors
  std::vector<double> residuals;    // ||K z - lambda M z|| / (lambda ||M z||)
};

/// k smallest finite eigenvalues of the pencil ([A B; B^T 0], [Mmass 0; 0 0])
/// by shift-invert subspace iteration around sigma with Rayleigh-Ritz in the
/// Mmass semi-inner product. Infinite eigenvalues of the singular mass block
/// are suppressed by the inverted operator and filtered by residual.
EigenSolution solve_eigen(const SaddleSystem& system, int k, double shift);

/// [A B; B^T 0] as one sparse matrix (test and solver plumbing).
Eigen::SparseMatrix<double> saddle_block_matrix(const SaddleSystem& system);

/// blkdiag(Mmass, 0) at block size n_u + n_p.
Eigen::SparseMatrix<double> mass_block_matrix(const SaddleSystem& system);

}  // namespace qcurl
