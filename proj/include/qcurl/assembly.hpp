#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <functional>

#include "qcurl/meshing.hpp"

namespace qcurl {

using VectorField = std::function<Vec2(Vec2)>;

struct ElementMatrices {
  Eigen::MatrixXd A;      // (curl-curl u, curl-curl v)
  Eigen::MatrixXd B;      // (v, grad p)
  Eigen::MatrixXd Mmass;  // (u, v)
  Eigen::VectorXd f_load;
};

/// Default tensor-product Gauss-Legendre count per direction.
inline int default_quadrature(const SpectralOrder& order) { return order.N + 4; }

/// Element matrices by q x q Gauss-Legendre quadrature; every mode value,
/// curl and curl-curl is pushed to the physical element before accumulation.
/// Columns of A belonging to curl-free modes vanish identically.
ElementMatrices element_matrices(const Quadrilateral& quad, const SpectralOrder& order, int q);

Eigen::VectorXd element_load(const Quadrilateral& quad, const SpectralOrder& order,
                             const VectorField& f, int q);

struct SaddleSystem {
  Eigen::SparseMatrix<double> A;      // n_u x n_u, symmetric positive semidefinite
  Eigen::SparseMatrix<double> B;      // n_u x n_p
  Eigen::SparseMatrix<double> Mmass;  // n_u x n_u, symmetric positive definite
  Eigen::VectorXd f;
  int n_u = 0;
  int n_p = 0;
};

/// Scatters signed element contributions into the global blocks; boundary
/// dofs are eliminated, not penalized. Element kernels run across elements in
/// parallel; the scatter is an ordered serial reduction, so results are
/// bitwise identical to assemble_serial.
SaddleSystem assemble(const Mesh& mesh, const DofMap& dofmap, const SpectralOrder& order,
                      const VectorField& f, int q);

/// Single-threaded reference used by the tests and the benchmark.
SaddleSystem assemble_serial(const Mesh& mesh, const DofMap& dofmap, const SpectralOrder& order,
                             const VectorField& f, int q);

}  // namespace qcurl
