#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "qcurl/solvers.hpp"

namespace qcurl {

struct ExactSolution {
  VectorField u;
  std::function<double(Vec2)> curl_u;
  VectorField curlcurl_u;
  VectorField f;  // fourth curl of u
};

/// Divergence-free trigonometric solution on the unit square with
/// u x n = 0 and curl u = 0 on the boundary; f holds the matching closed-form
/// load (derived symbolically offline, gated by a finite-difference test).
ExactSolution manufactured_solution();

struct ErrorReport {
  double l2 = 0.0;
  double hcurl_semi = 0.0;
  double hcurl2_semi = 0.0;
  double h = 0.0;
  long dofs = 0;  // free field (u) unknowns
  std::optional<double> order_l2, order_hcurl, order_hcurl2;
};

/// Element-wise quadrature of the three error seminorms. Elements are
/// processed in parallel; the reduction order is fixed, so results are
/// independent of the thread count.
ErrorReport error_norms(const Mesh& mesh, const DofMap& dofmap, const SpectralOrder& order,
                        const Eigen::VectorXd& u_coeffs, const ExactSolution& exact, int q);

struct FieldSample {
  Vec2 value;
  double curl = 0.0;
  Vec2 curlcurl;
};

/// Discrete field reconstruction on one element at a reference point.
FieldSample eval_discrete(const Mesh& mesh, const DofMap& dofmap,
                          const Eigen::VectorXd& u_coeffs, int elem, Vec2 refpt);

enum class MeshKind { Uniform, Perturbed };
enum class Domain { Square, LShape };

/// Solves the manufactured source problem on `levels` successively refined
/// meshes starting from the n0 x n0 unit-square mesh and reports errors with
/// log2 order estimates.
std::vector<ErrorReport> convergence_study(MeshKind kind, int levels, const SpectralOrder& order,
                                           std::uint64_t seed, int n0 = 10, int quad_count = 0);

struct EigenStudyRow {
  double h = 0.0;
  int index = 0;
  double lambda = 0.0;
  int cluster_id = 0;  // eigenvalues within 1e-6 relative share an id
};

/// Default shifts sit below the first eigenvalue of each domain.
double default_shift(Domain domain);

/// First k eigenvalues on the uniform mesh with cell size 1/n, order (N,N,N).
std::vector<EigenStudyRow> eigen_study(Domain domain, int n, int order_n, int k,
                                       double shift = 0.0);

void write_source_csv(std::ostream& os, const std::vector<ErrorReport>& reports);
void write_eigen_csv(std::ostream& os, const std::vector<EigenStudyRow>& rows);

}  // namespace qcurl
