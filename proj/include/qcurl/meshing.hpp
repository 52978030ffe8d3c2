#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qcurl/geometry.hpp"
#include "qcurl/refbasis.hpp"

namespace qcurl {

/// splitmix64; the recurrence is fixed so seeded meshes are reproducible
/// bit-for-bit across platforms (see README for the exact constants).
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// uniform in [-1, 1)
  double symmetric() { return 2.0 * uniform01() - 1.0; }
};

struct MeshEdge {
  int v0 = -1, v1 = -1;  // v0 < v1; the global edge direction is v0 -> v1
  std::array<int, 2> elem{{-1, -1}};
  std::array<int, 2> local{{-1, -1}};  // local edge index 0..3 within elem[k]
  bool boundary = true;
};

/// Conforming quadrilateral mesh. Local edge i of an element joins local
/// corner (i+3)%4 to local corner i, matching the element labeling in
/// geometry.hpp.
struct Mesh {
  std::vector<Vec2> vertices;
  std::vector<std::array<int, 4>> elements;  // ccw vertex ids
  std::vector<MeshEdge> edges;
  std::vector<bool> boundary_vertex;
  std::vector<std::array<int, 4>> element_edges;  // edge id per local edge

  int n_vertices() const { return static_cast<int>(vertices.size()); }
  int n_elements() const { return static_cast<int>(elements.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }
};

/// Builds connectivity and validates element convexity and conformity.
Mesh make_mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 4>> elements);

Quadrilateral element_quad(const Mesh& mesh, int elem);

/// n x n uniform quads on the unit square.
Mesh structured_square_mesh(int n);

/// Uniform n x n mesh with interior vertices displaced by at most
/// magnitude*h per coordinate (magnitude < 0.25 keeps every cell convex).
/// Deterministic for a fixed seed.
Mesh perturbed_quad_mesh(int n, double magnitude, std::uint64_t seed);

/// Uniform mesh of (0,1)^2 \ [0.5,1)^2 with cell size 1/n; n must be even so
/// the re-entrant corner is a mesh vertex.
Mesh lshape_mesh(int n);

/// Regular refinement: each quad splits into 4 through the edge midpoints and
/// the bilinear image of the reference center. Parent vertices keep their ids.
Mesh refine(const Mesh& mesh);

/// Text format: "quadmesh v1" header, vertex then element blocks.
void write_mesh(std::ostream& os, const Mesh& mesh);
Mesh read_mesh(std::istream& is);

/// Global degree-of-freedom numbering.
///
/// u-dofs: one per free vertex, a block of edge_func_count + edge_curl_count
/// per free edge (function slots first), then per-element interior blocks.
/// Orientation signs make the tangential and curl traces of each global
/// basis function agree from both sides of every interior edge; they are
/// found by matching each local trace polynomial against a canonical trace on
/// the globally directed edge (the traces have definite parity, so the match
/// is an exact +-1). With homogeneous set, all dofs on boundary edges and
/// vertices are eliminated.
struct DofMap {
  SpectralOrder order;
  bool homogeneous = true;
  std::vector<Mode> modes;
  std::vector<ScalarMode> scalar_modes;
  int n_u = 0;
  int n_p = 0;

  // per (element, local mode): global free index or -1, and the sign
  std::vector<std::vector<int>> u_index;
  std::vector<std::vector<double>> u_sign;
  std::vector<std::vector<int>> p_index;
  std::vector<std::vector<double>> p_sign;

  // entity layout, -1 where eliminated
  std::vector<int> u_vertex_dof, u_edge_offset, u_interior_offset;
  std::vector<int> p_vertex_dof, p_edge_offset, p_interior_offset;
  int edge_func_count = 0;
  int edge_curl_count = 0;
  int interior_count = 0;
};

DofMap build_dof_map(const Mesh& mesh, const SpectralOrder& order, bool homogeneous);

}  // namespace qcurl
