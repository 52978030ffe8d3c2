#pragma once

#include <vector>

#include "qcurl/geometry.hpp"

namespace qcurl {

/// Families of vector basis modes on the reference square.
///
/// InteriorPhi and FunctionEdge modes are reference gradients (exactly
/// curl-free). FunctionEdgeLow are the four lowest tangential edge modes,
/// with TildeFunctionEdgeLow the interior-corrected variants. InteriorPsi and
/// CurlEdge carry curl content; CurlEdge additionally carries the element
/// Jacobian as a bilinear multiplier. Vertex modes produce piecewise-linear
/// curl hats at one corner; TildeVertex adds an interior correction built
/// from the element metric.
enum class ModeFamily {
  InteriorPhi,
  InteriorPsi,
  FunctionEdge,
  FunctionEdgeLow,
  CurlEdge,
  Vertex,
  TildeFunctionEdgeLow,
  TildeVertex,
};

struct Mode {
  ModeFamily family;
  int entity = -1;  // edge 0..3 for edge families, corner 0..3 for vertex families
  int m = 0;
  int n = 0;
};

struct SpectralOrder {
  int L = 3;
  int M = 3;
  int N = 3;
};

/// True for (L,M,N >= 3) or L == M == N in {1,2}.
bool valid_order(const SpectralOrder& order);

/// Local basis of the mapped polynomial space, in deterministic order:
/// interior modes, then per edge 1..4 function modes followed by curl modes,
/// then the four vertex modes. Orders (1,1,1) and (2,2,2) enumerate the
/// reduced 8- and 13-mode spaces with tilde vertex modes.
std::vector<Mode> enumerate_modes(const SpectralOrder& order);

struct ModeEval {
  Vec2 value;       // reference-frame vector value
  double curl = 0.0;  // reference curl
  Vec2 curl_grad;   // reference gradient of the curl
};

/// Closed-form evaluation on the reference square. The element enters only
/// through the Jacobian multiplier of CurlEdge modes and the metric
/// coefficients of Vertex/TildeVertex modes.
ModeEval eval_mode(const Mode& mode, const Quadrilateral& quad, Vec2 refpt);

struct ScalarEval {
  double value = 0.0;
  Vec2 gradient;
};

/// Tensor-product scalar mode k11_m(x) * k11_n(y) with reference gradient.
ScalarEval eval_scalar_mode(int m, int n, Vec2 refpt);

struct EdgeTrace {
  double tangential = 0.0;  // physical tangential component, ccw direction
  double curl = 0.0;        // physical curl on the edge
};

/// Trace of a mode on edge 0..3 at counterclockwise edge parameter s in
/// [-1,1] (s = -1 at the edge start). Tangential values include the 2/l_i
/// scaling of the contravariant transform, curls the 1/detJ factor.
EdgeTrace edge_trace(const Mode& mode, const Quadrilateral& quad, int edge, double s);

/// Reference point and ccw unit tangent of edge 0..3 at parameter s.
Vec2 edge_refpoint(int edge, double s);
Vec2 edge_ref_tangent(int edge);

/// Vertex mode plus its metric-weighted interior correction; shares traces
/// with the plain vertex mode of the same corner.
ModeEval tilde_vertex_mode(int corner, const Quadrilateral& quad, Vec2 refpt);

/// Scalar companion space: kinds classify the mode by supporting entity.
enum class ScalarKind { Interior, Edge, Vertex };

struct ScalarMode {
  int m = 0;
  int n = 0;
  ScalarKind kind = ScalarKind::Interior;
  int entity = -1;  // edge or corner index, -1 for interior
};

/// Scalar modes of the companion H1 space, ordered interior, edges 1..4,
/// vertices; gradients of every member lie in the span of enumerate_modes.
std::vector<ScalarMode> enumerate_scalar_modes(const SpectralOrder& order);

}  // namespace qcurl
