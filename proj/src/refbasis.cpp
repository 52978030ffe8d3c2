#include "qcurl/refbasis.hpp"

#include <stdexcept>

#include "qcurl/orthopoly.hpp"

namespace qcurl {

namespace {

struct Poly012 {
  double v = 0.0, d1 = 0.0, d2 = 0.0;
};

// (t-1)^2 (t+1)
Poly012 cubic_mm(double t) {
  return {(t - 1.0) * (t - 1.0) * (t + 1.0), (t - 1.0) * (3.0 * t + 1.0), 6.0 * t - 2.0};
}

// (t+1)^2 (1-t)
Poly012 cubic_pp(double t) {
  return {(t + 1.0) * (t + 1.0) * (1.0 - t), -(t + 1.0) * (3.0 * t - 1.0), -6.0 * t - 2.0};
}

// (t + e)(a t + b), e = +-1
Poly012 lin_lin(double e, double a, double b, double t) {
  return {(t + e) * (a * t + b), 2.0 * a * t + (b + e * a), 2.0 * a};
}

// Gradient of k11_m(x) k11_n(y): exactly curl-free.
ModeEval gradient_mode(int m, int n, Vec2 p) {
  const PolynomialValue fx = k11_eval(m, p.x);
  const PolynomialValue fy = k11_eval(n, p.y);
  ModeEval e;
  e.value = {fx.derivative * fy.value, fx.value * fy.derivative};
  return e;
}

// q_{m,n} = (k22_m'(x) k22_n(y), 0)
ModeEval q_mode(int m, int n, Vec2 p) {
  const K22Eval fx = k22_eval(m, p.x);
  const K22Eval fy = k22_eval(n, p.y);
  ModeEval e;
  e.value = {fx.derivative * fy.value, 0.0};
  e.curl = -fx.derivative * fy.derivative;
  e.curl_grad = {-fx.second * fy.derivative, -fx.derivative * fy.second};
  return e;
}

// q*_{m,n} = (0, k22_m(x) k22_n'(y))
ModeEval qstar_mode(int m, int n, Vec2 p) {
  const K22Eval fx = k22_eval(m, p.x);
  const K22Eval fy = k22_eval(n, p.y);
  ModeEval e;
  e.value = {0.0, fx.value * fy.derivative};
  e.curl = fx.derivative * fy.derivative;
  e.curl_grad = {fx.second * fy.derivative, fx.derivative * fy.second};
  return e;
}

ModeEval low_edge_mode(int edge, Vec2 p) {
  const double x = p.x, y = p.y;
  const double ax = y * (y * y - 1.0) * (3.0 * x * x - 5.0) / 32.0;
  const double ay = x * (x * x - 1.0) * (3.0 * y * y - 5.0) / 32.0;
  ModeEval e;
  double sign = 0.0;
  switch (edge) {
    case 0:
      e.value = {ax, -ay - 0.25 * (x - 1.0)};
      sign = -1.0;
      break;
    case 1:
      e.value = {-ax - 0.25 * (y - 1.0), ay};
      sign = 1.0;
      break;
    case 2:
      e.value = {-ax, ay + 0.25 * (1.0 + x)};
      sign = 1.0;
      break;
    case 3:
      e.value = {ax + 0.25 * (1.0 + y), -ay};
      sign = -1.0;
      break;
    default:
      throw std::invalid_argument("edge index must be 0..3");
  }
  e.curl = sign * (9.0 / 16.0) * (x * x - 1.0) * (y * y - 1.0);
  e.curl_grad = {sign * (9.0 / 8.0) * x * (y * y - 1.0), sign * (9.0 / 8.0) * y * (x * x - 1.0)};
  return e;
}

ModeEval tilde_low_edge_mode(int edge, Vec2 p) {
  const double x = p.x, y = p.y;
  const double bx = 3.0 * y * (y * y - 1.0) * (x * x - 1.0) / 16.0;
  const double by = 3.0 * x * (x * x - 1.0) * (y * y - 1.0) / 16.0;
  ModeEval e;
  double sign = 0.0;
  switch (edge) {
    case 0:
      e.value = {bx, (x + 2.0) * (x - 1.0) * (x - 1.0) / 8.0};
      sign = -1.0;
      break;
    case 1:
      e.value = {(y + 2.0) * (y - 1.0) * (y - 1.0) / 8.0, by};
      sign = 1.0;
      break;
    case 2:
      e.value = {-bx, -(x - 2.0) * (x + 1.0) * (x + 1.0) / 8.0};
      sign = 1.0;
      break;
    case 3:
      e.value = {-(y - 2.0) * (y + 1.0) * (y + 1.0) / 8.0, -by};
      sign = -1.0;
      break;
    default:
      throw std::invalid_argument("edge index must be 0..3");
  }
  e.curl = sign * (9.0 / 16.0) * (x * x - 1.0) * (y * y - 1.0);
  e.curl_grad = {sign * (9.0 / 8.0) * x * (y * y - 1.0), sign * (9.0 / 8.0) * y * (x * x - 1.0)};
  return e;
}

// Jacobian-multiplied q*_{fix,n}: value (0, J k22_fix(x) k22_n'(y)).
ModeEval jac_qstar_mode(const Quadrilateral& quad, int fix, int n, Vec2 p) {
  const BilinearScalar J = jacobian_bilinear(quad);
  const double j = J.value(p), jx = J.dx(p), jy = J.dy(p), jxy = J.dxy();
  const K22Eval fx = k22_eval(fix, p.x);
  const K22Eval fy = k22_eval(n, p.y);
  ModeEval e;
  e.value = {0.0, j * fx.value * fy.derivative};
  e.curl = jx * fx.value * fy.derivative + j * fx.derivative * fy.derivative;
  e.curl_grad = {2.0 * jx * fx.derivative * fy.derivative + j * fx.second * fy.derivative,
                 jxy * fx.value * fy.derivative + jx * fx.value * fy.second +
                     jy * fx.derivative * fy.derivative + j * fx.derivative * fy.second};
  return e;
}

// Jacobian-multiplied q_{m,fix}: value (J k22_m'(x) k22_fix(y), 0).
ModeEval jac_q_mode(const Quadrilateral& quad, int m, int fix, Vec2 p) {
  const BilinearScalar J = jacobian_bilinear(quad);
  const double j = J.value(p), jx = J.dx(p), jy = J.dy(p), jxy = J.dxy();
  const K22Eval fx = k22_eval(m, p.x);
  const K22Eval fy = k22_eval(fix, p.y);
  ModeEval e;
  e.value = {j * fx.derivative * fy.value, 0.0};
  e.curl = -(jy * fx.derivative * fy.value + j * fx.derivative * fy.derivative);
  e.curl_grad = {-(jxy * fx.derivative * fy.value + jy * fx.second * fy.value +
                   jx * fx.derivative * fy.derivative + j * fx.second * fy.derivative),
                 -(2.0 * jy * fx.derivative * fy.derivative + j * fx.derivative * fy.second)};
  return e;
}

ModeEval vertex_mode(int corner, const Quadrilateral& quad, Vec2 p) {
  const double l1 = quad.edge_length(0), l2 = quad.edge_length(1);
  const double l3 = quad.edge_length(2), l4 = quad.edge_length(3);
  const double s1 = quad.angle_sine(0), s2 = quad.angle_sine(1);
  const double s3 = quad.angle_sine(2), s4 = quad.angle_sine(3);

  // Component 1 = G(y) * F(x), component 2 = H(x) * E(y); curl hats rise to 1
  // at the corner along its two incident edges.
  Poly012 F, G, H, E;
  switch (corner) {
    case 0:
      G = cubic_mm(p.y);
      F = lin_lin(-1.0, l2 * (l1 * s1 + 2.0 * l3 * s2), l2 * (3.0 * l1 * s1 + 2.0 * l3 * s2), p.x);
      H = cubic_mm(p.x);
      H.v = -H.v; H.d1 = -H.d1; H.d2 = -H.d2;
      E = lin_lin(-1.0, l1 * (l2 * s1 + 2.0 * l4 * s4), l1 * (3.0 * l2 * s1 + 2.0 * l4 * s4), p.y);
      break;
    case 1:
      G = cubic_mm(p.y);
      F = lin_lin(1.0, l2 * (2.0 * l1 * s1 + l3 * s2), -l2 * (2.0 * l1 * s1 + 3.0 * l3 * s2), p.x);
      H = cubic_pp(p.x);
      E = lin_lin(-1.0, l3 * (l2 * s2 + 2.0 * l4 * s3), l3 * (3.0 * l2 * s2 + 2.0 * l4 * s3), p.y);
      break;
    case 2:
      G = cubic_pp(p.y);
      F = lin_lin(1.0, -l4 * (2.0 * l1 * s4 + l3 * s3), l4 * (2.0 * l1 * s4 + 3.0 * l3 * s3), p.x);
      H = cubic_pp(p.x);
      E = lin_lin(1.0, l3 * (2.0 * l2 * s2 + l4 * s3), -l3 * (2.0 * l2 * s2 + 3.0 * l4 * s3), p.y);
      break;
    case 3:
      G = cubic_pp(p.y);
      F = lin_lin(-1.0, -l4 * (l1 * s4 + 2.0 * l3 * s3), -l4 * (3.0 * l1 * s4 + 2.0 * l3 * s3), p.x);
      H = cubic_mm(p.x);
      E = lin_lin(1.0, -l1 * (2.0 * l2 * s1 + l4 * s4), l1 * (2.0 * l2 * s1 + 3.0 * l4 * s4), p.y);
      break;
    default:
      throw std::invalid_argument("corner index must be 0..3");
  }
  constexpr double c = 1.0 / 128.0;
  ModeEval e;
  e.value = {c * G.v * F.v, c * H.v * E.v};
  e.curl = c * (H.d1 * E.v - F.v * G.d1);
  e.curl_grad = {c * (H.d2 * E.v - F.d1 * G.d1), c * (H.d1 * E.d1 - F.v * G.d2)};
  return e;
}

void add_scaled(ModeEval& acc, double w, const ModeEval& e) {
  acc.value = acc.value + w * e.value;
  acc.curl += w * e.curl;
  acc.curl_grad = acc.curl_grad + w * e.curl_grad;
}

}  // namespace

bool valid_order(const SpectralOrder& o) {
  if (o.L >= 3 && o.M >= 3 && o.N >= 3) return true;
  return o.L == o.M && o.M == o.N && (o.L == 1 || o.L == 2);
}

std::vector<Mode> enumerate_modes(const SpectralOrder& o) {
  if (!valid_order(o)) throw std::invalid_argument("invalid spectral order (L,M,N)");
  std::vector<Mode> modes;
  const int low_mn[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};

  if (o.L <= 2) {
    if (o.L == 2) modes.push_back({ModeFamily::InteriorPhi, -1, 2, 2});
    for (int e = 0; e < 4; ++e) {
      modes.push_back({ModeFamily::FunctionEdgeLow, e, low_mn[e][0], low_mn[e][1]});
      if (o.L == 2) {
        const int mn[4][2] = {{0, 2}, {2, 0}, {1, 2}, {2, 1}};
        modes.push_back({ModeFamily::FunctionEdge, e, mn[e][0], mn[e][1]});
      }
    }
    for (int c = 0; c < 4; ++c)
      modes.push_back({ModeFamily::TildeVertex, c, low_mn[c][0], low_mn[c][1]});
    return modes;
  }

  for (int m = 2; m <= o.L; ++m)
    for (int n = 2; n <= o.L; ++n) modes.push_back({ModeFamily::InteriorPhi, -1, m, n});
  for (int m = 2; m <= o.N; ++m) {
    if (m == 3) continue;
    for (int n = 4; n <= o.N; ++n) modes.push_back({ModeFamily::InteriorPsi, -1, m, n});
  }
  for (int m = 4; m <= o.N; ++m) modes.push_back({ModeFamily::InteriorPsi, -1, m, 2});

  for (int e = 0; e < 4; ++e) {
    modes.push_back({ModeFamily::FunctionEdgeLow, e, low_mn[e][0], low_mn[e][1]});
    for (int k = 2; k <= o.M; ++k) {
      const int mn[4][2] = {{0, k}, {k, 0}, {1, k}, {k, 1}};
      modes.push_back({ModeFamily::FunctionEdge, e, mn[e][0], mn[e][1]});
    }
    for (int k = 2; k <= o.N; ++k) {
      if (k == 3) continue;
      const int mn[4][2] = {{1, k}, {k, 1}, {3, k}, {k, 3}};
      modes.push_back({ModeFamily::CurlEdge, e, mn[e][0], mn[e][1]});
    }
  }
  for (int c = 0; c < 4; ++c)
    modes.push_back({ModeFamily::Vertex, c, low_mn[c][0], low_mn[c][1]});
  return modes;
}

ModeEval eval_mode(const Mode& mode, const Quadrilateral& quad, Vec2 p) {
  switch (mode.family) {
    case ModeFamily::InteriorPhi:
    case ModeFamily::FunctionEdge:
      return gradient_mode(mode.m, mode.n, p);
    case ModeFamily::FunctionEdgeLow:
      return low_edge_mode(mode.entity, p);
    case ModeFamily::TildeFunctionEdgeLow:
      return tilde_low_edge_mode(mode.entity, p);
    case ModeFamily::InteriorPsi:
      return mode.n == 2 ? qstar_mode(mode.m, 2, p) : q_mode(mode.m, mode.n, p);
    case ModeFamily::CurlEdge:
      switch (mode.entity) {
        case 0: return jac_qstar_mode(quad, 1, mode.n, p);
        case 1: return jac_q_mode(quad, mode.m, 1, p);
        case 2: return jac_qstar_mode(quad, 3, mode.n, p);
        case 3: return jac_q_mode(quad, mode.m, 3, p);
        default: throw std::invalid_argument("edge index must be 0..3");
      }
    case ModeFamily::Vertex:
      return vertex_mode(mode.entity, quad, p);
    case ModeFamily::TildeVertex:
      return tilde_vertex_mode(mode.entity, quad, p);
  }
  throw std::invalid_argument("unknown mode family");
}

ScalarEval eval_scalar_mode(int m, int n, Vec2 p) {
  const PolynomialValue fx = k11_eval(m, p.x);
  const PolynomialValue fy = k11_eval(n, p.y);
  return {fx.value * fy.value, {fx.derivative * fy.value, fx.value * fy.derivative}};
}

Vec2 edge_refpoint(int edge, double s) {
  switch (edge) {
    case 0: return {-1.0, -s};
    case 1: return {s, -1.0};
    case 2: return {1.0, s};
    case 3: return {-s, 1.0};
    default: throw std::invalid_argument("edge index must be 0..3");
  }
}

Vec2 edge_ref_tangent(int edge) {
  switch (edge) {
    case 0: return {0.0, -1.0};
    case 1: return {1.0, 0.0};
    case 2: return {0.0, 1.0};
    case 3: return {-1.0, 0.0};
    default: throw std::invalid_argument("edge index must be 0..3");
  }
}

EdgeTrace edge_trace(const Mode& mode, const Quadrilateral& quad, int edge, double s) {
  const Vec2 p = edge_refpoint(edge, s);
  const ModeEval me = eval_mode(mode, quad, p);
  const double len = quad.edge_length(edge);
  const double j = jacobian_bilinear(quad).value(p);
  return {dot(me.value, edge_ref_tangent(edge)) * 2.0 / len, me.curl / j};
}

ModeEval tilde_vertex_mode(int corner, const Quadrilateral& quad, Vec2 p) {
  const double l1 = quad.edge_length(0), l2 = quad.edge_length(1);
  const double l3 = quad.edge_length(2), l4 = quad.edge_length(3);
  const double s1 = quad.angle_sine(0), s2 = quad.angle_sine(1);
  const double s3 = quad.angle_sine(2), s4 = quad.angle_sine(3);
  const double m1 = s1 * l1 * l2, m2 = s2 * l2 * l3, m3 = s3 * l3 * l4, m4 = s4 * l4 * l1;

  double c23 = 0.0, c32 = 0.0;
  switch (corner) {
    case 0: c23 = -(2.0 * m1 + m4) / 48.0; c32 = (2.0 * m1 + m2) / 48.0; break;
    case 1: c32 = (2.0 * m2 + m1) / 48.0; c23 = (2.0 * m2 + m3) / 48.0; break;
    case 2: c23 = (2.0 * m3 + m2) / 48.0; c32 = -(2.0 * m3 + m4) / 48.0; break;
    case 3: c32 = -(2.0 * m4 + m3) / 48.0; c23 = -(2.0 * m4 + m1) / 48.0; break;
    default: throw std::invalid_argument("corner index must be 0..3");
  }
  ModeEval e = vertex_mode(corner, quad, p);
  add_scaled(e, c23, gradient_mode(2, 3, p));
  add_scaled(e, c32, gradient_mode(3, 2, p));
  return e;
}

std::vector<ScalarMode> enumerate_scalar_modes(const SpectralOrder& o) {
  if (!valid_order(o)) throw std::invalid_argument("invalid spectral order (L,M,N)");
  std::vector<ScalarMode> modes;
  const int edge_mn[4][2] = {{0, -1}, {-1, 0}, {1, -1}, {-1, 1}};  // -1 marks the running index
  const int vert_mn[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};

  const int interior_cap = (o.L >= 2) ? o.L : 1;  // m,n in 2..L when L >= 2
  for (int m = 2; m <= interior_cap; ++m)
    for (int n = 2; n <= interior_cap; ++n)
      modes.push_back({m, n, ScalarKind::Interior, -1});

  const int edge_cap = (o.L >= 3) ? o.M : o.L;  // running index 2..cap
  for (int e = 0; e < 4; ++e)
    for (int k = 2; k <= edge_cap; ++k) {
      const int m = edge_mn[e][0] < 0 ? k : edge_mn[e][0];
      const int n = edge_mn[e][1] < 0 ? k : edge_mn[e][1];
      modes.push_back({m, n, ScalarKind::Edge, e});
    }

  for (int c = 0; c < 4; ++c)
    modes.push_back({vert_mn[c][0], vert_mn[c][1], ScalarKind::Vertex, c});
  return modes;
}

}  // namespace qcurl
