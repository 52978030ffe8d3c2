#include "qcurl/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace qcurl {

namespace {

constexpr double kConvexityTol = 1e-12;

}  // namespace

Quadrilateral::Quadrilateral(const std::array<Vec2, 4>& corners) : corners_(corners) {
  double scale = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Vec2 e = corners_[(i + 1) % 4] - corners_[i];
    scale = std::max(scale, norm(e));
  }
  for (int i = 0; i < 4; ++i) {
    const Vec2 a = corners_[(i + 1) % 4] - corners_[i];
    const Vec2 b = corners_[(i + 2) % 4] - corners_[(i + 1) % 4];
    if (cross(a, b) <= kConvexityTol * scale * scale)
      throw std::invalid_argument(
          "quadrilateral corners must be counterclockwise and strictly convex");
  }
  // Edge i joins corner (i+3)%4 to corner i; angle i sits at corner i.
  for (int i = 0; i < 4; ++i) lengths_[i] = norm(corners_[i] - corners_[(i + 3) % 4]);
  for (int i = 0; i < 4; ++i) {
    const Vec2 to_next = corners_[(i + 1) % 4] - corners_[i];
    const Vec2 to_prev = corners_[(i + 3) % 4] - corners_[i];
    sines_[i] = cross(to_next, to_prev) / (norm(to_next) * norm(to_prev));
  }
}

std::pair<std::array<double, 4>, std::array<double, 4>> edge_geometry(const Quadrilateral& quad) {
  return {quad.edge_lengths(), quad.angle_sines()};
}

Vec2 map_to_physical(const Quadrilateral& quad, Vec2 p) {
  const double s1 = 0.25 * (1.0 - p.x) * (1.0 - p.y);
  const double s2 = 0.25 * (1.0 + p.x) * (1.0 - p.y);
  const double s3 = 0.25 * (1.0 + p.x) * (1.0 + p.y);
  const double s4 = 0.25 * (1.0 - p.x) * (1.0 + p.y);
  const auto& c = quad.corners();
  return s1 * c[0] + s2 * c[1] + s3 * c[2] + s4 * c[3];
}

JacobianData jacobian(const Quadrilateral& quad, Vec2 p) {
  const auto& c = quad.corners();
  const double x21 = c[1].x - c[0].x, y21 = c[1].y - c[0].y;
  const double x34 = c[2].x - c[3].x, y34 = c[2].y - c[3].y;
  const double x41 = c[3].x - c[0].x, y41 = c[3].y - c[0].y;
  const double x32 = c[2].x - c[1].x, y32 = c[2].y - c[1].y;

  JacobianData jd;
  jd.B.a11 = 0.25 * (x21 * (1.0 - p.y) + x34 * (1.0 + p.y));
  jd.B.a21 = 0.25 * (y21 * (1.0 - p.y) + y34 * (1.0 + p.y));
  jd.B.a12 = 0.25 * (x41 * (1.0 - p.x) + x32 * (1.0 + p.x));
  jd.B.a22 = 0.25 * (y41 * (1.0 - p.x) + y32 * (1.0 + p.x));
  jd.detJ = jd.B.a11 * jd.B.a22 - jd.B.a12 * jd.B.a21;
  if (jd.detJ <= 0.0)
    throw std::runtime_error("bilinear map is degenerate (detJ <= 0): non-convex element");
  const double inv = 1.0 / jd.detJ;
  jd.B_inv_T.a11 = jd.B.a22 * inv;
  jd.B_inv_T.a12 = -jd.B.a21 * inv;
  jd.B_inv_T.a21 = -jd.B.a12 * inv;
  jd.B_inv_T.a22 = jd.B.a11 * inv;
  return jd;
}

BilinearScalar jacobian_bilinear(const Quadrilateral& quad) {
  const auto& c = quad.corners();
  // Corner values of detJ: cross product of the incident edge vectors over 4.
  std::array<double, 4> a;
  for (int i = 0; i < 4; ++i) {
    const Vec2 to_next = c[(i + 1) % 4] - c[i];
    const Vec2 to_prev = c[(i + 3) % 4] - c[i];
    a[i] = 0.25 * cross(to_next, to_prev);
  }
  BilinearScalar j;
  j.c00 = 0.25 * (a[0] + a[1] + a[2] + a[3]);
  j.c10 = 0.25 * (-a[0] + a[1] + a[2] - a[3]);
  j.c01 = 0.25 * (-a[0] - a[1] + a[2] + a[3]);
  j.c11 = 0.25 * (a[0] - a[1] + a[2] - a[3]);
  return j;
}

PushForward push_forward(const Quadrilateral& quad, Vec2 p, Vec2 vhat, double curlhat) {
  const JacobianData jd = jacobian(quad, p);
  return {apply(jd.B_inv_T, vhat), curlhat / jd.detJ};
}

Vec2 curl_curl_push_forward(const Quadrilateral& quad, Vec2 p, double curlhat,
                            Vec2 grad_curlhat) {
  const JacobianData jd = jacobian(quad, p);
  const auto& c = quad.corners();
  const double xs = 0.25 * ((c[0].x - c[1].x) + (c[2].x - c[3].x));
  const double ys = 0.25 * ((c[0].y - c[1].y) + (c[2].y - c[3].y));
  const Vec2 w = {xs * jd.B.a22 - ys * jd.B.a12, -ys * jd.B.a11 + xs * jd.B.a21};
  const double invJ = 1.0 / jd.detJ;
  const Vec2 v = {grad_curlhat.y - curlhat * invJ * w.x,
                  -grad_curlhat.x - curlhat * invJ * w.y};
  return invJ * invJ * apply(jd.B, v);
}

}  // namespace qcurl
