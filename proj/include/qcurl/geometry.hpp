#pragma once

#include <array>
#include <cmath>

namespace qcurl {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }

struct Mat2 {
  double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;
};

inline Vec2 apply(const Mat2& m, Vec2 v) {
  return {m.a11 * v.x + m.a12 * v.y, m.a21 * v.x + m.a22 * v.y};
}

/// Convex quadrilateral with counterclockwise corners P1..P4.
///
/// Edge and angle labeling follows the reference square [-1,1]^2 with corners
/// P1=(-1,-1), P2=(1,-1), P3=(1,1), P4=(-1,1): edge 1 is the image of
/// {x=-1} and joins P4->P1, edge 2 the image of {y=-1} joining P1->P2,
/// edge 3 {x=+1} joining P2->P3, edge 4 {y=+1} joining P3->P4. With this
/// labeling l_i is the length of edge i and s_i = sin(theta_i) at corner P_i,
/// so the metric at corner P1 is l_1*l_2*s_1 etc.
class Quadrilateral {
 public:
  /// Validates counterclockwise orientation and strict convexity.
  explicit Quadrilateral(const std::array<Vec2, 4>& corners);

  const std::array<Vec2, 4>& corners() const { return corners_; }
  Vec2 corner(int i) const { return corners_[i]; }

  /// Length of edge i (0-based, edge i joins corner (i+3)%4 to corner i).
  double edge_length(int i) const { return lengths_[i]; }
  /// Sine of the interior angle at corner i.
  double angle_sine(int i) const { return sines_[i]; }

  const std::array<double, 4>& edge_lengths() const { return lengths_; }
  const std::array<double, 4>& angle_sines() const { return sines_; }

 private:
  std::array<Vec2, 4> corners_;
  std::array<double, 4> lengths_;
  std::array<double, 4> sines_;
};

/// (lengths l1..l4, sines s1..s4) per the labeling documented on Quadrilateral.
std::pair<std::array<double, 4>, std::array<double, 4>> edge_geometry(const Quadrilateral& quad);

/// Bilinear image of a reference point in [-1,1]^2.
Vec2 map_to_physical(const Quadrilateral& quad, Vec2 refpt);

struct JacobianData {
  Mat2 B;        // d(x,y)/d(xhat,yhat)
  double detJ;   // > 0 on convex elements
  Mat2 B_inv_T;  // inverse transpose, the covariant/contravariant factor
};

/// Jacobian of the bilinear map at a reference point. Throws if detJ <= 0.
JacobianData jacobian(const Quadrilateral& quad, Vec2 refpt);

/// detJ as a bilinear function c00 + c10*x + c01*y + c11*x*y of the
/// reference coordinates; exposes its exact reference gradient.
struct BilinearScalar {
  double c00 = 0.0, c10 = 0.0, c01 = 0.0, c11 = 0.0;
  double value(Vec2 p) const { return c00 + c10 * p.x + c01 * p.y + c11 * p.x * p.y; }
  double dx(Vec2 p) const { return c10 + c11 * p.y; }
  double dy(Vec2 p) const { return c01 + c11 * p.x; }
  double dxy() const { return c11; }
};

BilinearScalar jacobian_bilinear(const Quadrilateral& quad);

struct PushForward {
  Vec2 value;
  double curl = 0.0;
};

/// Contravariant transform: value B^{-T} vhat, curl curlhat/detJ.
PushForward push_forward(const Quadrilateral& quad, Vec2 refpt, Vec2 vhat, double curlhat);

/// Physical curl-curl of the transformed field, from the reference curl and
/// its reference gradient:
///   (B/J^2) [ (dy curlhat, -dx curlhat) - (curlhat/J) * w ]
/// where w carries the bilinear distortion and vanishes on parallelograms.
Vec2 curl_curl_push_forward(const Quadrilateral& quad, Vec2 refpt, double curlhat,
                            Vec2 grad_curlhat);

}  // namespace qcurl
