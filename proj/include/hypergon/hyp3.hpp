#pragma once

// Geometric kernel for hyperbolic 3-space.
//
// Points are carried in the upper half-space, Poincare ball or hyperboloid
// model. All computations go through the hyperboloid (equivalently the
// positive Hermitian matrices of determinant one), where SL2(C) acts by
// H -> g H g^*. The models are glued so that the basepoint * = (0,0,1) of
// the half-space is the ball origin and the hyperboloid vertex (1,0,0,0),
// and the half-space point at infinity is the ball north pole (0,0,1).
//
// Points close to the sphere at infinity lose relative precision in the
// ball and half-space charts; nothing fails, but round trips degrade.

#include <string>
#include <vector>

#include "hypergon/types.hpp"

namespace hypergon::hyp3 {

enum class Model { HalfSpace, Ball, Hyperboloid };

const char* model_name(Model m);
Model model_from_name(const std::string& name);

/// A point of the sphere at infinity, stored as a unit vector on the ball
/// boundary. The half-space boundary chart is C u {inf}, identified with the
/// unit sphere by inverse stereographic projection from the north pole.
class BoundaryPoint {
 public:
  struct Chart {
    Complex w{0.0, 0.0};
    bool infinite = false;
  };

  BoundaryPoint() : u_(0.0, 0.0, 1.0) {}
  /// Normalizes `u`. Throws DomainError for the zero vector.
  explicit BoundaryPoint(const Vec3& u);

  static BoundaryPoint infinity() { return BoundaryPoint(Vec3(0, 0, 1)); }
  static BoundaryPoint from_chart(const Chart& c);
  static BoundaryPoint from_complex(Complex w) { return from_chart({w, false}); }

  const Vec3& unit() const { return u_; }
  Chart chart() const;
  /// Future-pointing null vector (1, u) in Minkowski space.
  Vec4 null_vector() const { return Vec4(1.0, u_.x(), u_.y(), u_.z()); }
  /// Hermitian rank-one matrix of the null vector.
  Mat2 hermitian() const;

 private:
  Vec3 u_;
};

/// A point of hyperbolic 3-space in one of three models. The stored
/// coordinates are the ones it was created with; conversions are explicit.
class HPoint {
 public:
  HPoint() : model_(Model::Ball), c_(0, 0, 0, 0) {}

  static HPoint half_space(double x, double y, double z);
  static HPoint half_space(const Vec3& xyz) { return half_space(xyz.x(), xyz.y(), xyz.z()); }
  static HPoint ball(const Vec3& v);
  /// (t, x, y, z) with t^2 - x^2 - y^2 - z^2 = 1, t > 0. The time coordinate is
  /// recomputed from the spatial part.
  static HPoint hyperboloid(const Vec4& h);
  static HPoint basepoint(Model m = Model::Ball);
  static HPoint from_hermitian(const Mat2& h, Model m = Model::Ball);
  static HPoint in_model(const Vec4& h, Model m);

  Model model() const { return model_; }
  /// Three coordinates for the half-space and ball models, four for the
  /// hyperboloid.
  std::vector<double> coords() const;

  Vec4 to_hyperboloid() const;
  Vec3 to_ball() const;
  Vec3 to_half_space() const;
  Mat2 hermitian() const;

 private:
  HPoint(Model m, const Vec4& c) : model_(m), c_(c) {}
  Model model_;
  Vec4 c_;
};

HPoint convert(const HPoint& p, Model target);

double dist(const HPoint& p, const HPoint& q);
/// Same as `dist` but for normalized hyperboloid vectors.
double dist_h(const Vec4& p, const Vec4& q);

/// Minkowski pairing with signature (-,+,+,+).
double minkowski(const Vec4& a, const Vec4& b);
/// Restores t = sqrt(1 + |x|^2).
Vec4 normalize_h(const Vec4& h);
Vec4 hermitian_to_h(const Mat2& h);
Mat2 h_to_hermitian(const Vec4& h);
Vec4 ball_to_h(const Vec3& v);
Vec3 h_to_ball(const Vec4& h);

HPoint apply_isometry(const Mat2& g, const HPoint& p);
Vec4 apply_isometry_h(const Mat2& g, const Vec4& h);
BoundaryPoint apply_boundary(const Mat2& g, const BoundaryPoint& xi);

/// Moves `z` a signed distance `t` along the geodesic through z whose
/// forward endpoint is xi.
HPoint geodesic_flow(const HPoint& z, const BoundaryPoint& xi, double t);
Vec4 geodesic_flow_h(const Vec4& z, const Vec3& xi, double t);

/// Busemann function normalized by b(*, xi) = 0; b = -log z for xi = inf in
/// the half-space.
double busemann(const HPoint& x, const BoundaryPoint& xi);
double busemann_h(const Vec4& x, const Vec3& xi);

/// Riemannian gradient of b(., xi) at x, written in ball-model coordinates.
/// Its hyperbolic length is one.
Vec3 busemann_gradient(const HPoint& x, const BoundaryPoint& xi);

/// Hyperbolic length of a ball-model tangent vector at ball point v.
double ball_tangent_norm(const Vec3& v, const Vec3& tangent);

/// Forward endpoint of the geodesic from x through y. Throws DomainError
/// ("degenerate segment") when the points coincide.
BoundaryPoint ideal_endpoint(const HPoint& x, const HPoint& y);
Vec3 ideal_endpoint_h(const Vec4& x, const Vec4& y);

/// Elliptic element rotating by `angle` about the geodesic from p to q,
/// right-handed with respect to that orientation. Throws DomainError when
/// p == q.
Mat2 rotation_about_axis(const BoundaryPoint& p, const BoundaryPoint& q, double angle);

/// Some k in SU(2) with k . xi = 0 in the half-space chart (ball south pole).
Mat2 su2_to_south_pole(const BoundaryPoint& xi);

/// Angle between two boundary points seen from the ball origin.
double angular_distance(const Vec3& a, const Vec3& b);

}  // namespace hypergon::hyp3
