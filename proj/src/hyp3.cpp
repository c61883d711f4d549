#include "hypergon/hyp3.hpp"

#include <cmath>

namespace hypergon::hyp3 {

namespace {

constexpr Complex kI{0.0, 1.0};

Vec3 spatial(const Vec4& h) { return h.tail<3>(); }

// Unit vector of a null vector (t, x) with t > 0.
Vec3 null_direction(const Vec4& n) { return spatial(n).normalized(); }

}  // namespace

const char* model_name(Model m) {
  switch (m) {
    case Model::HalfSpace:
      return "half_space";
    case Model::Ball:
      return "ball";
    case Model::Hyperboloid:
      return "hyperboloid";
  }
  return "ball";
}

Model model_from_name(const std::string& name) {
  if (name == "half_space") return Model::HalfSpace;
  if (name == "ball") return Model::Ball;
  if (name == "hyperboloid") return Model::Hyperboloid;
  throw IoError("unknown model '" + name + "'");
}

// ---------------------------------------------------------------- boundary

BoundaryPoint::BoundaryPoint(const Vec3& u) {
  const double n = u.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("boundary point needs a nonzero finite vector");
  u_ = u / n;
}

BoundaryPoint BoundaryPoint::from_chart(const Chart& c) {
  if (c.infinite || !std::isfinite(std::abs(c.w))) return infinity();
  const double m = std::norm(c.w);
  return BoundaryPoint(Vec3(2.0 * c.w.real(), 2.0 * c.w.imag(), m - 1.0) / (m + 1.0));
}

BoundaryPoint::Chart BoundaryPoint::chart() const {
  const double rho2 = u_.x() * u_.x() + u_.y() * u_.y();
  if (u_.z() > 0.0) {
    if (rho2 == 0.0) return {Complex{}, true};
    // 1 - u3 = rho^2 / (1 + u3) avoids cancellation near the north pole.
    const double denom = rho2 / (1.0 + u_.z());
    return {Complex(u_.x(), u_.y()) / denom, false};
  }
  return {Complex(u_.x(), u_.y()) / (1.0 - u_.z()), false};
}

Mat2 BoundaryPoint::hermitian() const { return h_to_hermitian(null_vector()); }

// ------------------------------------------------------------------ points

HPoint HPoint::half_space(double x, double y, double z) {
  if (!(z > 0.0)) throw DomainError("half-space point needs z > 0");
  return HPoint(Model::HalfSpace, Vec4(x, y, z, 0.0));
}

HPoint HPoint::ball(const Vec3& v) {
  if (!(v.squaredNorm() < 1.0)) throw DomainError("ball point needs |v| < 1");
  return HPoint(Model::Ball, Vec4(v.x(), v.y(), v.z(), 0.0));
}

HPoint HPoint::hyperboloid(const Vec4& h) { return HPoint(Model::Hyperboloid, normalize_h(h)); }

HPoint HPoint::basepoint(Model m) { return in_model(Vec4(1, 0, 0, 0), m); }

HPoint HPoint::from_hermitian(const Mat2& h, Model m) { return in_model(hermitian_to_h(h), m); }

HPoint HPoint::in_model(const Vec4& h, Model m) {
  const Vec4 hn = normalize_h(h);
  switch (m) {
    case Model::Hyperboloid:
      return HPoint(m, hn);
    case Model::Ball: {
      const Vec3 v = h_to_ball(hn);
      return HPoint(m, Vec4(v.x(), v.y(), v.z(), 0.0));
    }
    case Model::HalfSpace: {
      const double t = hn[0], x = hn[1], y = hn[2], z = hn[3];
      // t - z = (1 + x^2 + y^2) / (t + z) when z > 0.
      const double tmz = z > 0.0 ? (1.0 + x * x + y * y) / (t + z) : t - z;
      const double height = 1.0 / tmz;
      return HPoint(m, Vec4(x * height, y * height, height, 0.0));
    }
  }
  return HPoint(m, hn);
}

std::vector<double> HPoint::coords() const {
  if (model_ == Model::Hyperboloid) return {c_[0], c_[1], c_[2], c_[3]};
  return {c_[0], c_[1], c_[2]};
}

Vec4 HPoint::to_hyperboloid() const {
  switch (model_) {
    case Model::Hyperboloid:
      return c_;
    case Model::Ball:
      return ball_to_h(c_.head<3>());
    case Model::HalfSpace: {
      const double x = c_[0], y = c_[1], z = c_[2];
      const double r2 = x * x + y * y + z * z;
      return normalize_h(Vec4((r2 + 1.0) / (2.0 * z), x / z, y / z, (r2 - 1.0) / (2.0 * z)));
    }
  }
  return c_;
}

Vec3 HPoint::to_ball() const {
  if (model_ == Model::Ball) return c_.head<3>();
  return h_to_ball(to_hyperboloid());
}

Vec3 HPoint::to_half_space() const {
  if (model_ == Model::HalfSpace) return c_.head<3>();
  const auto p = in_model(to_hyperboloid(), Model::HalfSpace);
  return p.c_.head<3>();
}

Mat2 HPoint::hermitian() const { return h_to_hermitian(to_hyperboloid()); }

HPoint convert(const HPoint& p, Model target) {
  if (p.model() == target) return p;
  return HPoint::in_model(p.to_hyperboloid(), target);
}

// ------------------------------------------------------- model conversions

double minkowski(const Vec4& a, const Vec4& b) {
  return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

Vec4 normalize_h(const Vec4& h) {
  Vec4 out = h;
  out[0] = std::sqrt(1.0 + spatial(h).squaredNorm());
  return out;
}

Vec4 hermitian_to_h(const Mat2& h) {
  const double a = h(0, 0).real(), d = h(1, 1).real();
  return normalize_h(Vec4(0.5 * (a + d), h(0, 1).real(), h(0, 1).imag(), 0.5 * (a - d)));
}

Mat2 h_to_hermitian(const Vec4& h) {
  Mat2 m;
  m << Complex(h[0] + h[3], 0.0), Complex(h[1], h[2]), Complex(h[1], -h[2]), Complex(h[0] - h[3], 0.0);
  return m;
}

Vec4 ball_to_h(const Vec3& v) {
  const double s = v.squaredNorm();
  const double k = 2.0 / (1.0 - s);
  Vec4 h;
  h << 0.0, k * v;
  return normalize_h(h);
}

Vec3 h_to_ball(const Vec4& h) { return spatial(h) / (1.0 + h[0]); }

// ---------------------------------------------------------------- distance

double dist_h(const Vec4& p, const Vec4& q) {
  const Vec4 d = p - q;
  // |p - q|^2 in the Minkowski metric equals 4 sinh^2(dist / 2).
  const double s = std::max(0.0, minkowski(d, d));
  return 2.0 * std::asinh(0.5 * std::sqrt(s));
}

double dist(const HPoint& p, const HPoint& q) { return dist_h(p.to_hyperboloid(), q.to_hyperboloid()); }

// --------------------------------------------------------------- isometries

Vec4 apply_isometry_h(const Mat2& g, const Vec4& h) {
  return hermitian_to_h(g * h_to_hermitian(h) * g.adjoint());
}

HPoint apply_isometry(const Mat2& g, const HPoint& p) {
  return HPoint::in_model(apply_isometry_h(g, p.to_hyperboloid()), p.model());
}

BoundaryPoint apply_boundary(const Mat2& g, const BoundaryPoint& xi) {
  const Mat2 n = g * xi.hermitian() * g.adjoint();
  return BoundaryPoint(Vec3(n(0, 1).real(), n(0, 1).imag(), 0.5 * (n(0, 0).real() - n(1, 1).real())));
}

// ------------------------------------------------------------ geodesic flow

Vec4 geodesic_flow_h(const Vec4& z, const Vec3& xi, double t) {
  Vec4 n;
  n << 1.0, xi;
  const double c = -minkowski(z, n);
  // Unit-speed geodesic through z asymptotic to n: e^{-t} z + sinh(t)/c n.
  return normalize_h(std::exp(-t) * z + (std::sinh(t) / c) * n);
}

HPoint geodesic_flow(const HPoint& z, const BoundaryPoint& xi, double t) {
  return HPoint::in_model(geodesic_flow_h(z.to_hyperboloid(), xi.unit(), t), z.model());
}

double busemann_h(const Vec4& x, const Vec3& xi) {
  return std::log(x[0] - spatial(x).dot(xi));
}

double busemann(const HPoint& x, const BoundaryPoint& xi) { return busemann_h(x.to_hyperboloid(), xi.unit()); }

Vec3 busemann_gradient(const HPoint& x, const BoundaryPoint& xi) {
  const Vec3 v = x.to_ball();
  const Vec3& u = xi.unit();
  const double s = 1.0 - v.squaredNorm();
  const Vec3 d = v - u;
  const Vec3 euclid = 2.0 * d / d.squaredNorm() + 2.0 * v / s;
  return (0.25 * s * s) * euclid;
}

double ball_tangent_norm(const Vec3& v, const Vec3& tangent) {
  return 2.0 * tangent.norm() / (1.0 - v.squaredNorm());
}

Vec3 ideal_endpoint_h(const Vec4& x, const Vec4& y) {
  const double d = dist_h(x, y);
  if (!(d > 1e-14)) throw DomainError("degenerate segment");
  // Unit tangent at x toward y, then the null vector x + v.
  const double pairing = minkowski(x, y);
  const Vec4 v = (y + pairing * x) / std::sinh(d);
  return null_direction(x + v);
}

BoundaryPoint ideal_endpoint(const HPoint& x, const HPoint& y) {
  return BoundaryPoint(ideal_endpoint_h(x.to_hyperboloid(), y.to_hyperboloid()));
}

// ---------------------------------------------------------------- rotations

Mat2 su2_to_south_pole(const BoundaryPoint& xi) {
  const Vec3& u = xi.unit();
  auto lower = [](const Vec3& w) {
    const double s = std::sqrt(2.0 * (1.0 - w.z()));
    Mat2 k;
    k << Complex(1.0 - w.z(), 0.0), -Complex(w.x(), w.y()), Complex(w.x(), -w.y()), Complex(1.0 - w.z(), 0.0);
    return Mat2(k / s);
  };
  if (u.z() <= 0.0) return lower(u);
  Mat2 j;
  j << 0.0, -1.0, 1.0, 0.0;
  const BoundaryPoint flipped = apply_boundary(j, xi);
  return lower(flipped.unit()) * j;
}

Mat2 rotation_about_axis(const BoundaryPoint& p, const BoundaryPoint& q, double angle) {
  if (angular_distance(p.unit(), q.unit()) < 1e-12) throw DomainError("rotation axis endpoints coincide");
  const Mat2 k = su2_to_south_pole(p);
  const BoundaryPoint q1 = apply_boundary(k, q);
  // Lower unipotent [[1,0],[c,1]] fixes 0 and sends q1 to infinity when c = -1/q1.
  Mat2 a = Mat2::Identity();
  const auto chart = q1.chart();
  if (!chart.infinite) {
    const Vec3& v = q1.unit();
    const Complex inv_q = Complex(v.x(), -v.y()) / (1.0 + v.z());
    a(1, 0) = -inv_q;
  }
  const Mat2 to_std = a * k;
  Mat2 d = Mat2::Zero();
  d(0, 0) = std::exp(kI * (0.5 * angle));
  d(1, 1) = std::exp(-kI * (0.5 * angle));
  return to_std.inverse() * d * to_std;
}

double angular_distance(const Vec3& a, const Vec3& b) {
  return 2.0 * std::asin(std::min(1.0, 0.5 * (a - b).norm()));
}

}  // namespace hypergon::hyp3
