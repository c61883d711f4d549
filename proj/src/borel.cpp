#include "hypergon/borel.hpp"

#include <cmath>

namespace hypergon::borel {

namespace {
constexpr Complex kI{0.0, 1.0};
}

// -------------------------------------------------------------------- B

BElem::BElem(double a, Complex z) : a_(a), z_(z) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("B element needs a positive diagonal");
}

BElem BElem::vertical(double t) { return BElem(std::exp(0.5 * t), Complex{}); }

BElem BElem::from_matrix(const Mat2& m, double tol) {
  const double a = m(0, 0).real();
  const bool ok = std::abs(m(1, 0)) <= tol && std::abs(m(0, 0).imag()) <= tol &&
                  std::abs(m(1, 1).imag()) <= tol && a > 0.0 &&
                  std::abs(m(1, 1).real() * a - 1.0) <= tol;
  if (!ok) throw DomainError("matrix is not in B");
  return BElem(a, m(0, 1));
}

Mat2 BElem::matrix() const {
  Mat2 m;
  m << Complex(a_, 0.0), z_, Complex{}, Complex(1.0 / a_, 0.0);
  return m;
}

Mat2 BElem::hermitian() const {
  Mat2 h;
  h << Complex(a_ * a_ + std::norm(z_), 0.0), z_ / a_, std::conj(z_) / a_, Complex(1.0 / (a_ * a_), 0.0);
  return h;
}

// ------------------------------------------------------------------ SU(2)

SU2Elem::SU2Elem(const Mat2& m, double tol) : m_(m) {
  const double unitary = (m * m.adjoint() - Mat2::Identity()).norm();
  const double det = std::abs(m.determinant() - 1.0);
  if (unitary > tol || det > tol) throw DomainError("matrix is not in SU(2)");
}

SU2Elem SU2Elem::from_quaternion(double q0, double q1, double q2, double q3) {
  const double n = std::sqrt(q0 * q0 + q1 * q1 + q2 * q2 + q3 * q3);
  if (!(n > 0.0)) throw DomainError("zero quaternion");
  const Complex alpha(q0 / n, q1 / n), beta(q2 / n, q3 / n);
  Mat2 m;
  m << alpha, beta, -std::conj(beta), std::conj(alpha);
  return SU2Elem(m);
}

std::array<double, 4> SU2Elem::quaternion() const {
  return {m_(0, 0).real(), m_(0, 0).imag(), m_(0, 1).real(), m_(0, 1).imag()};
}

// ---------------------------------------------------------------- sl2(C)

LieVec::LieVec(const Mat2& m) : m_(m) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (std::abs(m.trace()) > 1e-13 * scale) throw DomainError("Lie algebra element must be traceless");
}

bool LieVec::in_k(double tol) const { return (m_ + m_.adjoint()).norm() <= tol; }

bool LieVec::in_b(double tol) const {
  return std::abs(m_(1, 0)) <= tol && std::abs(m_(0, 0).imag()) <= tol && std::abs(m_(1, 1).imag()) <= tol;
}

LieVec lie_H() {
  Mat2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return LieVec(m);
}

LieVec lie_E() {
  Mat2 m;
  m << 0.0, 1.0, 0.0, 0.0;
  return LieVec(m);
}

LieVec lie_X() {
  Mat2 m;
  m << 0.0, 0.5, -0.5, 0.0;
  return LieVec(m);
}

LieVec lie_Y() {
  Mat2 m;
  m << 0.0, 0.5 * kI, 0.5 * kI, 0.0;
  return LieVec(m);
}

std::array<LieVec, 3> basis_k() {
  return {lie_X(), lie_Y(), LieVec(Mat2(0.5 * kI * lie_H().matrix()))};
}

std::array<LieVec, 3> basis_b() {
  return {lie_E(), LieVec(Mat2(kI * lie_E().matrix())), 0.5 * lie_H()};
}

double pairing(const Mat2& u, const Mat2& v) { return 2.0 * (u * v).trace().imag(); }

Mat2 project_k(const Mat2& u) {
  const Complex alpha = 0.5 * (u(0, 0) - u(1, 1));
  const Complex gamma = u(1, 0);
  Mat2 k;
  k << Complex(0.0, alpha.imag()), -std::conj(gamma), gamma, Complex(0.0, -alpha.imag());
  return k;
}

Mat2 project_b(const Mat2& u) {
  const Complex alpha = 0.5 * (u(0, 0) - u(1, 1));
  Mat2 b;
  b << Complex(alpha.real(), 0.0), u(0, 1) + std::conj(u(1, 0)), Complex{}, Complex(-alpha.real(), 0.0);
  return b;
}

Mat2 adjoint(const Mat2& g, const Mat2& u) { return g * u * g.inverse(); }

Mat2 exp_sl2(const Mat2& nu) {
  // nu^2 = delta^2 I with delta^2 = -det(nu).
  const Complex delta2 = -nu.determinant();
  const Complex delta = std::sqrt(delta2);
  Complex c, s;
  if (std::abs(delta) < 1e-4) {
    c = 1.0 + delta2 / 2.0 + delta2 * delta2 / 24.0 + delta2 * delta2 * delta2 / 720.0;
    s = 1.0 + delta2 / 6.0 + delta2 * delta2 / 120.0 + delta2 * delta2 * delta2 / 5040.0;
  } else {
    c = std::cosh(delta);
    s = std::sinh(delta) / delta;
  }
  return Mat2(c * Mat2::Identity() + s * nu);
}

// --------------------------------------------------------------- Iwasawa

Iwasawa iwasawa(const Mat2& g) {
  // The second row of g is a^{-1} times the second row of k.
  const double norm = std::sqrt(std::norm(g(1, 0)) + std::norm(g(1, 1)));
  const Complex c = g(1, 0) / norm, d = g(1, 1) / norm;
  Mat2 k;
  k << std::conj(d), -std::conj(c), c, d;
  const Mat2 b = g * k.adjoint();
  Iwasawa out;
  out.b = BElem(1.0 / norm, b(0, 1));
  out.k = SU2Elem(k, 1e-8);
  return out;
}

BElem product(std::span<const BElem> word) {
  BElem p;
  for (const auto& b : word) p = p * b;
  return p;
}

Mat2 product(std::span<const Mat2> word) {
  Mat2 p = Mat2::Identity();
  for (const auto& g : word) p = p * g;
  return p;
}

GWord to_gword(std::span<const BElem> word) {
  GWord out;
  out.reserve(word.size());
  for (const auto& b : word) out.push_back(b.matrix());
  return out;
}

// -------------------------------------------------------------- dressing

Word dressing(const SU2Elem& k, std::span<const BElem> word) {
  Word out;
  out.reserve(word.size());
  Mat2 carry = k.matrix();
  for (const auto& b : word) {
    const Iwasawa split = iwasawa(carry * b.matrix());
    out.push_back(split.b);
    carry = split.k.matrix();
  }
  return out;
}

std::vector<Mat2> infinitesimal_dressing(const Mat2& x, std::span<const BElem> word) {
  std::vector<Mat2> out;
  out.reserve(word.size());
  BElem prefix;
  for (const auto& b : word) {
    const Mat2 xk = project_k(adjoint(prefix.inverse().matrix(), x));
    const Mat2 eta = project_b(adjoint(b.inverse().matrix(), xk));
    out.push_back(b.matrix() * eta);
    prefix = prefix * b;
  }
  return out;
}

// ------------------------------------------------------------- polygons

std::vector<hyp3::HPoint> phi_map(std::span<const BElem> word) {
  std::vector<hyp3::HPoint> vertices;
  vertices.reserve(word.size() + 1);
  vertices.push_back(hyp3::HPoint::basepoint());
  BElem prefix;
  for (const auto& b : word) {
    prefix = prefix * b;
    vertices.push_back(hyp3::HPoint::from_hermitian(prefix.hermitian(), hyp3::Model::Hyperboloid));
  }
  return vertices;
}

BElem from_point_h(const Vec4& h) {
  const Mat2 herm = hyp3::h_to_hermitian(h);
  const double a = 1.0 / std::sqrt(herm(1, 1).real());
  return BElem(a, herm(0, 1) * a);
}

BElem from_point(const hyp3::HPoint& p) { return from_point_h(p.to_hyperboloid()); }

Word phi_inverse(std::span<const hyp3::HPoint> vertices) {
  if (vertices.empty()) throw DomainError("polygon not based");
  const Vec4 star(1, 0, 0, 0);
  if (hyp3::dist_h(vertices[0].to_hyperboloid(), star) > 1e-10) throw DomainError("polygon not based");
  Word word;
  word.reserve(vertices.size() - 1);
  BElem prev;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    const Vec4 h = vertices[i].to_hyperboloid();
    if (hyp3::dist_h(vertices[i - 1].to_hyperboloid(), h) < 1e-14)
      throw DomainError("zero-length edge " + std::to_string(i));
    const BElem cur = from_point_h(h);
    word.push_back(prev.inverse() * cur);
    prev = cur;
  }
  return word;
}

double translation_length(const BElem& b) {
  // tr(b b^*)/2 - 1 = ((a - 1/a)^2 + |z|^2) / 2 = 2 sinh^2(d/2).
  const double a = b.a();
  const double q = (a - 1.0 / a) * (a - 1.0 / a) + std::norm(b.z());
  return 2.0 * std::asinh(0.5 * std::sqrt(q));
}

}  // namespace hypergon::borel
