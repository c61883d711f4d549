#pragma once

// The group B of upper-triangular SL2(C) matrices with positive diagonal,
// the Iwasawa splitting SL2(C) = B . SU(2), the invariant pairing on sl2(C),
// the dressing action of SU(2) on words in B and the correspondence between
// words and based polygons.

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "hypergon/hyp3.hpp"
#include "hypergon/types.hpp"

namespace hypergon::borel {

/// [[a, z], [0, 1/a]] with a > 0.
class BElem {
 public:
  BElem() = default;
  BElem(double a, Complex z);

  static BElem identity() { return {}; }
  /// diag(e^{t/2}, e^{-t/2}); translates * a distance t toward infinity.
  static BElem vertical(double t);
  /// Accepts a matrix that is upper triangular with positive real diagonal
  /// and unit determinant, within `tol`.
  static BElem from_matrix(const Mat2& m, double tol = 1e-10);

  double a() const { return a_; }
  Complex z() const { return z_; }
  Mat2 matrix() const;
  BElem inverse() const { return BElem(1.0 / a_, -z_); }
  /// b b^*, the Hermitian matrix of the point b . *.
  Mat2 hermitian() const;

  friend BElem operator*(const BElem& x, const BElem& y) {
    return BElem(x.a_ * y.a_, x.a_ * y.z_ + x.z_ / y.a_);
  }

 private:
  double a_ = 1.0;
  Complex z_{0.0, 0.0};
};

using Word = std::vector<BElem>;
/// Words with letters in SL2(C); fields on B^n are evaluated on these when
/// differentiating off B.
using GWord = std::vector<Mat2>;

/// Element of SU(2). Stored as the matrix [[alpha, beta], [-conj(beta), conj(alpha)]];
/// the quaternion form is (Re alpha, Im alpha, Re beta, Im beta).
class SU2Elem {
 public:
  SU2Elem() : m_(Mat2::Identity()) {}
  /// Validates unitarity and det = 1 within `tol`.
  explicit SU2Elem(const Mat2& m, double tol = 1e-10);

  static SU2Elem identity() { return {}; }
  /// Normalizes the quaternion.
  static SU2Elem from_quaternion(double q0, double q1, double q2, double q3);

  const Mat2& matrix() const { return m_; }
  std::array<double, 4> quaternion() const;
  SU2Elem inverse() const { return SU2Elem(Mat2(m_.adjoint())); }

  friend SU2Elem operator*(const SU2Elem& x, const SU2Elem& y) { return SU2Elem(Mat2(x.m_ * y.m_)); }

 private:
  Mat2 m_;
};

/// Traceless 2x2 complex matrix: an element of sl2(C) viewed as a real
/// six-dimensional space.
class LieVec {
 public:
  LieVec() : m_(Mat2::Zero()) {}
  /// Throws DomainError unless |trace| < 1e-13 (relative to the entries).
  explicit LieVec(const Mat2& m);

  const Mat2& matrix() const { return m_; }
  /// Anti-Hermitian: su(2).
  bool in_k(double tol = 1e-12) const;
  /// Upper triangular with real diagonal.
  bool in_b(double tol = 1e-12) const;

  friend LieVec operator+(const LieVec& x, const LieVec& y) { return LieVec(Mat2(x.m_ + y.m_)); }
  friend LieVec operator-(const LieVec& x, const LieVec& y) { return LieVec(Mat2(x.m_ - y.m_)); }
  friend LieVec operator*(double s, const LieVec& x) { return LieVec(Mat2(s * x.m_)); }

 private:
  Mat2 m_;
};

// Named elements of sl2(C).
LieVec lie_H();  ///< diag(1, -1)
LieVec lie_E();  ///< [[0, 1], [0, 0]]
LieVec lie_X();  ///< 1/2 [[0, 1], [-1, 0]]
LieVec lie_Y();  ///< 1/2 [[0, i], [i, 0]]

/// Real basis of k = su(2): X, Y, iH/2.
std::array<LieVec, 3> basis_k();
/// Real basis of b: E, iE, H/2.
std::array<LieVec, 3> basis_b();

/// <u, v> = 2 Im tr(u v). Symmetric, Ad-invariant; k and b are isotropic and
/// dually paired.
double pairing(const Mat2& u, const Mat2& v);
inline double pairing(const LieVec& u, const LieVec& v) { return pairing(u.matrix(), v.matrix()); }

Mat2 project_k(const Mat2& u);
Mat2 project_b(const Mat2& u);
inline LieVec project_k(const LieVec& u) { return LieVec(project_k(u.matrix())); }
inline LieVec project_b(const LieVec& u) { return LieVec(project_b(u.matrix())); }

/// g u g^{-1}
Mat2 adjoint(const Mat2& g, const Mat2& u);

/// Exponential of a traceless matrix, closed form (nu^2 = -det(nu) I).
Mat2 exp_sl2(const Mat2& nu);

struct Iwasawa {
  BElem b;
  SU2Elem k;
};

/// g = b k with b in B, k in SU(2); closed-form row normalization. The
/// determinant of g is assumed to be one.
Iwasawa iwasawa(const Mat2& g);
inline BElem rho_B(const Mat2& g) { return iwasawa(g).b; }
inline SU2Elem rho_K(const Mat2& g) { return iwasawa(g).k; }

BElem product(std::span<const BElem> word);
Mat2 product(std::span<const Mat2> word);
GWord to_gword(std::span<const BElem> word);

/// b'_i = rho_B(rho_K(k b_1 ... b_{i-1}) b_i), computed by carrying the
/// running SU(2) factor along the word.
Word dressing(const SU2Elem& k, std::span<const BElem> word);

/// Tangent vectors xi_i = b_i . rho_b Ad_{b_i^{-1}} rho_k Ad_{(b_1...b_{i-1})^{-1}} x.
std::vector<Mat2> infinitesimal_dressing(const Mat2& x, std::span<const BElem> word);

/// Vertices (*, b_1 *, b_1 b_2 *, ..., b_1...b_n *), n + 1 points, stored in
/// the hyperboloid model so that far vertices keep full precision.
std::vector<hyp3::HPoint> phi_map(std::span<const BElem> word);
/// Inverse of phi_map. Throws DomainError("polygon not based") when the
/// first vertex is not * and when consecutive vertices coincide.
Word phi_inverse(std::span<const hyp3::HPoint> vertices);

/// The unique element of B carrying * to p.
BElem from_point(const hyp3::HPoint& p);
BElem from_point_h(const Vec4& h);

/// Hyperbolic distance from * to b . *.
double translation_length(const BElem& b);

}  // namespace hypergon::borel
