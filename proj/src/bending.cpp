#include "hypergon/bending.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/SVD>

namespace hypergon::bending {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

double wrap_2pi(double x) {
  double y = std::fmod(x, 2.0 * kPi);
  if (y < 0.0) y += 2.0 * kPi;
  if (y >= 2.0 * kPi) y = 0.0;
  return y;
}

// f - 2 for a unimodular P, free of cancellation.
double excess(const Mat2& p) {
  return std::norm(p(0, 0) - std::conj(p(1, 1))) + std::norm(p(0, 1) + std::conj(p(1, 0)));
}

Mat2 segment(std::span<const Mat2> word, int i, int j) {
  const int n = static_cast<int>(word.size());
  if (i < 1 || j > n + 1 || i > j) throw DomainError("diagonal indices out of range");
  Mat2 p = Mat2::Identity();
  for (int k = i; k < j; ++k) p = p * word[k - 1];
  return p;
}

borel::BElem segment(std::span<const borel::BElem> word, int i, int j) {
  const int n = static_cast<int>(word.size());
  if (i < 1 || j > n + 1 || i > j) throw DomainError("diagonal indices out of range");
  borel::BElem p;
  for (int k = i; k < j; ++k) p = p * word[k - 1];
  return p;
}

std::vector<Vec4> vertices_of(std::span<const borel::BElem> word) {
  std::vector<Vec4> out{Vec4(1, 0, 0, 0)};
  borel::BElem prefix;
  for (const auto& b : word) {
    prefix = prefix * b;
    out.push_back(hyp3::hermitian_to_h(prefix.hermitian()));
  }
  return out;
}

Vec3 direction(const Vec4& h) { return h.tail<3>().normalized(); }

// Angle at the vertex between sides a and b, opposite c, by the half-angle
// formula (accurate for thin triangles).
double vertex_angle(double a, double b, double c) {
  const double s = 0.5 * (a + b + c);
  const double num = std::sinh(s - a) * std::sinh(s - b);
  const double den = std::sinh(s) * std::sinh(s - c);
  return 2.0 * std::atan2(std::sqrt(std::max(0.0, num)), std::sqrt(std::max(0.0, den)));
}

double triangle_slack(const std::array<double, 3>& t) {
  const auto [a, b, c] = t;
  return std::min({b + c - a, a + c - b, a + b - c});
}

}  // namespace

// --------------------------------------------------------- triangulations

bool diagonals_nonintersecting(Diagonal d1, Diagonal d2, int n) {
  auto norm = [n](Diagonal d) {
    if (d.first > d.second) std::swap(d.first, d.second);
    if (d.first < 1 || d.second > n) throw DomainError("chord index out of range");
    return d;
  };
  const auto [a, b] = norm(d1);
  const auto [c, d] = norm(d2);
  if (a == c || a == d || b == c || b == d) return true;
  const bool c_in = a < c && c < b;
  const bool d_in = a < d && d < b;
  return c_in == d_in;
}

Triangulation::Triangulation(int n, std::vector<Diagonal> diagonals) : n_(n), diagonals_(std::move(diagonals)) {
  if (n < 3) throw DomainError("triangulation needs n >= 3");
  if (static_cast<int>(diagonals_.size()) > n - 3) throw DomainError("too many diagonals");
  for (auto& d : diagonals_) {
    if (d.first > d.second) std::swap(d.first, d.second);
    if (d.first < 1 || d.second > n || d.second - d.first < 2 || (d.first == 1 && d.second == n))
      throw DomainError("not a diagonal: (" + std::to_string(d.first) + "," + std::to_string(d.second) + ")");
  }
  for (std::size_t i = 0; i < diagonals_.size(); ++i)
    for (std::size_t j = i + 1; j < diagonals_.size(); ++j)
      if (diagonals_[i] == diagonals_[j] || !diagonals_nonintersecting(diagonals_[i], diagonals_[j], n))
        throw DomainError("diagonals intersect");
}

Triangulation Triangulation::fan(int n) {
  std::vector<Diagonal> d;
  for (int j = 3; j <= n - 1; ++j) d.emplace_back(1, j);
  return Triangulation(n, std::move(d));
}

// --------------------------------------------------------------- lengths

double f(std::span<const Mat2> word, int i, int j) {
  const Mat2 p = segment(word, i, j);
  return (p * p.adjoint()).trace().real();
}

double f(std::span<const borel::BElem> word, int i, int j) {
  return segment(word, i, j).hermitian().trace().real();
}

double diag_length(std::span<const Mat2> word, int i, int j) {
  const Mat2 p = segment(word, i, j);
  const double fv = (p * p.adjoint()).trace().real();
  if (fv < 2.0 - 1e-12 * std::max(1.0, fv)) throw DomainError("f below 2: not a unimodular word");
  return 2.0 * std::asinh(0.5 * std::sqrt(excess(p)));
}

double diag_length(std::span<const borel::BElem> word, int i, int j) {
  return borel::translation_length(segment(word, i, j));
}

Mat2 bend_field(std::span<const borel::BElem> word, int j) {
  const Mat2 h = segment(word, 1, j + 1).hermitian();
  const Mat2 traceless = h - 0.5 * h.trace() * Mat2::Identity();
  return kI * traceless;
}

Mat2 su2_exp(const Mat2& X, double t) {
  const double det = X.determinant().real();
  if (!(det > 0.0)) return Mat2::Identity();
  const double mu = std::sqrt(det);
  return Mat2(std::cos(t * mu) * Mat2::Identity() + (std::sin(t * mu) / mu) * X);
}

namespace {

// det F_k = f_k^2/4 - 1 = (q/2)(2 + q/2) with q = f_k - 2.
double field_det(std::span<const borel::BElem> word, int k) {
  const borel::BElem p = segment(word, 1, k + 1);
  const double a = p.a();
  const double q = (a - 1.0 / a) * (a - 1.0 / a) + std::norm(p.z());
  return 0.5 * q * (2.0 + 0.5 * q);
}

void check_k(std::span<const borel::BElem> word, int k) {
  if (k < 1 || k > static_cast<int>(word.size())) throw DomainError("flow index out of range");
}

}  // namespace

borel::Word bend_flow(std::span<const borel::BElem> word, int k, double t, bool normalized) {
  check_k(word, k);
  double scale = 1.0;
  if (normalized) {
    const double det = field_det(word, k);
    if (!(det > 1e-12)) throw DomainError("degenerate diagonal");
    scale = 1.0 / std::sqrt(det);
  }
  const Mat2 K = su2_exp(bend_field(word, k), scale * t);
  borel::Word out = borel::dressing(borel::SU2Elem(K, 1e-8), word.first(k));
  out.insert(out.end(), word.begin() + k, word.end());
  return out;
}

double bend_period(std::span<const borel::BElem> word, int k, bool normalized) {
  check_k(word, k);
  if (normalized) return 2.0 * kPi;
  const double det = field_det(word, k);
  if (!(det > 1e-12)) throw DomainError("degenerate diagonal");
  return 2.0 * kPi / std::sqrt(det);
}

double word_distance(std::span<const borel::BElem> a, std::span<const borel::BElem> b) {
  if (a.size() != b.size()) throw DomainError("words of different length");
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    out = std::max(out, std::abs(a[i].a() - b[i].a()) + std::abs(a[i].z() - b[i].z()));
  return out;
}

double commuting_check(std::span<const borel::BElem> word, int k1, int k2, double s, double t) {
  const borel::Word w1 = bend_flow(word, k1, s, true);
  const borel::Word a = bend_flow(w1, k2, t, true);
  const borel::Word w2 = bend_flow(word, k2, t, true);
  const borel::Word b = bend_flow(w2, k1, s, true);
  return word_distance(a, b);
}

// ---------------------------------------------------------------- angles

double fan_theta_hat(std::span<const Vec4> v, int m) {
  if (m < 1 || m + 2 >= static_cast<int>(v.size())) throw DomainError("fan index out of range");
  // Geodesics from * are straight rays in the ball, so the dihedral angle
  // along the diagonal is read off the unit directions at *.
  const Vec3 c = direction(v[m + 1]);
  Vec3 ta = direction(v[m]);
  Vec3 tb = direction(v[m + 2]);
  ta = (ta - ta.dot(c) * c).normalized();
  tb = (tb - tb.dot(c) * c).normalized();
  return std::atan2(c.dot(ta.cross(tb)), ta.dot(tb));
}

double fan_theta(std::span<const Vec4> v, int m) { return wrap_2pi(kPi - fan_theta_hat(v, m)); }

std::array<double, 3> fan_triangle(const moduli::Weights& r, std::span<const double> lengths, int m) {
  const int n = static_cast<int>(r.size());
  if (static_cast<int>(lengths.size()) != n - 3) throw DomainError("need n - 3 diagonal lengths");
  if (m < 1 || m > n - 2) throw DomainError("fan triangle index out of range");
  auto L = [&](int k) { return k == 0 ? r[0] : (k == n - 2 ? r[n - 1] : lengths[k - 1]); };
  return {L(m - 1), r[m], L(m)};
}

ActionAngle measure(const moduli::HPolygon& p, double tol) {
  const int n = static_cast<int>(p.size());
  if (n < 3) throw DomainError("polygon needs n >= 3");
  ActionAngle aa;
  for (int m = 1; m <= n - 3; ++m) aa.lengths.push_back(diag_length(p.word(), 1, m + 2));
  const moduli::Weights r(p.side_lengths());
  for (int m = 1; m <= n - 2; ++m)
    if (!(triangle_slack(fan_triangle(r, aa.lengths, m)) > tol))
      throw DomainError("degenerate triangle " + std::to_string(m));
  const auto v = vertices_of(p.word());
  for (int m = 1; m <= n - 3; ++m) aa.angles.push_back(fan_theta(v, m));
  return aa;
}

int fan_length_rank(std::span<const borel::BElem> word, double h, double tol) {
  const int n = static_cast<int>(word.size());
  if (n < 4) return 0;
  Eigen::MatrixXd J(n - 3, 3 * n);
  borel::Word w(word.begin(), word.end());
  auto lengths = [&] {
    Eigen::VectorXd l(n - 3);
    for (int m = 1; m <= n - 3; ++m) l[m - 1] = diag_length(w, 1, m + 2);
    return l;
  };
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < 3; ++c) {
      const borel::BElem b = word[i];
      auto shift = [&](double s) {
        const double la = std::log(b.a()) + (c == 0 ? s : 0.0);
        const Complex z = b.z() + (c == 1 ? Complex(s, 0) : c == 2 ? Complex(0, s) : Complex(0, 0));
        w[i] = borel::BElem(std::exp(la), z);
        return lengths();
      };
      J.col(3 * i + c) = (shift(h) - shift(-h)) / (2 * h);
      w[i] = b;
    }
  const Eigen::VectorXd sv = J.jacobiSvd().singularValues();
  int rank = 0;
  for (int k = 0; k < sv.size(); ++k)
    if (sv[k] > tol * std::max(1.0, sv[0])) ++rank;
  return rank;
}

std::vector<double> dihedral_angles(const moduli::HPolygon& p, double tol) { return measure(p, tol).angles; }

// ------------------------------------------------------------ polyhedron

bool momentum_polyhedron_contains(const moduli::Weights& r, std::span<const double> lengths, double slack) {
  const int n = static_cast<int>(r.size());
  for (int m = 1; m <= n - 2; ++m)
    if (!(triangle_slack(fan_triangle(r, lengths, m)) >= slack)) return false;
  return true;
}

std::vector<double> polyhedron_box(const moduli::Weights& r) {
  const int n = static_cast<int>(r.size());
  std::vector<double> out;
  for (int m = 1; m <= n - 3; ++m) {
    double head = 0.0, tail = 0.0;
    for (int i = 0; i <= m; ++i) head += r[i];
    for (int i = m + 1; i < n; ++i) tail += r[i];
    out.push_back(std::min(head, tail));
  }
  return out;
}

std::vector<std::vector<double>> sample_polyhedron(const moduli::Weights& r, int count, std::uint64_t seed,
                                                   double slack) {
  if (count < 0) throw DomainError("sample count must be nonnegative");
  const auto box = polyhedron_box(r);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<double>> out;
  const long budget = 1'000'000L * std::max(1, count);
  long tries = 0;
  std::vector<double> l(box.size());
  while (static_cast<int>(out.size()) < count) {
    if (++tries > budget) throw DomainError("momentum polyhedron has no interior points");
    for (std::size_t k = 0; k < box.size(); ++k) l[k] = box[k] * unit(rng);
    bool inside = true;
    for (int m = 1; m <= static_cast<int>(r.size()) - 2 && inside; ++m)
      inside = triangle_slack(fan_triangle(r, l, m)) > slack;
    if (inside) out.push_back(l);
  }
  return out;
}

moduli::HPolygon reconstruct(const moduli::Weights& r, const ActionAngle& aa) {
  const int n = static_cast<int>(r.size());
  if (n < 3) throw DomainError("polygon needs n >= 3");
  if (static_cast<int>(aa.angles.size()) != n - 3) throw DomainError("need n - 3 angles");
  for (int m = 1; m <= n - 2; ++m)
    if (!(triangle_slack(fan_triangle(r, aa.lengths, m)) > 1e-9))
      throw DomainError("lengths not interior at triangle " + std::to_string(m));
  auto L = [&](int k) { return k == 0 ? r[0] : (k == n - 2 ? r[n - 1] : aa.lengths[k - 1]); };

  // u[j] is the unit direction at * toward vertex j (1-based, j = 2..n).
  std::vector<Vec3> u(n + 1, Vec3::Zero());
  u[2] = Vec3(0, 0, 1);
  const double g1 = vertex_angle(L(0), L(1), r[1]);
  u[3] = Vec3(std::sin(g1), 0.0, std::cos(g1));
  for (int m = 2; m <= n - 2; ++m) {
    const Vec3 c = u[m + 1];
    const Vec3 ta = (u[m] - u[m].dot(c) * c).normalized();
    const double hat = kPi - aa.angles[m - 2];
    const Vec3 tb = std::cos(hat) * ta + std::sin(hat) * c.cross(ta);
    const double g = vertex_angle(L(m - 1), L(m), r[m]);
    u[m + 2] = std::cos(g) * c + std::sin(g) * tb;
  }

  borel::Word word;
  borel::BElem prev;
  for (int j = 2; j <= n; ++j) {
    const double len = L(j - 2);
    Vec4 x;
    x << std::cosh(len), std::sinh(len) * u[j];
    const borel::BElem cur = borel::from_point_h(x);
    word.push_back(prev.inverse() * cur);
    prev = cur;
  }
  word.push_back(prev.inverse());
  return moduli::HPolygon(std::move(word));
}

}  // namespace hypergon::bending
