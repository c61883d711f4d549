#include "hypergon/moduli.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>

#include <Eigen/LU>

namespace hypergon::moduli {

Weights::Weights(std::vector<double> r) : r_(std::move(r)) {
  if (r_.empty()) throw DomainError("weights must be nonempty");
  for (double x : r_)
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("weights must be positive");
}

double Weights::total() const { return std::accumulate(r_.begin(), r_.end(), 0.0); }

Weights Weights::scaled(double t) const {
  std::vector<double> out = r_;
  for (double& x : out) x *= t;
  return Weights(std::move(out));
}

HPolygon HPolygon::from_vertices(std::span<const hyp3::HPoint> vertices) {
  return HPolygon(borel::phi_inverse(vertices));
}

std::vector<Vec4> HPolygon::vertices_h() const {
  std::vector<Vec4> out;
  out.reserve(word_.size() + 1);
  out.emplace_back(1, 0, 0, 0);
  borel::BElem prefix;
  for (const auto& b : word_) {
    prefix = prefix * b;
    out.push_back(hyp3::hermitian_to_h(prefix.hermitian()));
  }
  return out;
}

std::vector<double> HPolygon::side_lengths() const {
  std::vector<double> out;
  out.reserve(word_.size());
  for (const auto& b : word_) out.push_back(borel::translation_length(b));
  return out;
}

std::vector<double> EPolygon::side_lengths() const {
  std::vector<double> out;
  out.reserve(edges.size());
  for (const auto& e : edges) out.push_back(e.norm());
  return out;
}

std::vector<Vec3> EPolygon::vertices() const {
  std::vector<Vec3> out{Vec3::Zero()};
  for (const auto& e : edges) out.push_back(out.back() + e);
  return out;
}

bool in_cone(const Weights& r) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    double others = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j)
      if (j != i) others += r[j];
    if (r[i] > others) return false;
  }
  return true;
}

std::optional<WallWitness> wall_witness(const Weights& r, double tol) {
  const std::size_t n = r.size();
  if (n > 24) throw DomainError("enumeration limit");
  if (n < 4) return std::nullopt;
  const std::uint32_t count = 1u << (n - 1);
  for (std::uint32_t m = 0; m < count; ++m) {
    // Index 0 always belongs to I; bit k of m places index k + 1 in I.
    const std::uint32_t mask = 1u | (m << 1);
    const int size_i = std::popcount(mask);
    if (size_i < 2 || static_cast<int>(n) - size_i < 2) continue;
    double si = 0.0, sj = 0.0;
    for (std::size_t k = 0; k < n; ++k) ((mask >> k) & 1u ? si : sj) += r[k];
    if (std::abs(si - sj) <= tol) {
      WallWitness w;
      for (std::size_t k = 0; k < n; ++k) ((mask >> k) & 1u ? w.I : w.J).push_back(static_cast<int>(k));
      w.imbalance = si - sj;
      return w;
    }
  }
  return std::nullopt;
}

double closure_residual(const HPolygon& p) { return borel::translation_length(borel::product(p.word())); }

double distance_to_geodesic(const Vec4& x, const Vec4& p, const Vec4& q) {
  // Remove the component of x in span(p, q); what is left is spacelike with
  // Minkowski length sinh(distance).
  Eigen::Matrix2d gram;
  gram << hyp3::minkowski(p, p), hyp3::minkowski(p, q), hyp3::minkowski(q, p), hyp3::minkowski(q, q);
  const Eigen::Vector2d rhs(hyp3::minkowski(x, p), hyp3::minkowski(x, q));
  const Eigen::Vector2d c = gram.fullPivLu().solve(rhs);
  const Vec4 perp = x - c[0] * p - c[1] * q;
  return std::asinh(std::sqrt(std::max(0.0, hyp3::minkowski(perp, perp))));
}

bool vertices_degenerate(std::span<const Vec4> v, double tol) {
  double best = -1.0;
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const double d = hyp3::dist_h(v[i], v[j]);
      if (d > best) best = d, bi = i, bj = j;
    }
  if (best <= tol) return true;
  for (const auto& x : v)
    if (distance_to_geodesic(x, v[bi], v[bj]) > tol) return false;
  return true;
}

bool is_degenerate(const HPolygon& p, double tol) {
  const auto v = p.vertices_h();
  return vertices_degenerate(v, tol);
}

double euclidean_closure_residual(const EPolygon& p) {
  Vec3 s = Vec3::Zero();
  for (const auto& e : p.edges) s += e;
  return s.norm();
}

}  // namespace hypergon::moduli
