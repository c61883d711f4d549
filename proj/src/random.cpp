#include "hypergon/random.hpp"

#include <cmath>
#include <numbers>

namespace hypergon::random {

namespace {

double normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }
double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

Vec3 sphere(Rng& rng) {
  for (;;) {
    const Vec3 v(normal(rng), normal(rng), normal(rng));
    const double n = v.norm();
    if (n > 1e-6) return v / n;
  }
}

}  // namespace

Mat2 sl2c(Rng& rng, double scale) {
  for (;;) {
    Mat2 m;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m(i, j) = scale * Complex(normal(rng), normal(rng));
    const Complex d = m.determinant();
    if (std::abs(d) < 1e-3 * scale * scale) continue;
    return Mat2(m / std::sqrt(d));
  }
}

borel::SU2Elem su2(Rng& rng) {
  const double q0 = normal(rng), q1 = normal(rng), q2 = normal(rng), q3 = normal(rng);
  return borel::SU2Elem::from_quaternion(q0, q1, q2, q3);
}

borel::BElem belem(Rng& rng, double scale) {
  const double la = scale * normal(rng);
  const double re = scale * normal(rng), im = scale * normal(rng);
  return borel::BElem(std::exp(la), Complex(re, im));
}

borel::Word word(Rng& rng, int n, double scale) {
  borel::Word w;
  for (int i = 0; i < n; ++i) w.push_back(belem(rng, scale));
  return w;
}

hyp3::BoundaryPoint boundary(Rng& rng) { return hyp3::BoundaryPoint(sphere(rng)); }

Vec4 point_h(Rng& rng, double radius) {
  const double d = uniform(rng, 0.0, radius);
  const Vec3 u = sphere(rng);
  Vec4 h;
  h << std::cosh(d), std::sinh(d) * u;
  return h;
}

Mat2 su2_algebra(Rng& rng) {
  const auto k = borel::basis_k();
  Mat2 x = Mat2::Zero();
  for (const auto& e : k) x += normal(rng) * e.matrix();
  return x;
}

moduli::HPolygon closed_polygon(Rng& rng, int n, double radius) {
  for (;;) {
    std::vector<Vec4> v{Vec4(1, 0, 0, 0)};
    for (int i = 1; i < n; ++i) v.push_back(point_h(rng, radius));
    v.emplace_back(1, 0, 0, 0);
    bool ok = true;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) ok = ok && hyp3::dist_h(v[i], v[i + 1]) > 0.05;
    if (!ok) continue;
    borel::Word w;
    borel::BElem prev;
    for (std::size_t i = 1; i < v.size(); ++i) {
      const borel::BElem cur = borel::from_point_h(v[i]);
      w.push_back(prev.inverse() * cur);
      prev = cur;
    }
    // The closing letter is exactly prev^{-1}, so the word multiplies to I
    // up to roundoff.
    return moduli::HPolygon(std::move(w));
  }
}

moduli::EPolygon closed_epolygon(Rng& rng, int n) {
  for (;;) {
    std::vector<Vec3> e;
    Vec3 mean = Vec3::Zero();
    for (int i = 0; i < n; ++i) {
      e.push_back(sphere(rng) * uniform(rng, 0.5, 1.5));
      mean += e.back();
    }
    mean /= n;
    bool ok = true;
    for (auto& x : e) {
      x -= mean;
      ok = ok && x.norm() > 0.1;
    }
    if (ok) return moduli::EPolygon{std::move(e)};
  }
}

gaussmap::Configuration stable_configuration(Rng& rng, int n, double margin) {
  for (;;) {
    std::vector<hyp3::BoundaryPoint> pts;
    std::vector<double> w;
    for (int i = 0; i < n; ++i) {
      pts.push_back(boundary(rng));
      w.push_back(uniform(rng, 0.5, 1.5));
    }
    auto c = gaussmap::make_configuration(std::move(pts), moduli::Weights(std::move(w)));
    const auto cls = gaussmap::classify_stability(c);
    if (cls.kind == gaussmap::Stability::Stable && cls.cluster_weights.front() < (0.5 - margin) * c.weights.total())
      return c;
  }
}

}  // namespace hypergon::random
