#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hypergon/bending.hpp"
#include "hypergon/random.hpp"
#include "oracles.hpp"

using namespace hypergon;
using namespace hypergon::bending;

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_pi(double x) { return x - 2 * kPi * std::round(x / (2 * kPi)); }

// Proper crossing of two segments in the plane.
bool segments_cross(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Eigen::Vector2d& c,
                    const Eigen::Vector2d& d) {
  auto orient = [](const Eigen::Vector2d& p, const Eigen::Vector2d& q, const Eigen::Vector2d& r) {
    const double v = (q - p).x() * (r - p).y() - (q - p).y() * (r - p).x();
    return v > 1e-12 ? 1 : (v < -1e-12 ? -1 : 0);
  };
  return orient(a, b, c) * orient(a, b, d) < 0 && orient(c, d, a) * orient(c, d, b) < 0;
}

Mat2 diag_translation(double t) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = std::exp(t / 2);
  m(1, 1) = std::exp(-t / 2);
  return m;
}

}  // namespace

TEST(Bending, HexagonChordTable) {
  const int n = 6;
  std::vector<Eigen::Vector2d> v(n + 1);
  for (int k = 1; k <= n; ++k) v[k] = Eigen::Vector2d(std::cos(2 * kPi * k / n), std::sin(2 * kPi * k / n));
  std::vector<Diagonal> chords;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 2; j <= n; ++j)
      if (!(i == 1 && j == n)) chords.emplace_back(i, j);
  ASSERT_EQ(chords.size(), 9u);
  for (const auto& a : chords)
    for (const auto& b : chords) {
      if (a == b) continue;
      const bool crossing = segments_cross(v[a.first], v[a.second], v[b.first], v[b.second]);
      EXPECT_EQ(diagonals_nonintersecting(a, b, n), !crossing) << a.first << a.second << " " << b.first << b.second;
    }
  EXPECT_TRUE(diagonals_nonintersecting({1, 3}, {1, 4}, 5));
  EXPECT_FALSE(diagonals_nonintersecting({1, 3}, {2, 4}, 5));
}

TEST(Bending, Triangulations) {
  const auto fan = Triangulation::fan(6);
  EXPECT_EQ(fan.diagonals(), (std::vector<Diagonal>{{1, 3}, {1, 4}, {1, 5}}));
  EXPECT_NO_THROW(Triangulation(6, {{1, 3}, {3, 5}, {1, 5}}));
  EXPECT_THROW(Triangulation(6, {{1, 4}, {2, 5}}), DomainError);
  EXPECT_THROW(Triangulation(6, {{1, 2}}), DomainError);
  EXPECT_THROW(Triangulation(5, {{1, 3}, {1, 4}, {3, 5}}), DomainError);
}

TEST(Bending, TraceFunction) {
  const borel::Word ones(4);
  EXPECT_DOUBLE_EQ(f(ones, 1, 5), 2.0);
  EXPECT_DOUBLE_EQ(f(ones, 2, 2), 2.0);
  const borel::Word one{borel::BElem::vertical(0.8)};
  EXPECT_NEAR(f(one, 1, 2), 2 * std::cosh(0.8), 1e-14);
  EXPECT_NEAR(diag_length(one, 1, 2), 0.8, 1e-14);
  EXPECT_NEAR(diag_length_doubled(one, 1, 2), 1.6, 1e-14);
  const std::vector<Mat2> gw{diag_translation(0.8)};
  EXPECT_NEAR(f(std::span<const Mat2>(gw), 1, 2), 2 * std::cosh(0.8), 1e-14);

  random::Rng rng(81);
  for (int i = 0; i < 20; ++i) {
    const auto p = random::closed_polygon(rng, 6);
    EXPECT_NEAR(f(p.word(), 1, 7), 2.0, 1e-10);
    const auto v = p.vertices_h();
    for (int a = 1; a <= 7; ++a)
      for (int b = a; b <= 7; ++b)
        EXPECT_NEAR(diag_length(p.word(), a, b), oracle::hyperboloid_chord_dist(v[a - 1], v[b - 1]), 1e-11);
  }
  EXPECT_THROW(f(ones, 3, 2), DomainError);
  EXPECT_THROW(f(ones, 1, 6), DomainError);
}

TEST(Bending, ShortDiagonalsStayAccurate) {
  const borel::Word w{borel::BElem(1.0, Complex(1e-9, 0)), borel::BElem(1.0, Complex(-1e-9, 0))};
  EXPECT_NEAR(diag_length(w, 1, 2), 1e-9, 1e-20);
  EXPECT_EQ(diag_length(w, 1, 3), 0.0);
}

TEST(Bending, FieldProperties) {
  EXPECT_LT(bend_field(borel::Word(3), 2).norm(), 1e-15);
  random::Rng rng(82);
  for (int i = 0; i < 50; ++i) {
    const auto w = random::word(rng, 5, 0.4);
    for (int j = 1; j <= 5; ++j) {
      const Mat2 F = bend_field(w, j);
      EXPECT_LT((F + F.adjoint()).norm(), 1e-12 * (1 + F.norm()));
      EXPECT_LT(std::abs(F.trace()), 1e-12 * (1 + F.norm()));
      const double fj = f_fan(w, j);
      EXPECT_NEAR(F.determinant().real(), fj * fj / 4 - 1, 1e-11 * fj * fj);
    }
  }
  const auto p = random::closed_polygon(rng, 5);
  EXPECT_LT(bend_field(p.word(), 5).norm(), 1e-10);
}

TEST(Bending, Su2Exponential) {
  random::Rng rng(83);
  for (int i = 0; i < 50; ++i) {
    const Mat2 X = random::su2_algebra(rng);
    const double t = std::uniform_real_distribution<double>(-3, 3)(rng);
    const Mat2 e = su2_exp(X, t);
    EXPECT_LT((e - oracle::expm(Mat2(t * X))).norm(), 1e-12);
    EXPECT_LT((e * e.adjoint() - Mat2::Identity()).norm(), 1e-13);
    const double w = std::sqrt(X.determinant().real());
    EXPECT_LT((su2_exp(X, kPi / w) + Mat2::Identity()).norm(), 1e-12);
    EXPECT_LT((su2_exp(X, 2 * kPi / w) - Mat2::Identity()).norm(), 1e-12);
  }
  EXPECT_EQ(su2_exp(Mat2::Zero(), 5.0), Mat2::Identity());
  EXPECT_EQ(su2_exp(random::su2_algebra(rng), 0.0), Mat2::Identity());
}

TEST(Bending, FlowBasics) {
  random::Rng rng(84);
  const auto p = random::closed_polygon(rng, 6);
  EXPECT_EQ(word_distance(bend_flow(p.word(), 3, 0.0, true), p.word()), 0.0);
  for (int k = 1; k <= 5; ++k) {
    const auto q = bend_flow(p.word(), k, 0.9, true);
    for (int i = k; i < 6; ++i) {
      EXPECT_EQ(q[i].a(), p.word()[i].a());
      EXPECT_EQ(q[i].z(), p.word()[i].z());
    }
    borel::BElem a, b;
    for (int i = 0; i < k; ++i) a = a * p.word()[i], b = b * q[i];
    EXPECT_LT((a.matrix() - b.matrix()).norm(), 1e-11);
    const auto s0 = p.side_lengths(), s1 = moduli::HPolygon(q).side_lengths();
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(s0[i], s1[i], 1e-11);
    EXPECT_LT(moduli::closure_residual(moduli::HPolygon(q)), 1e-10);
  }
  EXPECT_EQ(commuting_check(p.word(), 2, 4, 0.0, 1.3), 0.0);
  EXPECT_LT(commuting_check(p.word(), 3, 3, 0.4, 1.3), 1e-11);
}

TEST(Bending, DegenerateDiagonal) {
  // b_1 b_2 = I: the partial product is the identity.
  const borel::BElem b(1.3, Complex(0.2, -0.5));
  const borel::Word w{b, b.inverse(), borel::BElem::vertical(0.7)};
  EXPECT_THROW(bend_flow(w, 2, 0.5, true), DomainError);
  EXPECT_THROW(bend_period(w, 2, false), DomainError);
  EXPECT_LT(word_distance(bend_flow(w, 2, 0.5, false), w), 1e-15);
}

TEST(Bending, PlanarPolygonHasZeroAngles) {
  // Vertices in the totally geodesic plane y = 0 of the ball, convex order.
  std::vector<hyp3::HPoint> v{hyp3::HPoint::basepoint()};
  const double rad[] = {0.5, 0.6, 0.55, 0.4};
  for (int k = 0; k < 4; ++k) {
    const double a = 0.4 + 0.45 * k;
    v.push_back(hyp3::HPoint::ball(Vec3(rad[k] * std::sin(a), 0.0, rad[k] * std::cos(a))));
  }
  v.push_back(hyp3::HPoint::basepoint());
  const auto p = moduli::HPolygon::from_vertices(v);
  for (double th : dihedral_angles(p)) EXPECT_NEAR(wrap_pi(th), 0.0, 1e-10);
}

TEST(Bending, FlowMovesOneAngle) {
  random::Rng rng(85);
  for (int i = 0; i < 20; ++i) {
    const int n = 6;
    const auto p = random::closed_polygon(rng, n, 1.2);
    ActionAngle a0;
    try {
      a0 = measure(p);
    } catch (const DomainError&) {
      continue;
    }
    const int k = 2 + i % (n - 3);
    const double t = 0.3 + 0.1 * i;
    const auto a1 = measure(moduli::HPolygon(bend_flow(p.word(), k, t, true)));
    for (int m = 1; m <= n - 3; ++m) {
      EXPECT_NEAR(a1.lengths[m - 1], a0.lengths[m - 1], 1e-10);
      const double expect = m == k - 1 ? 2 * t : 0.0;
      EXPECT_NEAR(wrap_pi(a1.angles[m - 1] - a0.angles[m - 1] - expect), 0.0, 1e-9) << "m=" << m << " k=" << k;
    }
  }
}

TEST(Bending, FlowRotatesAboutTheDiagonal) {
  random::Rng rng(86);
  const auto p = random::closed_polygon(rng, 6, 1.2);
  const auto v0 = p.vertices();
  const int k = 4;
  const Vec3 c = v0[k].to_ball().normalized();
  for (double t : {0.2, 0.7, 1.9}) {
    const auto v1 = moduli::HPolygon(bend_flow(p.word(), k, t, true)).vertices();
    const Mat2 g = hyp3::rotation_about_axis(hyp3::BoundaryPoint(Vec3(-c)), hyp3::BoundaryPoint(c), 2 * t);
    for (int m = 0; m <= 6; ++m) {
      const auto expect = m < k ? hyp3::apply_isometry(g, v0[m]) : v0[m];
      EXPECT_LT(hyp3::dist(expect, v1[m]), 1e-9);
    }
  }
}

TEST(Bending, Periods) {
  random::Rng rng(87);
  const auto w = random::word(rng, 5, 0.5);
  for (int k = 1; k <= 5; ++k) {
    const double fk = f_fan(w, k);
    EXPECT_NEAR(bend_period(w, k, false), 2 * kPi / std::sqrt(fk * fk / 4 - 1), 1e-12);
    EXPECT_DOUBLE_EQ(bend_period(w, k, true), 2 * kPi);
    for (bool norm : {false, true})
      EXPECT_LT(word_distance(bend_flow(w, k, bend_period(w, k, norm), norm), w), 1e-9);
    // Half period: exp(t F) = -I acts trivially.
    EXPECT_LT(word_distance(bend_flow(w, k, kPi, true), w), 1e-9);
  }
}

TEST(Bending, MomentumPolyhedron) {
  const moduli::Weights r({1, 1, 1, 1.5});
  const double in[] = {1.0}, out[] = {2.1}, low[] = {0.4};
  EXPECT_TRUE(momentum_polyhedron_contains(r, in));
  EXPECT_FALSE(momentum_polyhedron_contains(r, out));
  EXPECT_FALSE(momentum_polyhedron_contains(r, low));
  EXPECT_EQ(polyhedron_box(r), std::vector<double>{2.0});
  const auto t = fan_triangle(r, in, 2);
  EXPECT_EQ(t, (std::array<double, 3>{1.0, 1.0, 1.5}));
}

TEST(Bending, SamplingIsDeterministicAndUniform) {
  const moduli::Weights r({1, 1, 1, 1.5});
  const auto a = sample_polyhedron(r, 4000, 5), b = sample_polyhedron(r, 4000, 5);
  EXPECT_EQ(a, b);
  // The polytope is the interval (0.5, 2): mean 1.25, variance 1.5^2 / 12.
  double mean = 0.0;
  for (const auto& l : a) {
    EXPECT_TRUE(momentum_polyhedron_contains(r, l, 1e-9));
    mean += l[0];
  }
  mean /= a.size();
  EXPECT_LT(std::abs(mean - 1.25), 3 * std::sqrt(1.5 * 1.5 / 12 / a.size()));
  EXPECT_NE(sample_polyhedron(r, 3, 6), sample_polyhedron(r, 3, 5));
}

TEST(Bending, ReconstructRoundTrip) {
  random::Rng rng(88);
  for (int n : {4, 5, 6, 8}) {
    std::vector<double> rv;
    for (int i = 0; i < n; ++i) rv.push_back(std::uniform_real_distribution<double>(0.5, 1.5)(rng));
    const moduli::Weights r(rv);
    for (const auto& l : sample_polyhedron(r, 20, 100 + n)) {
      ActionAngle aa{l, {}};
      for (int m = 0; m < n - 3; ++m) aa.angles.push_back(std::uniform_real_distribution<double>(0, 2 * kPi)(rng));
      const auto p = reconstruct(r, aa);
      EXPECT_LT(moduli::closure_residual(p), 1e-9);
      const auto s = p.side_lengths();
      for (int i = 0; i < n; ++i) EXPECT_NEAR(s[i], r[i], 1e-9);
      const auto back = measure(p);
      for (int m = 0; m < n - 3; ++m) {
        EXPECT_NEAR(back.lengths[m], l[m], 1e-9);
        EXPECT_NEAR(wrap_pi(back.angles[m] - aa.angles[m]), 0.0, 1e-9);
      }
    }
  }
}

TEST(Bending, MeasureThenReconstructUpToRotation) {
  random::Rng rng(89);
  for (int i = 0; i < 20; ++i) {
    const auto p = random::closed_polygon(rng, 6, 1.2);
    const auto aa = measure(p);
    const auto q = reconstruct(moduli::Weights(p.side_lengths()), aa);
    // Same vertex distances from * and between each other.
    const auto a = p.vertices_h(), b = q.vertices_h();
    for (std::size_t x = 0; x < a.size(); ++x)
      for (std::size_t y = x + 1; y < a.size(); ++y)
        EXPECT_NEAR(hyp3::dist_h(a[x], a[y]), hyp3::dist_h(b[x], b[y]), 1e-9);
  }
}

TEST(Bending, PlanarReconstruction) {
  const moduli::Weights r({1, 1.2, 0.9, 1.1});
  const auto p = reconstruct(r, {{1.3}, {0.0}});
  // All vertices in the plane spanned by the first two directions at *.
  const auto v = p.vertices_h();
  const Vec3 normal = v[1].tail<3>().cross(v[2].tail<3>()).normalized();
  for (const auto& x : v) EXPECT_LT(std::abs(normal.dot(x.tail<3>())), 1e-9);
  EXPECT_THROW(reconstruct(r, {{0.2}, {0.0}}), DomainError);
  EXPECT_THROW(reconstruct(r, {{1.3}, {}}), DomainError);
}

TEST(Bending, DegenerateTriangleRejected) {
  random::Rng rng(90);
  // Vertex 3 on the geodesic from * to vertex 2's extension: triangle 1 flat.
  std::vector<hyp3::HPoint> v{hyp3::HPoint::basepoint(), hyp3::HPoint::ball(Vec3(0, 0, 0.3)),
                              hyp3::HPoint::ball(Vec3(0, 0, 0.6)), hyp3::HPoint::ball(Vec3(0.4, 0, 0.2)),
                              hyp3::HPoint::ball(Vec3(0.1, 0.5, 0)), hyp3::HPoint::basepoint()};
  EXPECT_THROW(measure(moduli::HPolygon::from_vertices(v)), DomainError);
}

TEST(Bending, TorusActionCommutes) {
  random::Rng rng(91);
  for (int i = 0; i < 20; ++i) {
    const auto p = random::closed_polygon(rng, 7, 1.2);
    EXPECT_LT(commuting_check(p.word(), 2 + i % 4, 2 + (i + 1) % 4, 0.7, -1.9), 1e-9);
  }
}

TEST(Bending, LengthJacobianRank) {
  random::Rng rng(92);
  for (int n : {4, 5, 7}) {
    const auto w = random::word(rng, n, 0.5);
    const int rank = fan_length_rank(w);
    RecordProperty("rank_n" + std::to_string(n), rank);
    EXPECT_EQ(rank, n - 3);
  }
}
