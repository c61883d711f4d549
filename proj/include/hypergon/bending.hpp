#pragma once

// Bending Hamiltonians f_{ij}, their fields and closed-form flows, diagonal
// lengths and dihedral angles of the fan triangulation, the momentum
// polyhedron and action-angle reconstruction.
//
// Diagonals are pairs of vertex indices (i, j), 1-based, with vertex 1 = *
// and vertex n + 1 = vertex 1 for closed polygons. Fan diagonal m
// (m = 1..n-3) joins vertex 1 to vertex m + 2.

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hypergon/moduli.hpp"

namespace hypergon::bending {

using Diagonal = std::pair<int, int>;

/// Combinatorial chord test on the convex n-gon; a shared endpoint does not
/// count as an intersection.
bool diagonals_nonintersecting(Diagonal d1, Diagonal d2, int n);

class Triangulation {
 public:
  /// Throws DomainError for invalid chords, crossings or more than n - 3
  /// diagonals.
  Triangulation(int n, std::vector<Diagonal> diagonals);
  static Triangulation fan(int n);

  int n() const { return n_; }
  const std::vector<Diagonal>& diagonals() const { return diagonals_; }

 private:
  int n_;
  std::vector<Diagonal> diagonals_;
};

/// Fan lengths (geometric, arccosh(f/2)) and angles theta = pi - theta_hat in
/// [0, 2 pi).
struct ActionAngle {
  std::vector<double> lengths;
  std::vector<double> angles;
};

/// tr(P P^*) with P = g_i ... g_{j-1}; 2 for i == j.
double f(std::span<const Mat2> word, int i, int j);
double f(std::span<const borel::BElem> word, int i, int j);
/// f_j = f(b, 1, j + 1)
inline double f_fan(std::span<const borel::BElem> word, int j) { return f(word, 1, j + 1); }

/// arccosh(f / 2) through |p11 - conj p22|^2 + |p12 + conj p21|^2 = f - 2,
/// which keeps short diagonals accurate.
double diag_length(std::span<const Mat2> word, int i, int j);
double diag_length(std::span<const borel::BElem> word, int i, int j);
/// 2 arccosh(f / 2)
inline double diag_length_doubled(std::span<const borel::BElem> word, int i, int j) {
  return 2.0 * diag_length(word, i, j);
}

/// F_j = i [P P^*]^0 with P = b_1 ... b_j.
Mat2 bend_field(std::span<const borel::BElem> word, int j);

/// cos(t sqrt(det X)) I + sin(t sqrt(det X)) / sqrt(det X) X for X in su(2).
Mat2 su2_exp(const Mat2& X, double t);

/// Dresses b_1..b_k by exp(t F_k), scaled by 1 / sqrt(f_k^2/4 - 1) when
/// normalized (the Hamiltonian flow of 2 arccosh(f_k / 2)).
borel::Word bend_flow(std::span<const borel::BElem> word, int k, double t, bool normalized);
/// 2 pi / sqrt(f_k^2/4 - 1), or 2 pi when normalized.
double bend_period(std::span<const borel::BElem> word, int k, bool normalized);

/// max_i (|a_i - a'_i| + |z_i - z'_i|)
double word_distance(std::span<const borel::BElem> a, std::span<const borel::BElem> b);

/// Distance between the words obtained by applying the normalized flows k1
/// then k2 and k2 then k1.
double commuting_check(std::span<const borel::BElem> word, int k1, int k2, double s, double t);

/// theta_hat of fan diagonal m from hyperboloid vertices (vertex 0 = *):
/// the right-handed angle about the diagonal from triangle m to triangle
/// m + 1, in (-pi, pi].
double fan_theta_hat(std::span<const Vec4> vertices, int m);
/// theta = pi - theta_hat mod 2 pi
double fan_theta(std::span<const Vec4> vertices, int m);

/// Throws DomainError("degenerate triangle m") when a fan triangle has
/// triangle-inequality slack <= tol.
std::vector<double> dihedral_angles(const moduli::HPolygon& p, double tol = 1e-9);
ActionAngle measure(const moduli::HPolygon& p, double tol = 1e-9);

/// Numerical rank of the Jacobian of the fan lengths with respect to the
/// letter coordinates (log a, Re z, Im z); n - 3 at generic points.
int fan_length_rank(std::span<const borel::BElem> word, double h = 1e-6, double tol = 1e-6);

/// Sides (a, b, c) of fan triangle m = 1..n-2 for given r and fan lengths.
std::array<double, 3> fan_triangle(const moduli::Weights& r, std::span<const double> lengths, int m);

/// All 3(n - 2) triangle inequalities hold with slack >= `slack`.
bool momentum_polyhedron_contains(const moduli::Weights& r, std::span<const double> lengths, double slack = 0.0);

/// Upper bounds min(r_1 + .. + r_{m+1}, r_{m+2} + .. + r_n) of the box.
std::vector<double> polyhedron_box(const moduli::Weights& r);

/// Rejection sampling in the box with an mt19937_64 stream; every returned
/// point has slack > `slack`.
std::vector<std::vector<double>> sample_polyhedron(const moduli::Weights& r, int count, std::uint64_t seed,
                                                   double slack = 1e-9);

/// Glue the fan triangles; the lengths must be strictly interior.
moduli::HPolygon reconstruct(const moduli::Weights& r, const ActionAngle& aa);

}  // namespace hypergon::bending
