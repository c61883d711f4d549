#pragma once

// Side-length vectors, based polygons in H^3 and E^3, the cone of realizable
// side lengths and its walls.

#include <optional>
#include <span>
#include <vector>

#include "hypergon/borel.hpp"

namespace hypergon::moduli {

/// Positive side lengths r_1, ..., r_n.
class Weights {
 public:
  Weights() = default;
  /// Throws DomainError for an empty list or a non-positive entry.
  explicit Weights(std::vector<double> r);

  std::size_t size() const { return r_.size(); }
  double operator[](std::size_t i) const { return r_[i]; }
  const std::vector<double>& values() const { return r_; }
  double total() const;
  Weights scaled(double t) const;

 private:
  std::vector<double> r_;
};

/// A based n-gon in H^3 stored as its word in B^n. Vertex 0 is *.
class HPolygon {
 public:
  HPolygon() = default;
  explicit HPolygon(borel::Word word) : word_(std::move(word)) {}
  /// Builds the word from n + 1 vertices (the last one closes the polygon
  /// when it equals *).
  static HPolygon from_vertices(std::span<const hyp3::HPoint> vertices);

  std::size_t size() const { return word_.size(); }
  const borel::Word& word() const { return word_; }
  /// n + 1 vertices (hyperboloid model).
  std::vector<hyp3::HPoint> vertices() const { return borel::phi_map(word_); }
  std::vector<Vec4> vertices_h() const;
  std::vector<double> side_lengths() const;

 private:
  borel::Word word_;
};

/// An n-gon in E^3 given by its edge vectors.
struct EPolygon {
  std::vector<Vec3> edges;

  std::vector<double> side_lengths() const;
  /// Partial sums starting at the origin, n + 1 points.
  std::vector<Vec3> vertices() const;
};

/// r_i <= sum of the others for every i (closed condition, no tolerance).
bool in_cone(const Weights& r);

/// A balanced partition sum_I r = sum_J r with |I|, |J| >= 2; zero-based
/// indices, I contains index 0.
struct WallWitness {
  std::vector<int> I;
  std::vector<int> J;
  double imbalance = 0.0;
};

/// Exhaustive search over the 2^{n-1} partitions. Throws DomainError
/// ("enumeration limit") for n > 24.
std::optional<WallWitness> wall_witness(const Weights& r, double tol);
inline bool on_wall(const Weights& r, double tol) { return wall_witness(r, tol).has_value(); }

/// Distance from * to (b_1 ... b_n) . *. A product of B elements lies in B,
/// so it fixes * only when it is the identity; the framing closes with the
/// translation part.
double closure_residual(const HPolygon& p);

/// True when every vertex lies within `tol` of the geodesic through the two
/// most distant vertices (or all vertices coincide).
bool is_degenerate(const HPolygon& p, double tol);
bool vertices_degenerate(std::span<const Vec4> vertices, double tol);

/// Distance from x to the geodesic through p and q (all hyperboloid vectors).
double distance_to_geodesic(const Vec4& x, const Vec4& p, const Vec4& q);

/// |sum of edges|
double euclidean_closure_residual(const EPolygon& p);

}  // namespace hypergon::moduli
