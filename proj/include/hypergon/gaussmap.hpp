#pragma once

// Gauss maps of hyperbolic and Euclidean polygons, stability of weighted
// configurations on S^2, the closing contraction f_{r,xi} and its fixed
// point, and the conformal center of mass.

#include <atomic>
#include <optional>
#include <span>
#include <vector>

#include "hypergon/moduli.hpp"

namespace hypergon::gaussmap {

struct Configuration {
  std::vector<hyp3::BoundaryPoint> points;
  moduli::Weights weights;

  std::size_t size() const { return points.size(); }
};

/// Throws DomainError when the point and weight counts differ.
Configuration make_configuration(std::vector<hyp3::BoundaryPoint> points, moduli::Weights weights);

enum class Stability { Stable, NiceSemistable, SemistableNotNice, Unstable };
const char* stability_name(Stability s);

struct StabilityClass {
  Stability kind = Stability::Stable;
  /// Clusters of coincident points (zero-based indices), heaviest first.
  std::vector<std::vector<int>> clusters;
  std::vector<double> cluster_weights;
  /// Index into `clusters` of the heaviest cluster; the witness whenever the
  /// configuration is not stable.
  int heaviest = 0;
};

struct StabilityOptions {
  double angular_tol = 1e-9;
  /// Relative to the total weight.
  double weight_tol = 1e-10;
};

StabilityClass classify_stability(const Configuration& c, const StabilityOptions& opt = {});
inline bool is_stable(const Configuration& c, const StabilityOptions& opt = {}) {
  return classify_stability(c, opt).kind == Stability::Stable;
}

/// Endpoints of the forward extensions of the edges. Throws DomainError for a
/// zero-length edge.
Configuration gauss_h(const moduli::HPolygon& p);
Configuration gauss_h_vertices(std::span<const Vec4> vertices);

/// f_{t r, xi}(z): the geodesic flows applied in index order 1..n.
Vec4 contraction_map_h(const Configuration& c, const Vec4& z, double scale = 1.0);
hyp3::HPoint contraction_map(const Configuration& c, const hyp3::HPoint& z, double scale = 1.0);

struct FixedPointOptions {
  double tol = 1e-11;
  long max_iterations = 1'000'000;
  double scale = 1.0;
  bool anderson = false;
  std::optional<Vec4> start;
  /// Polled once per iteration; a set flag aborts with ConvergenceError.
  const std::atomic<bool>* cancel = nullptr;
};

struct SolverReport {
  /// d(x, f(x)) at the returned point.
  double residual = 0.0;
  long iterations = 0;
  /// Largest observed ratio d(f(x_{m+1}), f(x_m)) / d(x_{m+1}, x_m) along
  /// the Picard orbit; an empirical Lipschitz bound.
  double contraction_factor = 0.0;
  /// Every iterate satisfied beta_i(x_m) <= beta_i(x*) + d(x_0, x*), where
  /// beta_i = -b(., xi_i) measures depth inside the horoballs at xi_i.
  bool confined = true;
};

struct FixedPoint {
  hyp3::HPoint point;
  SolverReport report;
};

/// Throws DomainError("configuration not stable") and ConvergenceError.
FixedPoint fixed_point(const Configuration& c, const FixedPointOptions& opt = {});

struct InverseGauss {
  moduli::HPolygon polygon;
  /// The B element carrying * to x(r, xi); the polygon is the translate of
  /// the solver output by its inverse.
  borel::BElem basing;
  SolverReport report;
};

InverseGauss inverse_gauss_h(const Configuration& c, const FixedPointOptions& opt = {});

struct CenterOptions {
  double tol = 1e-10;
  int max_iterations = 200;
};

struct Center {
  hyp3::HPoint point;
  double gradient_norm = 0.0;
  int iterations = 0;
};

/// b_nu(x) = sum r_i b(x, xi_i)
double averaged_busemann(const Configuration& c, const Vec3& ball);
/// Euclidean gradient and Hessian of b_nu in ball coordinates.
Vec3 averaged_busemann_gradient(const Configuration& c, const Vec3& ball);
Eigen::Matrix3d averaged_busemann_hessian(const Configuration& c, const Vec3& ball);
/// Norm of the Riemannian gradient.
double averaged_busemann_gradient_norm(const Configuration& c, const Vec3& ball);

/// Damped Newton, recentred at the origin of the ball after every step.
/// DomainError for a non-stable configuration.
Center conformal_center(const Configuration& c, const CenterOptions& opt = {});

std::vector<hyp3::HPoint> shrink_curve(const Configuration& c, std::span<const double> ts,
                                       const FixedPointOptions& opt = {});

struct ShrinkReport {
  std::vector<double> t;
  std::vector<double> distance;
  hyp3::HPoint center;
  bool monotone = true;
  /// distance / t at each t.
  std::vector<double> rate;
  /// max/min of the rates over the list; 1 for exactly linear decay.
  double rate_spread = 1.0;
};

ShrinkReport shrink_limit_check(const Configuration& c, std::span<const double> ts = {},
                                const FixedPointOptions& opt = {});

/// Normalized edge directions with the edge lengths as weights.
Configuration gauss_e(const moduli::EPolygon& p);

struct InverseGaussE {
  moduli::EPolygon polygon;
  /// Isometry moving C(nu) to the ball origin; the edges are r_i g.xi_i.
  Mat2 normalization;
};

InverseGaussE inverse_gauss_e(const Configuration& c, const CenterOptions& opt = {});

/// Closed Euclidean polygon to closed hyperbolic polygon with the same side
/// lengths and Gauss configuration up to PSL2(C). Rejects weights on a wall.
moduli::HPolygon transfer_e_to_h(const moduli::EPolygon& p, const FixedPointOptions& opt = {});
moduli::EPolygon transfer_h_to_e(const moduli::HPolygon& p);

}  // namespace hypergon::gaussmap
