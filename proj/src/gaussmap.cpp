#include "hypergon/gaussmap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

namespace hypergon::gaussmap {

using hyp3::BoundaryPoint;
using hyp3::HPoint;

Configuration make_configuration(std::vector<BoundaryPoint> points, moduli::Weights weights) {
  if (points.size() != weights.size()) throw DomainError("configuration needs one weight per point");
  return Configuration{std::move(points), std::move(weights)};
}

const char* stability_name(Stability s) {
  switch (s) {
    case Stability::Stable:
      return "stable";
    case Stability::NiceSemistable:
      return "nice_semistable";
    case Stability::SemistableNotNice:
      return "semistable_not_nice";
    case Stability::Unstable:
      return "unstable";
  }
  return "unstable";
}

// ------------------------------------------------------------- stability

StabilityClass classify_stability(const Configuration& c, const StabilityOptions& opt) {
  const int n = static_cast<int>(c.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (hyp3::angular_distance(c.points[i].unit(), c.points[j].unit()) <= opt.angular_tol)
        parent[find(i)] = find(j);

  std::vector<std::vector<int>> groups(n);
  for (int i = 0; i < n; ++i) groups[find(i)].push_back(i);

  StabilityClass out;
  for (auto& g : groups) {
    if (g.empty()) continue;
    double w = 0.0;
    for (int i : g) w += c.weights[i];
    out.clusters.push_back(std::move(g));
    out.cluster_weights.push_back(w);
  }
  // Heaviest first, ties by smallest index.
  std::vector<std::size_t> order(out.clusters.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return out.cluster_weights[a] > out.cluster_weights[b]; });
  std::vector<std::vector<int>> clusters;
  std::vector<double> weights;
  for (auto k : order) {
    clusters.push_back(out.clusters[k]);
    weights.push_back(out.cluster_weights[k]);
  }
  out.clusters = std::move(clusters);
  out.cluster_weights = std::move(weights);
  out.heaviest = 0;

  const double total = c.weights.total();
  const double half = 0.5 * total, slack = opt.weight_tol * total;
  const double top = out.cluster_weights.empty() ? 0.0 : out.cluster_weights.front();
  if (top < half - slack)
    out.kind = Stability::Stable;
  else if (top > half + slack)
    out.kind = Stability::Unstable;
  else
    // The complement of a half-weight cluster is nice only when it is itself
    // a single cluster.
    out.kind = out.clusters.size() == 2 ? Stability::NiceSemistable : Stability::SemistableNotNice;
  return out;
}

// ------------------------------------------------------------ Gauss map

Configuration gauss_h_vertices(std::span<const Vec4> v) {
  std::vector<BoundaryPoint> points;
  std::vector<double> lengths;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double d = hyp3::dist_h(v[i], v[i + 1]);
    if (!(d > 1e-14)) throw DomainError("zero-length edge " + std::to_string(i + 1));
    points.emplace_back(hyp3::ideal_endpoint_h(v[i], v[i + 1]));
    lengths.push_back(d);
  }
  return make_configuration(std::move(points), moduli::Weights(std::move(lengths)));
}

Configuration gauss_h(const moduli::HPolygon& p) {
  const auto v = p.vertices_h();
  return gauss_h_vertices(v);
}

Vec4 contraction_map_h(const Configuration& c, const Vec4& z, double scale) {
  Vec4 x = z;
  for (std::size_t i = 0; i < c.size(); ++i) x = hyp3::geodesic_flow_h(x, c.points[i].unit(), scale * c.weights[i]);
  return x;
}

HPoint contraction_map(const Configuration& c, const HPoint& z, double scale) {
  return HPoint::in_model(contraction_map_h(c, z.to_hyperboloid(), scale), z.model());
}

// ----------------------------------------------------------- fixed point

namespace {

std::vector<double> depths(const Configuration& c, const Vec4& x) {
  std::vector<double> out(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) out[i] = -hyp3::busemann_h(x, c.points[i].unit());
  return out;
}

// Type-II Anderson mixing on the spatial hyperboloid coordinates.
class Anderson {
 public:
  explicit Anderson(int depth) : depth_(depth) {}

  Eigen::Vector3d step(const Eigen::Vector3d& x, const Eigen::Vector3d& fx) {
    const Eigen::Vector3d g = fx - x;
    if (have_prev_) {
      dx_.push_back(x - prev_x_);
      dg_.push_back(g - prev_g_);
      if (static_cast<int>(dx_.size()) > depth_) {
        dx_.erase(dx_.begin());
        dg_.erase(dg_.begin());
      }
    }
    prev_x_ = x;
    prev_g_ = g;
    have_prev_ = true;
    if (dx_.empty()) return fx;
    const int m = static_cast<int>(dx_.size());
    Eigen::MatrixXd DG(3, m), DX(3, m);
    for (int k = 0; k < m; ++k) DG.col(k) = dg_[k], DX.col(k) = dx_[k];
    const Eigen::VectorXd gamma = DG.completeOrthogonalDecomposition().solve(g);
    return x + g - (DX + DG) * gamma;
  }

  void reset() {
    dx_.clear();
    dg_.clear();
    have_prev_ = false;
  }

 private:
  int depth_;
  bool have_prev_ = false;
  Eigen::Vector3d prev_x_, prev_g_;
  std::vector<Eigen::Vector3d> dx_, dg_;
};

Vec4 lift(const Eigen::Vector3d& s) {
  Vec4 h;
  h << 0.0, s;
  return hyp3::normalize_h(h);
}

}  // namespace

FixedPoint fixed_point(const Configuration& c, const FixedPointOptions& opt) {
  if (!is_stable(c)) throw DomainError("configuration not stable");
  const Vec4 x0 = opt.start ? hyp3::normalize_h(*opt.start) : Vec4(1, 0, 0, 0);

  std::vector<double> high = depths(c, x0);
  auto record = [&](const Vec4& x) {
    const auto d = depths(c, x);
    for (std::size_t i = 0; i < d.size(); ++i) high[i] = std::max(high[i], d[i]);
  };

  SolverReport rep;
  Vec4 x = x0;
  Vec4 fx = contraction_map_h(c, x, opt.scale);
  double r = hyp3::dist_h(x, fx);
  Anderson accel(5);
  long it = 0;
  while (r >= opt.tol) {
    if (it >= opt.max_iterations)
      throw ConvergenceError("fixed point: iteration budget exhausted, residual " + std::to_string(r), r);
    if (opt.cancel && opt.cancel->load()) throw ConvergenceError("fixed point: cancelled", r);
    ++it;
    if (opt.anderson) {
      const Vec4 cand = lift(accel.step(x.tail<3>(), fx.tail<3>()));
      const Vec4 fc = contraction_map_h(c, cand, opt.scale);
      const double rc = hyp3::dist_h(cand, fc);
      if (rc < r) {
        x = cand, fx = fc, r = rc;
        record(x);
        continue;
      }
      // Mixing did not help: restart the history and take a plain step.
      accel.reset();
    }
    const Vec4 next = fx;
    const Vec4 fnext = contraction_map_h(c, next, opt.scale);
    const double rn = hyp3::dist_h(next, fnext);
    // With x_{m+1} = f(x_m), rn / r is the Lipschitz ratio of f on the pair
    // (x_m, x_{m+1}). Ratios at roundoff level say nothing.
    if (r > 1e-10 && rn > 1e-10) rep.contraction_factor = std::max(rep.contraction_factor, rn / r);
    x = next, fx = fnext, r = rn;
    record(x);
  }

  const auto final_depth = depths(c, x);
  const double radius = hyp3::dist_h(x0, x);
  for (std::size_t i = 0; i < high.size(); ++i)
    if (high[i] > final_depth[i] + radius + 1e-9) rep.confined = false;
  rep.residual = r;
  rep.iterations = it;
  return FixedPoint{HPoint::hyperboloid(x), rep};
}

InverseGauss inverse_gauss_h(const Configuration& c, const FixedPointOptions& opt) {
  const FixedPoint fp = fixed_point(c, opt);
  std::vector<Vec4> v{fp.point.to_hyperboloid()};
  for (std::size_t i = 0; i < c.size(); ++i)
    v.push_back(hyp3::geodesic_flow_h(v.back(), c.points[i].unit(), opt.scale * c.weights[i]));
  // Translating by beta^{-1} sends from_point(x_i) to beta^{-1} from_point(x_i),
  // so the letters from_point(x_{i-1})^{-1} from_point(x_i) need no translation.
  borel::Word word;
  borel::BElem prev = borel::from_point_h(v[0]);
  const borel::BElem basing = prev;
  for (std::size_t i = 1; i < v.size(); ++i) {
    const borel::BElem cur = borel::from_point_h(v[i]);
    word.push_back(prev.inverse() * cur);
    prev = cur;
  }
  return InverseGauss{moduli::HPolygon(std::move(word)), basing, fp.report};
}

// ------------------------------------------------------ conformal center

double averaged_busemann(const Configuration& c, const Vec3& v) {
  const double s = 1.0 - v.squaredNorm();
  double out = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i)
    out += c.weights[i] * (std::log((c.points[i].unit() - v).squaredNorm()) - std::log(s));
  return out;
}

Vec3 averaged_busemann_gradient(const Configuration& c, const Vec3& v) {
  const double s = 1.0 - v.squaredNorm();
  Vec3 g = Vec3::Zero();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vec3 d = v - c.points[i].unit();
    g += c.weights[i] * (2.0 * d / d.squaredNorm() + 2.0 * v / s);
  }
  return g;
}

Eigen::Matrix3d averaged_busemann_hessian(const Configuration& c, const Vec3& v) {
  const double s = 1.0 - v.squaredNorm();
  const Eigen::Matrix3d I = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const Vec3 d = v - c.points[i].unit();
    const double q = d.squaredNorm();
    h += c.weights[i] * (2.0 * I / q - 4.0 * d * d.transpose() / (q * q) + 2.0 * I / s +
                         4.0 * v * v.transpose() / (s * s));
  }
  return h;
}

double averaged_busemann_gradient_norm(const Configuration& c, const Vec3& v) {
  return 0.5 * (1.0 - v.squaredNorm()) * averaged_busemann_gradient(c, v).norm();
}

Center conformal_center(const Configuration& c, const CenterOptions& opt) {
  if (!is_stable(c)) throw DomainError("configuration not stable");
  // The iterate x = frame . * is always moved back to the origin: b_nu changes
  // by a constant under an isometry, so the Newton step is taken where the
  // ball coordinates are best conditioned.
  borel::BElem frame;
  Configuration local = c;
  auto recenter = [&] {
    const Mat2 inv = frame.inverse().matrix();
    for (std::size_t i = 0; i < c.size(); ++i) local.points[i] = hyp3::apply_boundary(inv, c.points[i]);
  };
  const Vec3 origin = Vec3::Zero();
  double gn = averaged_busemann_gradient_norm(local, origin);
  int it = 0;
  while (gn >= opt.tol) {
    if (it >= opt.max_iterations) throw ConvergenceError("conformal center: iteration budget exhausted", gn);
    ++it;
    const Vec3 g = averaged_busemann_gradient(local, origin);
    const Eigen::LLT<Eigen::Matrix3d> llt(averaged_busemann_hessian(local, origin));
    Vec3 step = llt.info() == Eigen::Success ? Vec3(-llt.solve(g)) : Vec3(-g);
    if (!(step.dot(g) < 0.0)) step = -g;
    // Keep each step inside a hyperbolic ball of radius ~2.
    if (step.norm() > 0.75) step *= 0.75 / step.norm();

    // Merit: the Riemannian gradient norm. Its derivative along a Newton
    // step is -2 gn^2, and unlike b_nu it does not flatten into roundoff
    // near the minimum.
    double alpha = 1.0;
    for (int k = 0;; ++k, alpha *= 0.5) {
      if (k == 60) throw ConvergenceError("conformal center: line search failed", gn);
      if (averaged_busemann_gradient_norm(local, alpha * step) < (1.0 - 1e-4 * alpha) * gn) break;
    }
    frame = frame * borel::from_point(HPoint::ball(Vec3(alpha * step)));
    recenter();
    gn = averaged_busemann_gradient_norm(local, origin);
  }
  return Center{HPoint::from_hermitian(frame.hermitian(), hyp3::Model::Hyperboloid), gn, it};
}

std::vector<HPoint> shrink_curve(const Configuration& c, std::span<const double> ts, const FixedPointOptions& opt) {
  const Center center = conformal_center(c);
  std::vector<HPoint> out;
  for (double t : ts) {
    if (!(t > 0.0 && t <= 1.0)) throw DomainError("shrink parameter must lie in (0, 1]");
    FixedPointOptions o = opt;
    o.scale = t;
    if (!o.start) o.start = center.point.to_hyperboloid();
    out.push_back(fixed_point(c, o).point);
  }
  return out;
}

ShrinkReport shrink_limit_check(const Configuration& c, std::span<const double> ts, const FixedPointOptions& opt) {
  static const double defaults[] = {0.5, 0.05, 0.005};
  if (ts.empty()) ts = defaults;
  ShrinkReport rep;
  rep.center = conformal_center(c).point;
  const auto curve = shrink_curve(c, ts, opt);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    rep.t.push_back(ts[k]);
    rep.distance.push_back(hyp3::dist(curve[k], rep.center));
    rep.rate.push_back(rep.distance.back() / ts[k]);
    if (k > 0 && rep.distance[k] > rep.distance[k - 1]) rep.monotone = false;
  }
  const auto [lo, hi] = std::minmax_element(rep.rate.begin(), rep.rate.end());
  rep.rate_spread = *lo > 0.0 ? *hi / *lo : (*hi > 0.0 ? INFINITY : 1.0);
  return rep;
}

// ------------------------------------------------------------- Euclidean

Configuration gauss_e(const moduli::EPolygon& p) {
  std::vector<BoundaryPoint> points;
  std::vector<double> lengths;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    const double len = p.edges[i].norm();
    if (!(len > 0.0)) throw DomainError("zero-length edge " + std::to_string(i + 1));
    points.emplace_back(p.edges[i]);
    lengths.push_back(len);
  }
  return make_configuration(std::move(points), moduli::Weights(std::move(lengths)));
}

InverseGaussE inverse_gauss_e(const Configuration& c, const CenterOptions& opt) {
  const Center center = conformal_center(c, opt);
  const Mat2 g = borel::from_point(center.point).inverse().matrix();
  InverseGaussE out;
  out.normalization = g;
  for (std::size_t i = 0; i < c.size(); ++i)
    out.polygon.edges.push_back(c.weights[i] * hyp3::apply_boundary(g, c.points[i]).unit());
  return out;
}

namespace {

void require_off_wall(const moduli::Weights& r) {
  if (moduli::on_wall(r, 1e-9)) throw DomainError("side lengths lie on a wall");
}

}  // namespace

moduli::HPolygon transfer_e_to_h(const moduli::EPolygon& p, const FixedPointOptions& opt) {
  const Configuration c = gauss_e(p);
  if (moduli::euclidean_closure_residual(p) > 1e-9 * std::max(1.0, c.weights.total()))
    throw DomainError("polygon not closed");
  require_off_wall(c.weights);
  return inverse_gauss_h(c, opt).polygon;
}

moduli::EPolygon transfer_h_to_e(const moduli::HPolygon& p) {
  if (moduli::closure_residual(p) > 1e-9) throw DomainError("polygon not closed");
  const Configuration c = gauss_h(p);
  require_off_wall(c.weights);
  return inverse_gauss_e(c).polygon;
}

}  // namespace hypergon::gaussmap
