#include "hypergon/verify.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <thread>

#include "hypergon/lu.hpp"
#include "hypergon/poisson.hpp"
#include "hypergon/random.hpp"

namespace hypergon::verify {

namespace {

constexpr double kPi = std::numbers::pi;

struct Sample {
  double value = 0.0;
  double fd_error = 0.0;
  std::vector<std::pair<std::string, double>> extra;
};

using SampleFn = std::function<Sample(random::Rng&, const Options&, int index)>;

struct Suite {
  std::string identity;
  SampleFn sample;
  double tol;
  double fd_tol;
  /// Default sample count when the caller does not override it.
  int fixed_samples = 0;
};

random::Rng sample_rng(std::uint64_t seed, int i) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(i)};
  return random::Rng(seq);
}

Sample brackets_commute(random::Rng& rng, const Options& opt, int) {
  const auto w = random::word(rng, opt.n, 0.5);
  // f grows to ~1e4 on these words; at h = 1e-4 roundoff dominates the
  // difference quotients, at 1e-3 the truncation error is still far below.
  const poisson::FdOptions fd{1e-3};
  Sample s;
  for (int j = 1; j <= opt.n; ++j)
    for (int k = j + 1; k <= opt.n; ++k) {
      const auto b = poisson::sklyanin_bracket(poisson::field_f(1, j + 1), poisson::field_f(1, k + 1), w, fd);
      s.value = std::max(s.value, std::abs(b.value));
      s.fd_error = std::max(s.fd_error, b.error);
    }
  return s;
}

Sample length_brackets(random::Rng& rng, const Options& opt, int) {
  std::vector<bending::Diagonal> diags;
  for (int i = 1; i <= opt.n; ++i)
    for (int j = i + 2; j <= opt.n; ++j)
      if (!(i == 1 && j == opt.n)) diags.emplace_back(i, j);
  // arccosh(f / 2) is not differentiable at a zero-length diagonal.
  auto short_diagonal = [&](const moduli::HPolygon& q) {
    for (const auto& [i, j] : diags)
      if (bending::diag_length(q.word(), i, j) < 0.05) return true;
    return false;
  };
  moduli::HPolygon p;
  do p = random::closed_polygon(rng, opt.n, 1.2);
  while (short_diagonal(p));
  Sample s;
  for (std::size_t a = 0; a < diags.size(); ++a)
    for (std::size_t b = a + 1; b < diags.size(); ++b) {
      if (!bending::diagonals_nonintersecting(diags[a], diags[b], opt.n)) continue;
      const auto br = poisson::sklyanin_bracket(poisson::field_length(diags[a].first, diags[a].second),
                                                poisson::field_length(diags[b].first, diags[b].second), p.word());
      s.value = std::max(s.value, std::abs(br.value));
      s.fd_error = std::max(s.fd_error, br.error);
    }
  return s;
}

Sample angle_brackets(random::Rng& rng, const Options& opt, int) {
  for (;;) {
    const auto p = random::closed_polygon(rng, opt.n, 1.2);
    try {
      const auto rep = poisson::angle_bracket_check(p.word());
      Sample s;
      s.value = std::max({rep.max_offdiag, rep.max_diag_spread, rep.max_angle_angle, std::abs(std::abs(rep.kappa) - 1.0)});
      s.fd_error = rep.fd_error;
      s.extra = {{"kappa", rep.kappa}};
      return s;
    } catch (const DomainError&) {
      // Degenerate fan triangle: draw again.
    }
  }
}

Sample flow_periods(random::Rng& rng, const Options& opt, int) {
  const auto w = random::word(rng, opt.n, 0.5);
  const int k = std::uniform_int_distribution<int>(1, opt.n)(rng);
  Sample s;
  for (bool normalized : {false, true}) {
    const double T = bending::bend_period(w, k, normalized);
    const auto back = bending::bend_flow(w, k, T, normalized);
    s.value = std::max(s.value, bending::word_distance(w, back));
  }
  return s;
}

Sample torus_commute(random::Rng& rng, const Options& opt, int) {
  const auto p = random::closed_polygon(rng, opt.n, 1.2);
  std::vector<double> t;
  for (int k = 1; k <= opt.n - 3; ++k) t.push_back(std::uniform_real_distribution<double>(-kPi, kPi)(rng));
  auto apply = [&](bool reverse) {
    borel::Word w = p.word();
    for (int s = 0; s < opt.n - 3; ++s) {
      const int m = reverse ? opt.n - 3 - s : s + 1;
      w = bending::bend_flow(w, m + 1, t[m - 1], true);
    }
    return w;
  };
  Sample s;
  s.value = bending::word_distance(apply(false), apply(true));
  return s;
}

Sample lu_integral(random::Rng&, const Options&, int index) {
  static const double lambdas[] = {0.25, 1.0, 2.0};
  static const double eps[] = {0.0, 1e-3, 0.1, 1.0};
  const poisson::LuParams p{lambdas[index / 4 % 3], eps[index % 4]};
  const auto r = poisson::lu_integral(p);
  const double exact = -8.0 * kPi * p.lambda;
  Sample s;
  s.value = std::abs(r.value - exact) / std::abs(exact);
  s.fd_error = r.error / std::abs(exact);
  return s;
}

Sample gauss_roundtrip(random::Rng& rng, const Options& opt, int) {
  const auto p = random::closed_polygon(rng, opt.n, 1.5);
  const auto c = gaussmap::gauss_h(p);
  // Start away from * so the solver has to travel to the fixed point.
  gaussmap::FixedPointOptions fo;
  fo.start = random::point_h(rng, 2.0);
  const auto back = gaussmap::inverse_gauss_h(c, fo);
  const auto v0 = p.vertices_h(), v1 = back.polygon.vertices_h();
  Sample s;
  for (std::size_t i = 0; i < v0.size(); ++i) s.value = std::max(s.value, hyp3::dist_h(v0[i], v1[i]));
  return s;
}

Sample contraction(random::Rng& rng, const Options& opt, int) {
  const auto c = random::stable_configuration(rng, opt.n);
  const auto fp = gaussmap::fixed_point(c);
  const Vec4 x = fp.point.to_hyperboloid();
  const double radius = c.weights.total();
  // Random pairs in the ball of radius |r| about the fixed point.
  const Mat2 to_x = borel::from_point_h(x).matrix();
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const Vec4 a = hyp3::apply_isometry_h(to_x, random::point_h(rng, radius));
    const Vec4 b = hyp3::apply_isometry_h(to_x, random::point_h(rng, radius));
    const double d = hyp3::dist_h(a, b);
    if (d < 1e-6) continue;
    worst = std::max(worst, hyp3::dist_h(gaussmap::contraction_map_h(c, a), gaussmap::contraction_map_h(c, b)) / d);
  }
  Sample s;
  // Here max_abs is the largest Lipschitz ratio itself; the identity is "< 1".
  s.value = worst;
  s.extra = {{"solver_contraction_factor", fp.report.contraction_factor}};
  return s;
}

const std::map<std::string, Suite>& suites() {
  static const std::map<std::string, Suite> s = {
      {"brackets-commute", {"{f_j, f_k} = 0", brackets_commute, 1e-6, 1e-6}},
      {"length-brackets", {"{l_ij, l_ab} = 0 for nonintersecting diagonals", length_brackets, 1e-6, 1e-6}},
      {"angle-brackets", {"{l_i, theta_j} = kappa delta_ij, {theta_i, theta_j} = 0, |kappa| = 1", angle_brackets,
                          1e-4, 1e-5}},
      {"flow-periods", {"bending flows return after one period", flow_periods, 1e-9, INFINITY}},
      {"torus-commute", {"fan flows commute in any order", torus_commute, 1e-8, INFINITY}},
      {"lu-integral", {"int omega_eps = -8 pi lambda", lu_integral, 1e-6, 1e-6, 12}},
      {"gauss-roundtrip", {"inverse_gauss_h(gauss_h(P)) = P", gauss_roundtrip, 1e-8, INFINITY}},
      {"contraction", {"f_{r,xi} is a strict contraction", contraction, 1.0, INFINITY}},
  };
  return s;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : suites()) v.push_back(k);
    return v;
  }();
  return names;
}

Report run(const std::string& name, const Options& opt) {
  const auto it = suites().find(name);
  if (it == suites().end()) throw DomainError("unknown suite '" + name + "'");
  const Suite& suite = it->second;
  if (opt.samples < 1) throw DomainError("samples must be positive");
  if (opt.n < 4 && (name == "angle-brackets" || name == "torus-commute"))
    throw DomainError("suite '" + name + "' needs n >= 4");
  if (opt.n < 3) throw DomainError("n must be at least 3");

  const int count = suite.fixed_samples > 0 ? suite.fixed_samples : opt.samples;
  std::vector<Sample> results(count);
  std::vector<std::exception_ptr> errors(count);
  auto work = [&](int worker, int stride) {
    for (int i = worker; i < count; i += stride) {
      try {
        random::Rng rng = sample_rng(opt.seed, i);
        results[i] = suite.sample(rng, opt, i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int jobs = std::max(1, std::min(opt.jobs, count));
  if (jobs == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(work, w, jobs);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  // Merge in index order.
  Report rep;
  rep.identity = suite.identity;
  rep.samples = count;
  std::map<std::string, std::pair<double, double>> ranges;
  std::vector<std::string> order;
  for (const auto& s : results) {
    rep.max_abs = std::max(rep.max_abs, s.value);
    rep.fd_error_estimate = std::max(rep.fd_error_estimate, s.fd_error);
    for (const auto& [k, v] : s.extra) {
      auto [pos, fresh] = ranges.try_emplace(k, v, v);
      if (fresh) order.push_back(k);
      pos->second.first = std::min(pos->second.first, v);
      pos->second.second = std::max(pos->second.second, v);
    }
  }
  for (const auto& k : order) {
    rep.extra.emplace_back(k + "_min", ranges[k].first);
    rep.extra.emplace_back(k + "_max", ranges[k].second);
  }
  rep.pass = rep.max_abs < suite.tol && rep.fd_error_estimate < suite.fd_tol;
  return rep;
}

}  // namespace hypergon::verify
