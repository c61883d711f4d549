#include "hypergon/poisson.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace hypergon::poisson {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_pi(double x) { return x - 2.0 * kPi * std::round(x / (2.0 * kPi)); }

// Real basis of sl2(C): the k basis followed by the b basis.
const std::array<Mat2, 6>& basis() {
  static const std::array<Mat2, 6> b = [] {
    const auto k = borel::basis_k();
    const auto bb = borel::basis_b();
    return std::array<Mat2, 6>{k[0].matrix(), k[1].matrix(), k[2].matrix(),
                               bb[0].matrix(), bb[1].matrix(), bb[2].matrix()};
  }();
  return b;
}

const Eigen::Matrix<double, 6, 6>& gram() {
  static const Eigen::Matrix<double, 6, 6> G = [] {
    Eigen::Matrix<double, 6, 6> m;
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) m(a, b) = borel::pairing(basis()[a], basis()[b]);
    return m;
  }();
  return G;
}

template <class Perturb>
double central_difference(const ScalarField& phi, double h, Perturb&& at) {
  const double base = phi.eval(at(0.0));
  auto delta = [&](double s) {
    const double d = phi.eval(at(s)) - base;
    return phi.periodic ? wrap_pi(d) : d;
  };
  return (-delta(2 * h) + 8.0 * delta(h) - 8.0 * delta(-h) + delta(-2 * h)) / (12.0 * h);
}

double left_derivative(const ScalarField& phi, std::span<const Mat2> g, int i, const Mat2& nu, double h) {
  std::vector<Mat2> w(g.begin(), g.end());
  const Mat2 gi = g[i];
  return central_difference(phi, h, [&](double s) -> std::span<const Mat2> {
    w[i] = borel::exp_sl2(Mat2(s * nu)) * gi;
    return w;
  });
}

double right_derivative(const ScalarField& phi, std::span<const Mat2> g, int i, const Mat2& nu, double h) {
  std::vector<Mat2> w(g.begin(), g.end());
  const Mat2 gi = g[i];
  return central_difference(phi, h, [&](double s) -> std::span<const Mat2> {
    w[i] = gi * borel::exp_sl2(Mat2(s * nu));
    return w;
  });
}

std::vector<Vec4> vertices_of(std::span<const Mat2> g, std::size_t count) {
  std::vector<Vec4> out{Vec4(1, 0, 0, 0)};
  Mat2 p = Mat2::Identity();
  for (std::size_t k = 0; k + 1 < count && k < g.size(); ++k) {
    p = p * g[k];
    out.push_back(hyp3::hermitian_to_h(p * p.adjoint()));
  }
  return out;
}

}  // namespace

Estimate lie_derivative_left(const ScalarField& phi, std::span<const Mat2> g, int i, const Mat2& nu,
                             const FdOptions& opt) {
  const double a = left_derivative(phi, g, i, nu, opt.h);
  const double b = left_derivative(phi, g, i, nu, 0.5 * opt.h);
  return {a, std::abs(a - b)};
}

Estimate lie_derivative_right(const ScalarField& phi, std::span<const Mat2> g, int i, const Mat2& nu,
                              const FdOptions& opt) {
  const double a = right_derivative(phi, g, i, nu, opt.h);
  const double b = right_derivative(phi, g, i, nu, 0.5 * opt.h);
  return {a, std::abs(a - b)};
}

std::vector<Mat2> left_gradients(const ScalarField& phi, std::span<const Mat2> g, double h) {
  std::vector<Mat2> out;
  out.reserve(g.size());
  const auto solver = gram().fullPivLu();
  for (int i = 0; i < static_cast<int>(g.size()); ++i) {
    Eigen::Matrix<double, 6, 1> d;
    for (int a = 0; a < 6; ++a) d[a] = left_derivative(phi, g, i, basis()[a], h);
    const Eigen::Matrix<double, 6, 1> c = solver.solve(d);
    Mat2 D = Mat2::Zero();
    for (int a = 0; a < 6; ++a) D += c[a] * basis()[a];
    out.push_back(D);
  }
  return out;
}

std::vector<Mat2> right_gradients(std::span<const Mat2> g, const std::vector<Mat2>& left) {
  std::vector<Mat2> out;
  out.reserve(left.size());
  for (std::size_t i = 0; i < left.size(); ++i) out.push_back(borel::adjoint(g[i].inverse(), left[i]));
  return out;
}

Mat2 r_matrix(const Mat2& u) { return borel::project_k(u) - borel::project_b(u); }

double bracket_from_gradients(std::span<const Mat2> g, const std::vector<Mat2>& dphi, const std::vector<Mat2>& dpsi) {
  const auto rphi = right_gradients(g, dphi);
  const auto rpsi = right_gradients(g, dpsi);
  double sum = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    sum += borel::pairing(r_matrix(rphi[i]), rpsi[i]) - borel::pairing(r_matrix(dphi[i]), dpsi[i]);
  return 0.5 * sum;
}

Estimate sklyanin_bracket(const ScalarField& phi, const ScalarField& psi, std::span<const Mat2> g,
                          const FdOptions& opt) {
  const double a = bracket_from_gradients(g, left_gradients(phi, g, opt.h), left_gradients(psi, g, opt.h));
  const double b =
      bracket_from_gradients(g, left_gradients(phi, g, 0.5 * opt.h), left_gradients(psi, g, 0.5 * opt.h));
  return {a, std::abs(a - b)};
}

std::vector<Mat2> hamiltonian_field(const ScalarField& phi, std::span<const Mat2> g, const FdOptions& opt) {
  const auto D = left_gradients(phi, g, opt.h);
  const auto Dp = right_gradients(g, D);
  std::vector<Mat2> out;
  for (std::size_t i = 0; i < g.size(); ++i) out.push_back(0.5 * (r_matrix(D[i]) * g[i] - g[i] * r_matrix(Dp[i])));
  return out;
}

Estimate directional_derivative(const ScalarField& psi, std::span<const Mat2> g, std::span<const Mat2> tangent,
                                const FdOptions& opt) {
  std::vector<Mat2> gen;
  for (std::size_t i = 0; i < g.size(); ++i) gen.push_back(g[i].inverse() * tangent[i]);
  std::vector<Mat2> w(g.begin(), g.end());
  auto at = [&](double s) -> std::span<const Mat2> {
    for (std::size_t i = 0; i < g.size(); ++i) w[i] = g[i] * borel::exp_sl2(Mat2(s * gen[i]));
    return w;
  };
  const double a = central_difference(psi, opt.h, at);
  const double b = central_difference(psi, 0.5 * opt.h, at);
  return {a, std::abs(a - b)};
}

// ---------------------------------------------------------------- fields

ScalarField field_f(int i, int j) {
  return {"f(" + std::to_string(i) + "," + std::to_string(j) + ")",
          [i, j](std::span<const Mat2> g) { return bending::f(g, i, j); }, false};
}

ScalarField field_length(int i, int j) {
  return {"l(" + std::to_string(i) + "," + std::to_string(j) + ")",
          [i, j](std::span<const Mat2> g) { return bending::diag_length(g, i, j); }, false};
}

ScalarField field_theta(int m) {
  return {"theta(" + std::to_string(m) + ")",
          [m](std::span<const Mat2> g) {
            const auto v = vertices_of(g, static_cast<std::size_t>(m) + 3);
            return bending::fan_theta(v, m);
          },
          true};
}

ScalarField field_entry(int i, int r, int c, bool imaginary) {
  return {std::string(imaginary ? "Im" : "Re") + " g" + std::to_string(i) + "[" + std::to_string(r) +
              std::to_string(c) + "]",
          [=](std::span<const Mat2> g) { return imaginary ? g[i](r, c).imag() : g[i](r, c).real(); }, false};
}

AngleBracketReport angle_bracket_check(std::span<const borel::BElem> word, const FdOptions& opt) {
  const int n = static_cast<int>(word.size());
  if (n < 4) throw DomainError("angle brackets need n >= 4");
  bending::measure(moduli::HPolygon(borel::Word(word.begin(), word.end())));
  const auto g = borel::to_gword(word);
  const int k = n - 3;

  std::vector<ScalarField> lengths, angles;
  for (int m = 1; m <= k; ++m) {
    lengths.push_back(field_length(1, m + 2));
    angles.push_back(field_theta(m));
  }
  auto grads = [&](const std::vector<ScalarField>& fs, double h) {
    std::vector<std::vector<Mat2>> out;
    for (const auto& f : fs) out.push_back(left_gradients(f, g, h));
    return out;
  };
  const auto gl = grads(lengths, opt.h), gl2 = grads(lengths, 0.5 * opt.h);
  const auto ga = grads(angles, opt.h), ga2 = grads(angles, 0.5 * opt.h);

  AngleBracketReport rep;
  rep.n = n;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const double la = bracket_from_gradients(g, gl[i], ga[j]);
      const double la2 = bracket_from_gradients(g, gl2[i], ga2[j]);
      const double aa = bracket_from_gradients(g, ga[i], ga[j]);
      const double aa2 = bracket_from_gradients(g, ga2[i], ga2[j]);
      rep.length_angle.push_back(la);
      rep.angle_angle.push_back(aa);
      rep.fd_error = std::max({rep.fd_error, std::abs(la - la2), std::abs(aa - aa2)});
    }
  double sum = 0.0;
  for (int i = 0; i < k; ++i) sum += rep.length_angle[i * k + i];
  rep.kappa = sum / k;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      const double la = rep.length_angle[i * k + j];
      if (i == j)
        rep.max_diag_spread = std::max(rep.max_diag_spread, std::abs(la - rep.kappa));
      else
        rep.max_offdiag = std::max(rep.max_offdiag, std::abs(la));
      rep.max_angle_angle = std::max(rep.max_angle_angle, std::abs(rep.angle_angle[i * k + j]));
    }
  return rep;
}

}  // namespace hypergon::poisson
