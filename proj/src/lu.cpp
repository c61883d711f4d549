#include "hypergon/lu.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hypergon/types.hpp"

namespace hypergon::poisson {

namespace {

void validate(const LuParams& p) {
  if (!(p.lambda > 0.0) || !std::isfinite(p.lambda)) throw DomainError("lambda must be positive");
  if (!(p.eps >= 0.0 && p.eps <= 1.0)) throw DomainError("eps must lie in [0, 1]");
}

}  // namespace

double lu_tau(const LuParams& p) {
  validate(p);
  if (p.eps == 0.0) throw DomainError("tau is undefined at eps = 0");
  return -1.0 / std::expm1(4.0 * p.eps * p.lambda);
}

double lu_pi(const LuParams& p, double alpha, double beta) {
  validate(p);
  const double u = 1.0 + alpha * alpha + beta * beta;
  if (p.eps == 0.0) return u * u / (8.0 * p.lambda);
  const double tau = lu_tau(p);
  return p.eps * (0.5 * u - 0.5 * tau * u * u);
}

double lu_omega(const LuParams& p, double alpha, double beta) {
  validate(p);
  const double u = 1.0 + alpha * alpha + beta * beta;
  if (p.eps == 0.0) return -8.0 * p.lambda / (u * u);
  return -1.0 / lu_pi(p, alpha, beta);
}

LuIntegral lu_integral(const LuParams& p) {
  validate(p);
  using boost::math::quadrature::gauss_kronrod;
  constexpr double pi = std::numbers::pi;
  constexpr double inf = std::numeric_limits<double>::infinity();
  // Polar coordinates with u = 1 + rho^2 = e^x: the angular integral gives
  // pi du, and both forms become integrals over x in [0, inf).
  double err = 0.0, I = 0.0, scale = 0.0;
  if (p.eps == 0.0) {
    I = gauss_kronrod<double, 61>::integrate([](double x) { return std::exp(-x); }, 0.0, inf, 30, 1e-14, &err);
    scale = -8.0 * p.lambda * pi;
  } else {
    const double tau = lu_tau(p);
    I = gauss_kronrod<double, 61>::integrate([tau](double x) { return 1.0 / (1.0 - tau * std::exp(x)); }, 0.0, inf,
                                             30, 1e-14, &err);
    scale = -2.0 * pi / p.eps;
  }
  LuIntegral out{scale * I, std::abs(scale) * err};
  if (!(out.error <= 1e-9 * std::abs(out.value)))
    throw ConvergenceError("quadrature did not reach tolerance, error " + std::to_string(out.error), out.error);
  return out;
}

}  // namespace hypergon::poisson
