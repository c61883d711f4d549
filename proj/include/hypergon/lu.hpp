#pragma once

// Lu's one-parameter family of Poisson structures pi_eps on S^2 = R^2 u {oo}
// in stereographic coordinates (alpha, beta) and the symplectic forms
// omega_eps inverse to them. Only the dalpha^dbeta coefficients are computed.

namespace hypergon::poisson {

struct LuParams {
  double lambda = 1.0;
  /// eps = 0 selects the limiting form omega_0.
  double eps = 1.0;
};

/// tau(eps) = 1 / (1 - e^{4 eps lambda}); negative for eps > 0.
double lu_tau(const LuParams& p);
double lu_pi(const LuParams& p, double alpha, double beta);
double lu_omega(const LuParams& p, double alpha, double beta);

struct LuIntegral {
  double value = 0.0;
  double error = 0.0;
};

/// Integral of omega_eps over R^2: polar coordinates, then Gauss-Kronrod over
/// x in [0, inf) with 1 + alpha^2 + beta^2 = e^x. Throws ConvergenceError when
/// the error estimate exceeds 1e-9 relative.
LuIntegral lu_integral(const LuParams& p);

}  // namespace hypergon::poisson
