#pragma once

// Numerical Poisson geometry on B^n: Lie derivatives by finite differences,
// the Sklyanin bracket, Hamiltonian fields, and the bending-coordinate fields
// whose brackets are checked.
//
// Letter indices are zero-based here; diagonal and fan indices follow the
// bending module.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hypergon/bending.hpp"

namespace hypergon::poisson {

/// A function on SL2(C)^n given by a matrix formula, so that it can be
/// evaluated off B^n. Periodic fields take values mod 2 pi; differences are
/// wrapped before they enter a quotient.
struct ScalarField {
  std::string label;
  std::function<double(std::span<const Mat2>)> eval;
  bool periodic = false;
};

struct FdOptions {
  double h = 1e-4;
};

struct Estimate {
  double value = 0.0;
  /// |value(h) - value(h/2)|
  double error = 0.0;
};

/// d/ds phi(.., exp(s nu) g_i, ..) and d/ds phi(.., g_i exp(s nu), ..), by
/// 4th-order central differences.
Estimate lie_derivative_left(const ScalarField& phi, std::span<const Mat2> g, int i, const Mat2& nu,
                             const FdOptions& opt = {});
Estimate lie_derivative_right(const ScalarField& phi, std::span<const Mat2> g, int i, const Mat2& nu,
                              const FdOptions& opt = {});

/// D_i phi for every letter: the element of sl2(C) with <D_i phi, nu> equal
/// to the left derivative along nu.
std::vector<Mat2> left_gradients(const ScalarField& phi, std::span<const Mat2> g, double h);
/// D'_i phi = Ad_{g_i^{-1}} D_i phi
std::vector<Mat2> right_gradients(std::span<const Mat2> g, const std::vector<Mat2>& left);

/// R = rho_k - rho_b
Mat2 r_matrix(const Mat2& u);

/// 1/2 sum_i [<R D'_i phi, D'_i psi> - <R D_i phi, D_i psi>]
double bracket_from_gradients(std::span<const Mat2> g, const std::vector<Mat2>& dphi, const std::vector<Mat2>& dpsi);
Estimate sklyanin_bracket(const ScalarField& phi, const ScalarField& psi, std::span<const Mat2> g,
                          const FdOptions& opt = {});
inline Estimate sklyanin_bracket(const ScalarField& phi, const ScalarField& psi,
                                 std::span<const borel::BElem> b, const FdOptions& opt = {}) {
  const auto g = borel::to_gword(b);
  return sklyanin_bracket(phi, psi, g, opt);
}

/// X_i = 1/2 [(R D_i phi) g_i - g_i (R D'_i phi)]. With this sign
/// {phi, psi} = -d psi(X_phi).
std::vector<Mat2> hamiltonian_field(const ScalarField& phi, std::span<const Mat2> g, const FdOptions& opt = {});

/// d psi(T) along the curve g_i exp(s g_i^{-1} T_i).
Estimate directional_derivative(const ScalarField& psi, std::span<const Mat2> g, std::span<const Mat2> tangent,
                                const FdOptions& opt = {});

// ---------------------------------------------------------------- fields

ScalarField field_f(int i, int j);
/// Geometric length arccosh(f/2) of the diagonal (i, j).
ScalarField field_length(int i, int j);
/// theta of fan diagonal m, read from the vertices P_j P_j^*.
ScalarField field_theta(int m);
/// Re or Im of the (r, c) entry of letter i.
ScalarField field_entry(int i, int r, int c, bool imaginary);

struct AngleBracketReport {
  int n = 0;
  /// {l_i, theta_j} and {theta_i, theta_j}, row-major (n-3) x (n-3).
  std::vector<double> length_angle;
  std::vector<double> angle_angle;
  double kappa = 0.0;
  double max_offdiag = 0.0;
  double max_diag_spread = 0.0;
  double max_angle_angle = 0.0;
  double fd_error = 0.0;
};

/// Brackets of the fan action-angle coordinates on a closed word. Throws
/// DomainError when a fan triangle is degenerate.
AngleBracketReport angle_bracket_check(std::span<const borel::BElem> word, const FdOptions& opt = {});

}  // namespace hypergon::poisson
