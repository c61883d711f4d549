#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace hypergon {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;

/// Base of every error raised by the library. The CLI maps the subclasses
/// onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input lies outside the domain of an operation (unstable configuration,
/// weights on a wall, degenerate diagonal, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative solver ran out of budget. Carries the last residual.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Malformed input files or unreadable/unwritable paths.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace hypergon
