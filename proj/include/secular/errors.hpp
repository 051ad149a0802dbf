#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace secular {

enum class ErrorCode {
  InvalidArgument,
  NotCoprime,
  SingularAtNode,
  DegreeMismatch,
  DuplicateNode,
  Convergence,
  LeadingBlockSingular,
  BlockSingularAtEigenvalue,
  DegenerateLift,
  MultiplicityMismatch,
  NodeCollision,
  NumericalFailure,
  Io,
  Parse,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorCode::InvalidArgument, what) {}
};

/// Two polynomials expected to be coprime share a nontrivial factor.
/// Carries the computed monic gcd, coefficients low-to-high.
class NotCoprime : public Error {
 public:
  NotCoprime(const std::string& what, std::vector<std::complex<double>> gcd)
      : Error(ErrorCode::NotCoprime, what), gcd_(std::move(gcd)) {}
  const std::vector<std::complex<double>>& gcd() const noexcept { return gcd_; }

 private:
  std::vector<std::complex<double>> gcd_;
};

/// A matrix polynomial evaluated at an interpolation node is numerically
/// singular.
class SingularAtNode : public Error {
 public:
  SingularAtNode(const std::string& what, std::complex<double> node)
      : Error(ErrorCode::SingularAtNode, what), node_(node) {}
  std::complex<double> node() const noexcept { return node_; }

 private:
  std::complex<double> node_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<std::size_t> deflated)
      : Error(ErrorCode::Convergence, what), deflated_(std::move(deflated)) {}
  /// Indices (in Schur order) of the eigenvalues that had converged.
  const std::vector<std::size_t>& deflated() const noexcept { return deflated_; }

 private:
  std::vector<std::size_t> deflated_;
};

}  // namespace secular
