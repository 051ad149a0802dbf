#pragma once

#include <span>
#include <vector>

#include "secular/polycore.hpp"
#include "secular/secular_form.hpp"

namespace secular {

/// x A1 - A0.
struct Pencil {
  ComplexMatrix A1;
  ComplexMatrix A0;

  Pencil() = default;
  /// Throws InvalidArgument unless both matrices are square of equal size.
  Pencil(ComplexMatrix a1, ComplexMatrix a0);
  std::size_t size() const noexcept { return A0.rows(); }
};

/// Eigenpairs ordered by nonincreasing modulus, ties by argument. Right and left
/// vectors have unit 2-norm; left vectors satisfy w^* (lambda A1 - A0) = 0.
struct EigenReport {
  std::vector<cplx> eigenvalues;
  std::vector<ComplexVector> right;
  std::vector<ComplexVector> left;
  /// ||(lambda A1 - A0) v|| / ((|lambda| ||A1|| + ||A0||) ||v||)
  std::vector<double> residuals;
  /// ||v|| ||w|| / |w^* A1 v|
  std::vector<double> cond;

  std::size_t size() const noexcept { return eigenvalues.size(); }
};

/// Balancing, Householder Hessenberg reduction, single-shift (Wilkinson) QR to
/// complex Schur form, eigenvectors by triangular back substitution. Throws
/// ConvergenceError after 30 N iterations without deflation.
EigenReport eig_dense(const ComplexMatrix& m);

/// Eigenvalues only (same algorithm, no vectors), unsorted.
std::vector<cplx> eigenvalues(const ComplexMatrix& m);

/// Reduces to eig_dense(A1^{-1} A0). Throws LeadingBlockSingular when A1 is
/// singular or its 1-norm condition number exceeds kMaxLeadingCondition.
EigenReport eig_pencil(const Pencil& pencil);
inline constexpr double kMaxLeadingCondition = 1e12;

/// ||v|| ||w|| / |w^* A1 v| per eigenpair; +infinity when the denominator is below 1e-300.
std::vector<double> cond_pencil(const Pencil& pencil, const EigenReport& report);

/// ||v|| ||w|| / |w^* P'(lambda) v|; +infinity on a vanishing denominator.
double cond_poly(const MatrixPolynomial& p, cplx lambda, std::span<const cplx> v,
                 std::span<const cplx> w);

/// Largest singular value.
double spectral_norm(const ComplexMatrix& a);

/// Pencil of a secular form with linear blocks b_i = x - beta_i:
///   A1 = diag(I, ..., I, P_n),
///   A0 = diag(beta_1 I, ..., beta_{n-1} I, beta_n P_n - s I) - (e (x) I) [W_1, ..., W_n].
/// Throws InvalidArgument when some block is not linear.
Pencil secular_pencil(const SecularForm& s);

struct MappedVector {
  ComplexVector vector;  // unit 2-norm
  double residual = 0.0;
};

/// v = -prod B_i(lambda)^{-1} sum_j W_j(lambda) v_j, residual
/// ||P(lambda) v|| / (sum_i ||P_i|| |lambda|^i ||v||). Throws
/// BlockSingularAtEigenvalue when some B_i(lambda) is singular.
MappedVector map_right_vector(const MatrixPolynomial& p, const SecularForm& s, cplx lambda,
                              std::span<const cplx> va);

/// v_i = prod_{j != i} B_j(lambda) v, residual ||A(lambda) v_A|| / (||A(lambda)||_inf ||v_A||).
/// Throws DegenerateLift on a zero result.
MappedVector lift_right_vector(const SecularForm& s, cplx lambda, std::span<const cplx> v);

/// u = sum_i u_i for a left eigenvector u_A of A(lambda) (conjugate-transpose
/// convention u_A^* A(lambda) = 0), residual ||u^* P(lambda)|| / (sum_i ||P_i|| |lambda|^i ||u||).
MappedVector map_left_vector(const MatrixPolynomial& p, const SecularForm& s, cplx lambda,
                             std::span<const cplx> ua);

/// u_i^* = -u^* W_i(lambda) B_i(lambda)^{-1}, residual ||u_A^* A(lambda)|| / (||A(lambda)||_inf ||u_A||).
MappedVector lift_left_vector(const SecularForm& s, cplx lambda, std::span<const cplx> u);

/// |<a, b>| / (||a|| ||b||)
double collinearity(std::span<const cplx> a, std::span<const cplx> b) noexcept;

}  // namespace secular
