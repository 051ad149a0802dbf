#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace secular {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

/// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Throws InvalidArgument if the entry count is wrong or an entry is not finite.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const cplx> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<cplx> entries() noexcept { return data_; }
  std::span<const cplx> entries() const noexcept { return data_; }

  bool is_zero() const noexcept;
  bool all_finite() const noexcept;

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b);
  void add_block(std::size_t r0, std::size_t c0, const ComplexMatrix& b, cplx scale = 1.0);

  double norm_inf() const noexcept;  // max row sum
  double norm_one() const noexcept;  // max column sum
  double norm_fro() const noexcept;
  double max_abs() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

ComplexVector matvec(const ComplexMatrix& a, std::span<const cplx> x);
/// Computes a^* x.
ComplexVector adjoint_matvec(const ComplexMatrix& a, std::span<const cplx> x);
double norm2(std::span<const cplx> x) noexcept;
cplx dot(std::span<const cplx> a, std::span<const cplx> b) noexcept;  // a^* b
void normalize(ComplexVector& x) noexcept;

/// LU factorization with partial pivoting.
class LuDecomposition {
 public:
  explicit LuDecomposition(const ComplexMatrix& a);

  std::size_t size() const noexcept { return lu_.rows(); }
  /// Smallest pivot magnitude.
  double min_pivot() const noexcept { return min_pivot_; }
  /// True when some pivot is below rel_tol * ||a||_inf.
  bool singular(double rel_tol) const noexcept;
  cplx determinant() const noexcept;

  ComplexVector solve(std::span<const cplx> b) const;
  ComplexMatrix solve(const ComplexMatrix& b) const;
  /// Solves a^* x = b.
  ComplexVector solve_adjoint(std::span<const cplx> b) const;
  ComplexMatrix inverse() const;

 private:
  ComplexMatrix lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
  double min_pivot_ = 0.0;
  double input_norm_ = 0.0;
};

/// Polynomial with complex coefficients, index i holds the coefficient of x^i.
/// Exact trailing zeros are dropped, so degree() is exact.
class ScalarPolynomial {
 public:
  ScalarPolynomial() = default;
  explicit ScalarPolynomial(std::vector<cplx> coeffs);
  ScalarPolynomial(std::initializer_list<cplx> coeffs);

  static ScalarPolynomial constant(cplx c);
  /// x - root
  static ScalarPolynomial linear(cplx root);
  static ScalarPolynomial from_roots(std::span<const cplx> roots);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == cplx(1.0); }
  cplx leading() const noexcept { return coeffs_.empty() ? cplx{} : coeffs_.back(); }
  cplx operator[](std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : cplx{}; }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  cplx operator()(cplx x) const noexcept;
  ScalarPolynomial derivative() const;
  ScalarPolynomial monic() const;
  /// x^k p(1/x), requires k >= degree().
  ScalarPolynomial reversed(std::size_t k) const;
  double norm_inf() const noexcept;

  ScalarPolynomial& operator+=(const ScalarPolynomial& o);
  ScalarPolynomial& operator-=(const ScalarPolynomial& o);
  ScalarPolynomial& operator*=(cplx s);
  friend ScalarPolynomial operator+(ScalarPolynomial a, const ScalarPolynomial& b) { return a += b; }
  friend ScalarPolynomial operator-(ScalarPolynomial a, const ScalarPolynomial& b) { return a -= b; }
  friend ScalarPolynomial operator*(ScalarPolynomial a, cplx s) { return a *= s; }
  friend ScalarPolynomial operator*(cplx s, ScalarPolynomial a) { return a *= s; }
  friend ScalarPolynomial operator*(const ScalarPolynomial& a, const ScalarPolynomial& b);
  friend bool operator==(const ScalarPolynomial&, const ScalarPolynomial&) = default;

 private:
  void trim() noexcept;
  std::vector<cplx> coeffs_;
};

/// Quotient and remainder of a / b. Throws InvalidArgument for b = 0.
std::pair<ScalarPolynomial, ScalarPolynomial> divmod(const ScalarPolynomial& a,
                                                     const ScalarPolynomial& b);

/// Matrix polynomial sum_i P_i x^i with square coefficients of equal size.
/// Stored leading zero coefficients are kept; degree() looks past them.
class MatrixPolynomial {
 public:
  MatrixPolynomial() = default;
  MatrixPolynomial(std::size_t m, std::vector<ComplexMatrix> coeffs);

  static MatrixPolynomial constant(const ComplexMatrix& c);
  /// Builds a polynomial from an m x m grid of entry polynomials (row-major).
  static MatrixPolynomial from_entries(std::size_t m, std::span<const ScalarPolynomial> entries);

  std::size_t size() const noexcept { return m_; }
  std::size_t coeff_count() const noexcept { return coeffs_.size(); }
  std::span<const ComplexMatrix> coeffs() const noexcept { return coeffs_; }
  /// P_i, or the zero matrix for i beyond the stored range.
  ComplexMatrix coeff(std::size_t i) const;

  /// Largest i with P_i != 0 (exact test); -1 for the zero polynomial.
  int degree() const noexcept;
  /// P_degree (zero matrix for the zero polynomial).
  ComplexMatrix leading() const;

  ComplexMatrix operator()(cplx x) const;
  MatrixPolynomial derivative() const;
  ScalarPolynomial entry(std::size_t i, std::size_t j) const;
  /// Sum_i ||P_i||_inf |x|^i.
  double norm_sum(double abs_x) const noexcept;

 private:
  std::size_t m_ = 0;
  std::vector<ComplexMatrix> coeffs_;
};

/// Horner evaluation.
ComplexMatrix eval(const MatrixPolynomial& p, cplx x);

/// x^k P(1/x). Throws InvalidArgument when k < degree(P).
MatrixPolynomial reverse(const MatrixPolynomial& p, std::size_t k);

/// Probabilistic regularity test: det P is sampled at 0 and at trials - 1
/// points uniformly distributed on the unit circle. Throws InvalidArgument when
/// trials < degree * m + 1.
bool is_regular(const MatrixPolynomial& p, std::size_t trials, std::uint64_t seed);

/// Pivot threshold, relative to ||V||_inf, below which a matrix is treated as singular.
inline constexpr double kSingularPivotTolerance = 1e-13;

}  // namespace secular
