#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "secular/polycore.hpp"

namespace secular {

/// Block choice for a secular l-ification:
///   B_i(x) = b_i(x) I            for i < q,
///   B_q(x) = b_q(x) P_n + s I.
/// The b_i are monic and pairwise coprime; their degrees add up to deg P.
struct BlockSpec {
  std::vector<ScalarPolynomial> blocks;
  cplx shift{};

  std::size_t count() const noexcept { return blocks.size(); }
  int total_degree() const noexcept;
  int max_degree() const noexcept;
};

/// A(x) = diag(B_1, ..., B_q) + (e (x) I_m) [W_1(x), ..., W_q(x)].
class SecularForm {
 public:
  /// Validates sizes, monic blocks and deg W_i < d_i.
  SecularForm(BlockSpec spec, ComplexMatrix leading, std::vector<MatrixPolynomial> weights);

  std::size_t size() const noexcept { return leading_.rows(); }
  std::size_t block_count() const noexcept { return spec_.count(); }
  const BlockSpec& spec() const noexcept { return spec_; }
  cplx shift() const noexcept { return spec_.shift; }
  const ComplexMatrix& leading() const noexcept { return leading_; }
  const std::vector<MatrixPolynomial>& weights() const noexcept { return weights_; }

  /// max_i d_i, the degree of A(x).
  int degree() const noexcept { return spec_.max_degree(); }
  bool is_linear() const noexcept;

  MatrixPolynomial block(std::size_t i) const;
  ComplexMatrix block_at(std::size_t i, cplx x) const;
  ComplexMatrix weight_at(std::size_t i, cplx x) const;
  /// A(x) evaluated directly from the blocks and weights.
  ComplexMatrix assembled_at(cplx x) const;

 private:
  BlockSpec spec_;
  ComplexMatrix leading_;
  std::vector<MatrixPolynomial> weights_;
};

struct ShiftReport {
  /// |lambda b_q(xi) + s| for every eigenvalue lambda of P_n and every root xi of b_i, i < q.
  std::vector<double> margins;
  double min_margin = 0.0;
  /// min over the same pairs of |lambda b_q(xi) + s| / (||P_n||_inf |b_q(xi)| + |s|).
  double min_relative_margin = 0.0;
  bool acceptable = false;
};

/// Relative margin below which a shift is refused.
inline constexpr double kShiftMarginTolerance = 1e-10;
/// Build gate on the reconstruction residual.
inline constexpr double kReconstructionTolerance = 1e-10;

ShiftReport validate_shift(const ComplexMatrix& leading, const BlockSpec& spec);

/// s = 0 when the margins allow it, otherwise 1 + ||P_n||_inf. Throws
/// SingularAtNode when neither is acceptable.
cplx default_shift(const ComplexMatrix& leading, std::span<const ScalarPolynomial> blocks);

/// Computes the weights W_i for blocks satisfying the assumptions above.
/// W_i, i < q, come from evaluation at the roots of b_i and interpolation;
/// W_q from modular inverses modulo b_q. Throws DegreeMismatch, NotCoprime,
/// SingularAtNode, DuplicateNode or NumericalFailure (reconstruction gate).
SecularForm build_ellification(const MatrixPolynomial& p, const BlockSpec& spec);
/// Same, with the shift picked by default_shift.
SecularForm build_ellification(const MatrixPolynomial& p, std::vector<ScalarPolynomial> blocks);

/// Linear blocks b_i = x - beta_i (q = n) with the closed-form weights.
/// Evaluation is exponent-scaled so nodes of very different magnitude do not
/// overflow. The shift defaults to default_shift.
SecularForm build_linear(const MatrixPolynomial& p, std::span<const cplx> betas,
                         std::optional<cplx> shift = std::nullopt);

/// Dense mq x mq l-ification.
MatrixPolynomial assemble_dense(const SecularForm& s);

/// H(x) = L A(x) with L block bidiagonal (I on the diagonal, -I below):
/// first block row [B_1 + W_1, W_2, ..., W_q], then -B_i / B_{i+1} pairs.
MatrixPolynomial assemble_sparse(const SecularForm& s);

/// max_j ||P(x_j) - prod B_i(x_j) - sum W_i(x_j) C_i(x_j)||_inf / (1 + ||P(x_j)||_inf)
/// over `samples` points drawn uniformly on the circle of radius
/// max(1, max |root of b_i|). Throws InvalidArgument when samples < deg P + 1.
double verify_reconstruction(const MatrixPolynomial& p, const SecularForm& s, std::size_t samples,
                             std::uint64_t seed);

struct StrongnessReport {
  bool equal_degrees = false;
  bool nonzero_constants = false;
  bool reversed_coprime = false;
  bool strong = false;
  /// min |b_q^#(eta) lambda + s eta^d| over roots eta of b_i^#, i < q.
  double reversed_margin = 0.0;
  std::string note;
};

StrongnessReport check_strong(const SecularForm& s);

/// Relative spread of det A(x_j) / det P(x_j) over the sample points.
double determinant_ratio_spread(const MatrixPolynomial& p, const SecularForm& s,
                                std::size_t samples, std::uint64_t seed);

}  // namespace secular
