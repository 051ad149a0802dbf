#pragma once

#include <optional>
#include <span>
#include <vector>

#include "secular/polycore.hpp"

namespace secular {

/// Bezout data: u*s + v*r = g with g the monic gcd.
struct ExtGcdResult {
  ScalarPolynomial g;
  ScalarPolynomial s;
  ScalarPolynomial r;
};

/// Relative cutoff below which a Euclid remainder is treated as zero.
inline constexpr double kGcdCutoff = 1e-12;

/// Extended Euclidean algorithm with monic normalization of every remainder.
/// A remainder whose inf-norm is below cutoff * ||u||_inf * ||v||_inf is
/// treated as zero. Throws InvalidArgument when both inputs are zero.
ExtGcdResult ext_gcd(const ScalarPolynomial& u, const ScalarPolynomial& v,
                     double cutoff = kGcdCutoff);

/// p mod b. Throws InvalidArgument for b = 0.
ScalarPolynomial remainder(const ScalarPolynomial& p, const ScalarPolynomial& b);

/// alpha with deg alpha < deg b and alpha * v = 1 mod b. Throws NotCoprime
/// (carrying the gcd) when v and b share a factor, InvalidArgument when b is
/// constant.
ScalarPolynomial mod_inverse(const ScalarPolynomial& v, const ScalarPolynomial& b);

/// Pairwise distinct complex nodes.
class NodeSet {
 public:
  NodeSet() = default;
  /// Throws InvalidArgument on a repeated node.
  explicit NodeSet(std::vector<cplx> nodes);

  std::span<const cplx> nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  cplx operator[](std::size_t i) const noexcept { return nodes_[i]; }
  /// min_{j != k} |x_j - x_k| (infinity for fewer than two nodes).
  double min_gap() const noexcept;
  /// min_{j != k} |x_j - x_k| / max(|x_j|, |x_k|).
  double min_relative_gap() const noexcept;

 private:
  std::vector<cplx> nodes_;
};

/// Roots of b via the eigenvalues of its balanced companion matrix, polished
/// by Newton steps. Throws InvalidArgument for constant b.
NodeSet roots(const ScalarPolynomial& b);

/// Polynomial of degree < nodes.size() through (nodes[k], values[k]).
/// Uses an inverse DFT when the nodes are a scaled set of roots of unity and
/// the Lagrange form otherwise.
ScalarPolynomial interpolate(const NodeSet& nodes, std::span<const cplx> values);

/// Lagrange (barycentric-weight) interpolation, always.
ScalarPolynomial interpolate_lagrange(const NodeSet& nodes, std::span<const cplx> values);

/// Inverse-DFT interpolation; empty when the nodes are not alpha times the
/// d-th roots of unity.
std::optional<ScalarPolynomial> interpolate_fourier(const NodeSet& nodes,
                                                    std::span<const cplx> values);

/// V(x_k)^{-1} at every node, by LU with partial pivoting. Throws
/// SingularAtNode when a pivot falls below kSingularPivotTolerance * ||V(x_k)||.
std::vector<ComplexMatrix> inverse_at_nodes(const MatrixPolynomial& v, const NodeSet& nodes);

/// F with deg F < deg b and F(xi) = V(xi)^{-1} at every root xi of b, so that
/// F V = I mod b. Requires b to have simple roots.
MatrixPolynomial matrix_mod_inverse(const MatrixPolynomial& v, const ScalarPolynomial& b);

/// Interpolates a matrix polynomial entrywise from its values at the nodes.
MatrixPolynomial interpolate_matrix(const NodeSet& nodes, std::span<const ComplexMatrix> values);

}  // namespace secular
