#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "secular/polycore.hpp"

namespace secular {

enum class NormKind { Infinity, Frobenius, Two };

const char* to_string(NormKind kind) noexcept;
/// Accepts "inf", "fro", "two". Throws InvalidArgument otherwise.
NormKind parse_norm_kind(const std::string& text);
double matrix_norm(const ComplexMatrix& a, NormKind kind);

struct TropicalRoot {
  double magnitude = 0.0;
  int multiplicity = 0;
};

struct TropicalRoots {
  /// Decreasing magnitude.
  std::vector<TropicalRoot> roots;
  NormKind norm = NormKind::Infinity;
  /// Index of the first and last nonzero coefficient on the hull.
  int low = 0;
  int high = 0;

  int total_multiplicity() const noexcept;
};

/// Upper convex hull of (i, log ||P_i||) over the nonzero coefficients. Each
/// hull edge (i1, i2) gives magnitude (||P_i1|| / ||P_i2||)^{1/(i2-i1)} with
/// multiplicity i2 - i1. Throws InvalidArgument with fewer than two nonzero
/// coefficients.
TropicalRoots tropical_roots(const MatrixPolynomial& p, NormKind norm = NormKind::Infinity);

/// Annulus r_lower <= |lambda| <= r_upper from the scalar dominance test
///   ||P_0^{-1}||^{-1} > sum_{i>0} ||P_i|| r^i   (r < r_lower),
///   ||P_n^{-1}||^{-1} r^n > sum_{i<n} ||P_i|| r^i   (r > r_upper),
/// in the infinity norm. Empty when P_0 or P_n is singular.
std::optional<std::pair<double, double>> pellet_annulus(const MatrixPolynomial& p);

enum class NodeStrategy { Fourier, Tropical, Manual };
enum class PhaseMode { Deterministic, Random };

const char* to_string(NodeStrategy s) noexcept;

struct NodePlan {
  std::vector<cplx> betas;
  NodeStrategy strategy = NodeStrategy::Manual;
  cplx alpha = 1.0;
};

/// True when |b_i - b_j| > 1e-12 max(|b_i|, |b_j|) for all i != j.
bool nodes_distinct(std::span<const cplx> betas) noexcept;

/// beta_j = alpha w^j, j = 1..n. Throws InvalidArgument for alpha = 0 or n = 0.
NodePlan plan_fourier(std::size_t n, cplx alpha = 1.0);

/// Root (t, k) of group g contributes t exp(2 pi i j / k) exp(i phi_g), j < k,
/// with phi_g = pi g / (2k) or a seeded uniform phase. Throws
/// MultiplicityMismatch when the multiplicities do not add up to n and
/// NodeCollision when two nodes coincide.
NodePlan plan_tropical(const TropicalRoots& t, std::size_t n,
                       PhaseMode mode = PhaseMode::Deterministic, std::uint64_t seed = 0);

/// Validates distinctness; throws NodeCollision.
NodePlan plan_manual(std::vector<cplx> betas);

}  // namespace secular
