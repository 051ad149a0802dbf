#pragma once

#include "secular/eigen.hpp"
#include "secular/polycore.hpp"

namespace secular {

/// Column: identity blocks on the subdiagonal of A0, last block column
/// -P_0, ..., -P_{n-1}. Row: identity blocks on the superdiagonal, last block
/// row -P_0, ..., -P_{n-1}. Both use A1 = diag(I, ..., I, P_n).
enum class CompanionForm { Column, Row };

Pencil frobenius_pencil(const MatrixPolynomial& p, CompanionForm form = CompanionForm::Column);

/// (D (x) I)^{-1} (A1, A0) (D (x) I) with D = diag(1, alpha, ..., alpha^{n-1}).
Pencil scaled_frobenius(const MatrixPolynomial& p, cplx alpha,
                        CompanionForm form = CompanionForm::Column);

/// Builds the secular pencil with nodes alpha w^i (i = 1..n, w = exp(2 pi i / n)),
/// s = 0, forms (Omega (x) I) A0 (Omega^* (x) I) with Omega_{ij} = w^{ij} / sqrt(n)
/// and returns its inf-norm distance to the scaled row companion matrix.
/// P must be monic.
double fourier_similarity_check(const MatrixPolynomial& p, cplx alpha);

}  // namespace secular
