#include "secular/frobenius.hpp"

#include <cmath>
#include <numbers>

#include "secular/errors.hpp"
#include "secular/secular_form.hpp"
#include "secular/tropical.hpp"

namespace secular {

Pencil frobenius_pencil(const MatrixPolynomial& p, CompanionForm form) {
  const int deg = p.degree();
  if (deg < 1) throw InvalidArgument("companion pencil needs degree at least 1");
  const std::size_t n = static_cast<std::size_t>(deg), m = p.size();
  const std::size_t dim = n * m;
  ComplexMatrix a1 = ComplexMatrix::identity(dim);
  a1.set_block((n - 1) * m, (n - 1) * m, p.coeff(n));
  ComplexMatrix a0(dim, dim);
  const ComplexMatrix id = ComplexMatrix::identity(m);
  if (form == CompanionForm::Column) {
    for (std::size_t i = 1; i < n; ++i) a0.set_block(i * m, (i - 1) * m, id);
    for (std::size_t i = 0; i < n; ++i) a0.add_block(i * m, (n - 1) * m, p.coeff(i), -1.0);
  } else {
    for (std::size_t i = 1; i < n; ++i) a0.set_block((i - 1) * m, i * m, id);
    for (std::size_t i = 0; i < n; ++i) a0.add_block((n - 1) * m, i * m, p.coeff(i), -1.0);
  }
  return Pencil(std::move(a1), std::move(a0));
}

Pencil scaled_frobenius(const MatrixPolynomial& p, cplx alpha, CompanionForm form) {
  if (alpha == cplx{}) throw InvalidArgument("scaling factor must be nonzero");
  Pencil f = frobenius_pencil(p, form);
  const std::size_t m = p.size(), n = f.size() / m;
  std::vector<cplx> powers(n);
  powers[0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) powers[i] = powers[i - 1] * alpha;
  for (std::size_t bi = 0; bi < n; ++bi)
    for (std::size_t bj = 0; bj < n; ++bj) {
      const cplx scale = powers[bj] / powers[bi];
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) {
          f.A0(bi * m + r, bj * m + c) *= scale;
          f.A1(bi * m + r, bj * m + c) *= scale;
        }
    }
  return f;
}

double fourier_similarity_check(const MatrixPolynomial& p, cplx alpha) {
  if (alpha == cplx{}) throw InvalidArgument("scaling factor must be nonzero");
  const int deg = p.degree();
  if (deg < 1) throw InvalidArgument("similarity check needs degree at least 1");
  const std::size_t m = p.size(), n = static_cast<std::size_t>(deg);
  if (!(p.leading() == ComplexMatrix::identity(m)))
    throw InvalidArgument("similarity check needs a monic polynomial");

  NodePlan plan = plan_fourier(n, alpha);
  SecularForm s = build_linear(p, plan.betas, cplx{});
  const ComplexMatrix a = secular_pencil(s).A0;

  // Omega (x) I with Omega_{ij} = w^{ij} / sqrt(n), i, j = 1..n.
  const std::size_t dim = n * m;
  ComplexMatrix omega(dim, dim);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double turns = static_cast<double>(((i + 1) * (j + 1)) % n) / static_cast<double>(n);
      const cplx w = std::polar(norm, 2.0 * std::numbers::pi * turns);
      for (std::size_t k = 0; k < m; ++k) omega(i * m + k, j * m + k) = w;
    }
  const ComplexMatrix conj = omega * a * omega.adjoint();
  const ComplexMatrix f = scaled_frobenius(p, alpha, CompanionForm::Row).A0;
  return (conj - f).norm_inf();
}

}  // namespace secular
