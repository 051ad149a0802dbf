#include <doctest.h>

#include <cmath>
#include <numbers>

#include "secular/errors.hpp"
#include "secular/modarith.hpp"
#include "secular/secular_form.hpp"
#include "test_util.hpp"

using namespace secular;
using testutil::crandn;

namespace {

BlockSpec quartic_blocks() {
  BlockSpec spec;
  spec.blocks = {ScalarPolynomial{-2, 0, 1}, ScalarPolynomial{2, 0, 1}};
  spec.shift = 1.0;
  return spec;
}

// Pairwise coprime monic blocks with random simple roots and the given degrees.
std::vector<ScalarPolynomial> random_blocks(const std::vector<int>& degrees, Pcg64& rng) {
  std::vector<ScalarPolynomial> out;
  for (int d : degrees) {
    std::vector<cplx> r(static_cast<std::size_t>(d));
    for (cplx& z : r) z = crandn(rng);
    out.push_back(ScalarPolynomial::from_roots(r));
  }
  return out;
}

ScalarPolynomial ps(std::initializer_list<cplx> c) { return ScalarPolynomial(c); }

}  // namespace

TEST_CASE("worked 2x2 quartic example: weights") {
  auto s = build_ellification(testutil::quartic_poly(), quartic_blocks());
  REQUIRE(s.block_count() == 2);
  const auto& w1 = s.weights()[0];
  const auto& w2 = s.weights()[1];
  ComplexMatrix w10{{1.2, -1}, {0, -1}}, w11{{0, 0}, {0.2, 2}};
  ComplexMatrix w20{{-2.2, 0}, {0, -1}}, w21{{0, 0}, {-0.2, 1}};
  CHECK(testutil::max_abs_diff(w1.coeff(0), w10) <= 1e-12);
  CHECK(testutil::max_abs_diff(w1.coeff(1), w11) <= 1e-12);
  CHECK(testutil::max_abs_diff(w2.coeff(0), w20) <= 1e-12);
  CHECK(testutil::max_abs_diff(w2.coeff(1), w21) <= 1e-12);
}

TEST_CASE("worked 2x2 quartic example: assembled quadratization") {
  auto s = build_ellification(testutil::quartic_poly(), quartic_blocks());
  const ScalarPolynomial z{};
  std::vector<ScalarPolynomial> e = {
      ps({-0.8, 0, 1}), ps({-1}),         ps({-2.2}),        z,
      ps({0, 0.2}),     ps({-3, 2, 1}),   ps({0, -0.2}),     ps({-1, 1}),
      ps({1.2}),        ps({-1}),         ps({0.8, 0, 1}),   z,
      ps({0, 0.2}),     ps({-1, 2}),      ps({0, -0.2}),     ps({0, 1})};
  auto expected = MatrixPolynomial::from_entries(4, e);
  auto a = assemble_dense(s);
  CHECK(a.degree() == 2);
  for (std::size_t k = 0; k < 3; ++k)
    CHECK(testutil::max_abs_diff(a.coeff(k), expected.coeff(k)) <= 1e-12);
  CHECK(testutil::max_abs_diff(eval(a, cplx(0.3, 1.1)), s.assembled_at(cplx(0.3, 1.1))) < 1e-12);
}

TEST_CASE("shift validation on the worked example") {
  const ComplexMatrix lead{{1, 0}, {0, 0}};
  auto rep = validate_shift(lead, quartic_blocks());
  CHECK(rep.acceptable);
  CHECK(rep.min_margin == doctest::Approx(1.0));
  BlockSpec zero = quartic_blocks();
  zero.shift = 0.0;
  CHECK_FALSE(validate_shift(lead, zero).acceptable);
  CHECK_THROWS_AS(build_ellification(testutil::quartic_poly(), zero), SingularAtNode);
  // Default picks a nonzero shift because P_n is singular.
  cplx d = default_shift(lead, quartic_blocks().blocks);
  CHECK(std::abs(d) > 0.0);
}

TEST_CASE("property: reconstruction identity on random cases") {
  Pcg64 rng(101);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t q = 2 + rng.next() % 3;
    const std::size_t n = q + rng.next() % (9 - q);
    const std::size_t m = 1 + rng.next() % 4;
    std::vector<int> deg(q, 1);
    for (std::size_t extra = n - q; extra > 0; --extra) ++deg[rng.next() % q];
    auto p = testutil::random_poly(m, n, rng, trial % 2 == 0);
    auto s = build_ellification(p, random_blocks(deg, rng));
    CHECK(verify_reconstruction(p, s, 2 * n + 2, 7) <= 1e-10);
    CHECK(determinant_ratio_spread(p, s, n * m + 1, 7) <= 1e-6);
    for (std::size_t i = 0; i < q; ++i) CHECK(s.weights()[i].degree() < deg[i]);
  }
}

TEST_CASE("reconstruction check rejects corrupted weights") {
  auto p = testutil::quartic_poly();
  auto s = build_ellification(p, quartic_blocks());
  std::vector<MatrixPolynomial> w(s.weights().begin(), s.weights().end());
  std::vector<ComplexMatrix> c(w[0].coeffs().begin(), w[0].coeffs().end());
  c[0](0, 0) += 0.5;
  w[0] = MatrixPolynomial(2, c);
  SecularForm bad(s.spec(), s.leading(), w);
  CHECK(verify_reconstruction(p, bad, 10, 1) > 1e-3);
  CHECK_THROWS_AS(verify_reconstruction(p, s, 4, 1), InvalidArgument);
}

TEST_CASE("construction is deterministic") {
  Pcg64 rng(5);
  auto p = testutil::random_poly(3, 4, rng);
  auto blocks = random_blocks({2, 1, 1}, rng);
  auto a = build_ellification(p, blocks);
  auto b = build_ellification(p, blocks);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < a.weights()[i].coeff_count(); ++k)
      CHECK(a.weights()[i].coeff(k) == b.weights()[i].coeff(k));
}

TEST_CASE("trivial polynomial gives zero weights") {
  // P = (x - 1)(x + 1) I with b_1 = x - 1, b_2 = x + 1, s = 0.
  std::vector<ScalarPolynomial> e = {ps({-1, 0, 1}), ScalarPolynomial{}, ScalarPolynomial{},
                                     ps({-1, 0, 1})};
  auto p = MatrixPolynomial::from_entries(2, e);
  BlockSpec spec;
  spec.blocks = {ps({-1, 1}), ps({1, 1})};
  auto s = build_ellification(p, spec);
  for (const auto& w : s.weights()) CHECK(w.coeff(0).max_abs() < 1e-14);
}

TEST_CASE("validation errors") {
  auto p = testutil::quartic_poly();
  // x^2 - 1 and x^2 + x share x + 1.
  BlockSpec shared;
  shared.blocks = {ps({-1, 0, 1}), ps({0, 1, 1})};
  shared.shift = 1.0;
  CHECK_THROWS_AS(build_ellification(p, shared), NotCoprime);
  BlockSpec short_spec;
  short_spec.blocks = {ps({-1, 1}), ps({2, 1})};
  short_spec.shift = 1.0;
  try {
    build_ellification(p, short_spec);
    FAIL("expected DegreeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeMismatch);
  }
  BlockSpec nonmonic;
  nonmonic.blocks = {ps({-2, 0, 2}), ps({2, 0, 1})};
  CHECK_THROWS_AS(build_ellification(p, nonmonic), InvalidArgument);
}

TEST_CASE("linear blocks: closed-form scalar weights") {
  std::vector<cplx> r = {1.0, 2.0, 3.0};
  auto p = MatrixPolynomial::from_entries(1, std::vector{ScalarPolynomial::from_roots(r)});
  std::vector<cplx> betas = {0.0, 4.0, 5.0};
  auto s = build_linear(p, betas, cplx{});
  CHECK(std::abs(s.weights()[0].coeff(0)(0, 0) - (-0.3)) < 1e-14);
  CHECK(std::abs(s.weights()[1].coeff(0)(0, 0) - (-1.5)) < 1e-14);
  CHECK(std::abs(s.weights()[2].coeff(0)(0, 0) - 4.8) < 1e-14);
  CHECK(s.is_linear());
}

TEST_CASE("property: scalar secular equation") {
  Pcg64 rng(77);
  auto p = testutil::random_poly(1, 6, rng);
  std::vector<cplx> betas(6);
  for (cplx& b : betas) b = crandn(rng) * 2.0;
  auto s = build_linear(p, betas, cplx{});
  for (int t = 0; t < 5; ++t) {
    cplx x = crandn(rng) * 3.0;
    cplx lhs = eval(p, x)(0, 0);
    cplx prod = 1.0, sum = 1.0;
    for (std::size_t i = 0; i < 6; ++i) {
      prod *= x - betas[i];
      sum += s.weights()[i].coeff(0)(0, 0) / (x - betas[i]);
    }
    CHECK(std::abs(lhs - prod * sum) < 1e-9 * std::abs(lhs));
  }
}

TEST_CASE("linear blocks at roots of unity scale P by the node") {
  Pcg64 rng(78);
  const std::size_t n = 5;
  auto p = testutil::random_poly(2, n, rng);
  std::vector<cplx> betas(n);
  for (std::size_t j = 0; j < n; ++j)
    betas[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j + 1) / n);
  auto s = build_linear(p, betas, cplx{});
  for (std::size_t j = 0; j < n; ++j) {
    ComplexMatrix expect = eval(p, betas[j]) * (betas[j] / static_cast<double>(n));
    CHECK(testutil::max_abs_diff(s.weights()[j].coeff(0), expect) < 1e-12);
  }
}

TEST_CASE("linear blocks: node errors and reconstruction with a shift") {
  Pcg64 rng(79);
  auto p = testutil::random_poly(2, 3, rng, false);
  std::vector<cplx> dup = {1.0, 2.0, 1.0};
  try {
    build_linear(p, dup);
    FAIL("expected DuplicateNode");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DuplicateNode);
  }
  std::vector<cplx> two = {1.0, 2.0};
  CHECK_THROWS(build_linear(p, two));
  std::vector<cplx> betas = {1.0, cplx(0, 2), -3.0};
  auto s = build_linear(p, betas);
  CHECK(verify_reconstruction(p, s, 8, 3) <= 1e-10);
  CHECK(determinant_ratio_spread(p, s, 7, 3) <= 1e-6);

  // Singular leading coefficient with s = 0 is refused.
  std::vector<ScalarPolynomial> e = {ps({1, 0, 0, 1}), ps({1}), ps({0, 1}), ps({2})};
  auto sing = MatrixPolynomial::from_entries(2, e);
  CHECK_THROWS_AS(build_linear(sing, betas, cplx{}), SingularAtNode);
  auto ok = build_linear(sing, betas);
  CHECK(verify_reconstruction(sing, ok, 8, 3) <= 1e-10);
}

TEST_CASE("sparse assembly has the same determinant") {
  auto s = build_ellification(testutil::quartic_poly(), quartic_blocks());
  auto dense = assemble_dense(s);
  auto sparse = assemble_sparse(s);
  for (cplx x : {cplx(0.5, 0.2), cplx(-1.3, 0.7), cplx(2.0, -1.0)}) {
    cplx dd = LuDecomposition(eval(dense, x)).determinant();
    cplx ds = LuDecomposition(eval(sparse, x)).determinant();
    CHECK(std::abs(dd - ds) < 1e-10 * std::abs(dd));
  }
  // First block row is [B_1 + W_1, W_2].
  ComplexMatrix top = eval(sparse, 0.7).block(0, 0, 2, 2);
  CHECK(testutil::max_abs_diff(top, s.block_at(0, 0.7) + s.weight_at(0, 0.7)) < 1e-13);
}

TEST_CASE("strongness detector") {
  auto p = testutil::quartic_poly();
  auto s = build_ellification(p, quartic_blocks());
  auto rep = check_strong(s);
  CHECK(rep.strong);
  CHECK(rep.reversed_margin == doctest::Approx(0.5));

  BlockSpec zero_root;
  zero_root.blocks = {ps({0, -1, 1}), ps({2, 0, 1})};
  zero_root.shift = 1.0;
  auto rz = check_strong(build_ellification(p, zero_root));
  CHECK_FALSE(rz.strong);
  CHECK_FALSE(rz.nonzero_constants);

  BlockSpec mixed;
  mixed.blocks = {ps({-1, 1}), ScalarPolynomial::from_roots(std::vector<cplx>{-1.0, 2.0, 3.0})};
  mixed.shift = 1.0;
  auto rm = check_strong(build_ellification(p, mixed));
  CHECK_FALSE(rm.strong);
  CHECK_FALSE(rm.equal_degrees);
  CHECK(rm.note.find("infinite eigenvalues") != std::string::npos);
}

TEST_CASE("adversarial leading coefficient gives a zero margin") {
  // lambda = -s / b_q(sqrt 2) = -1/4 is an eigenvalue of P_n.
  const ComplexMatrix lead{{-0.25, 0}, {0, 1}};
  auto rep = validate_shift(lead, quartic_blocks());
  CHECK_FALSE(rep.acceptable);
  CHECK(rep.min_margin < 1e-15);
}

TEST_CASE("degree-2 blocks with roots on three circles") {
  Pcg64 rng(102);
  auto p = testutil::random_poly(3, 6, rng);
  std::vector<ScalarPolynomial> blocks;
  for (double r : {0.5, 1.0, 2.0}) {
    const double t = 2.0 * std::numbers::pi * rng.uniform();
    std::vector<cplx> z = {std::polar(r, t), std::polar(r, t + 2.0)};
    blocks.push_back(ScalarPolynomial::from_roots(z));
  }
  auto s = build_ellification(p, blocks);
  CHECK(verify_reconstruction(p, s, 13, 11) < 1e-10);
}

TEST_CASE("worked example weights as printed reconstruct P") {
  std::vector<MatrixPolynomial> w = {
      MatrixPolynomial(2, {ComplexMatrix{{1.2, -1}, {0, -1}}, ComplexMatrix{{0, 0}, {0.2, 2}}}),
      MatrixPolynomial(2, {ComplexMatrix{{-2.2, 0}, {0, -1}}, ComplexMatrix{{0, 0}, {-0.2, 1}}})};
  SecularForm s(quartic_blocks(), ComplexMatrix{{1, 0}, {0, 0}}, w);
  CHECK(verify_reconstruction(testutil::quartic_poly(), s, 9, 2) < 1e-12);
}

TEST_CASE("scalar linear form is x I - diag(beta) + e w^t") {
  Pcg64 rng(103);
  auto p = testutil::random_poly(1, 4, rng);
  std::vector<cplx> betas = {1.0, -1.0, cplx(0, 2), 3.0};
  auto s = build_linear(p, betas, cplx{});
  auto a = assemble_dense(s);
  CHECK(a.coeff(1) == ComplexMatrix::identity(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      cplx expect = s.weights()[j].coeff(0)(0, 0) - (i == j ? betas[i] : cplx{});
      CHECK(std::abs(a.coeff(0)(i, j) - expect) < 1e-14);
    }
}

TEST_CASE("sparse form of the worked example") {
  auto s = build_ellification(testutil::quartic_poly(), quartic_blocks());
  auto h = assemble_sparse(s);
  for (cplx x : {cplx(0.3), cplx(1, 2)}) {
    ComplexMatrix blk = eval(h, x).block(2, 0, 2, 2);
    CHECK(testutil::max_abs_diff(blk, ComplexMatrix::identity(2) * -(x * x - 2.0)) < 1e-13);
  }
  Pcg64 rng(104);
  auto dense = assemble_dense(s);
  for (int t = 0; t < 5; ++t) {
    cplx x = crandn(rng);
    cplx dd = LuDecomposition(eval(dense, x)).determinant();
    cplx ds = LuDecomposition(eval(h, x)).determinant();
    CHECK(std::abs(dd - ds) < 1e-10 * (1 + std::abs(dd)));
  }
}
