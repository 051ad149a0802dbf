#include <doctest.h>

#include <cmath>

#include "secular/errors.hpp"
#include "secular/polycore.hpp"
#include "test_util.hpp"

using namespace secular;
using testutil::crandn;

TEST_CASE("matrix construction rejects bad input") {
  CHECK_THROWS_AS(ComplexMatrix(2, 2, std::vector<cplx>(3)), InvalidArgument);
  CHECK_THROWS_AS(ComplexMatrix(1, 1, {cplx(NAN, 0.0)}), InvalidArgument);
  CHECK_THROWS_AS(ComplexMatrix(1, 1, {cplx(0.0, INFINITY)}), InvalidArgument);
  CHECK(ComplexMatrix::identity(3).norm_inf() == 1.0);
}

TEST_CASE("matrix norms") {
  ComplexMatrix a{{1, -2}, {cplx(0, 3), 4}};
  CHECK(a.norm_inf() == doctest::Approx(7.0));
  CHECK(a.norm_one() == doctest::Approx(6.0));
  CHECK(a.norm_fro() == doctest::Approx(std::sqrt(30.0)));
  CHECK(a.max_abs() == 4.0);
}

TEST_CASE("matrix product agrees with Eigen") {
  Pcg64 rng(11);
  auto a = testutil::random_matrix(5, rng);
  auto b = testutil::random_matrix(5, rng);
  Eigen::MatrixXcd ref = testutil::to_eigen(a) * testutil::to_eigen(b);
  ComplexMatrix c = a * b;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(std::abs(c(i, j) - ref(i, j)) < 1e-13);
}

TEST_CASE("LU solve, inverse, adjoint solve and determinant against Eigen") {
  Pcg64 rng(3);
  for (std::size_t n : {1u, 2u, 7u, 20u}) {
    auto a = testutil::random_matrix(n, rng);
    std::vector<cplx> b(n);
    for (cplx& z : b) z = crandn(rng);
    LuDecomposition lu(a);
    auto ea = testutil::to_eigen(a);
    Eigen::VectorXcd eb = Eigen::Map<Eigen::VectorXcd>(b.data(), n);
    Eigen::VectorXcd x = ea.partialPivLu().solve(eb);
    Eigen::VectorXcd y = ea.adjoint().partialPivLu().solve(eb);
    auto xs = lu.solve(b);
    auto ys = lu.solve_adjoint(b);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(xs[i] - x(i)) < 1e-10 * (1 + std::abs(x(i))));
      CHECK(std::abs(ys[i] - y(i)) < 1e-10 * (1 + std::abs(y(i))));
    }
    CHECK(std::abs(lu.determinant() - testutil::oracle_det(a)) <
          1e-10 * std::abs(testutil::oracle_det(a)));
    CHECK(testutil::max_abs_diff(a * lu.inverse(), ComplexMatrix::identity(n)) < 1e-10);
  }
}

TEST_CASE("LU flags a singular matrix") {
  ComplexMatrix a{{1, 2}, {2, 4}};
  CHECK(LuDecomposition(a).singular(kSingularPivotTolerance));
  CHECK_FALSE(LuDecomposition(ComplexMatrix::identity(2)).singular(kSingularPivotTolerance));
}

TEST_CASE("scalar polynomial basics") {
  ScalarPolynomial p{1, 0, 0};
  CHECK(p.degree() == 0);
  CHECK(ScalarPolynomial{}.degree() == -1);
  ScalarPolynomial q{-2, 0, 1};
  CHECK(q(3.0) == cplx(7.0));
  CHECK(q.derivative() == ScalarPolynomial{0, 2});
  CHECK(q.reversed(3) == ScalarPolynomial{0, 1, 0, -2});
  CHECK_THROWS_AS(q.reversed(1), InvalidArgument);
  CHECK((ScalarPolynomial{2, 4} * 0.5).is_monic() == false);
  CHECK(ScalarPolynomial{2, 4}.monic() == ScalarPolynomial{0.5, 1});
  std::vector<cplx> r = {1.0, 2.0, 3.0};
  CHECK(ScalarPolynomial::from_roots(r) == ScalarPolynomial{-6, 11, -6, 1});
}

TEST_CASE("property: a = q b + r with deg r < deg b") {
  Pcg64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<cplx> ca(1 + rng.next() % 9), cb(1 + rng.next() % 5);
    for (cplx& z : ca) z = crandn(rng);
    for (cplx& z : cb) z = crandn(rng);
    ScalarPolynomial a(ca), b(cb);
    auto [q, r] = divmod(a, b);
    CHECK(r.degree() < b.degree());
    ScalarPolynomial back = q * b + r;
    for (int i = 0; i <= a.degree(); ++i)
      CHECK(std::abs(back[static_cast<std::size_t>(i)] - a[static_cast<std::size_t>(i)]) < 1e-9);
  }
  CHECK_THROWS_AS(divmod(ScalarPolynomial{1}, ScalarPolynomial{}), InvalidArgument);
}

TEST_CASE("matrix polynomial evaluation matches the power sum") {
  Pcg64 rng(8);
  auto p = testutil::random_poly(3, 5, rng, false);
  cplx x(0.7, -1.3);
  ComplexMatrix sum(3, 3);
  cplx xp = 1.0;
  for (std::size_t i = 0; i < p.coeff_count(); ++i, xp *= x) sum += p.coeff(i) * xp;
  CHECK(testutil::max_abs_diff(eval(p, x), sum) < 1e-12 * sum.max_abs());
  CHECK(p.degree() == 5);
  CHECK(p.leading() == p.coeff(5));
  CHECK(p.coeff(42).is_zero());
}

TEST_CASE("property: reverse(P, k)(x) = x^k P(1/x)") {
  Pcg64 rng(9);
  auto p = testutil::random_poly(2, 4, rng, false);
  for (std::size_t k : {4u, 6u}) {
    auto r = reverse(p, k);
    cplx x(0.4, 0.9);
    ComplexMatrix lhs = eval(r, x);
    ComplexMatrix rhs = eval(p, 1.0 / x) * std::pow(x, static_cast<int>(k));
    CHECK(testutil::max_abs_diff(lhs, rhs) < 1e-11 * rhs.max_abs());
  }
  CHECK_THROWS_AS(reverse(p, 3), InvalidArgument);
}

TEST_CASE("derivative and entry access") {
  auto p = testutil::quartic_poly();
  CHECK(p.entry(0, 0) == ScalarPolynomial{2, 0, 0, 0, 1});
  auto dp = p.derivative();
  CHECK(dp.entry(1, 1) == ScalarPolynomial{0, 0, 3});
  CHECK(dp.entry(0, 1).is_zero());
}

TEST_CASE("regularity test") {
  auto p = testutil::quartic_poly();
  CHECK(is_regular(p, 9, 1));
  // [[x, x], [x, x]] has det identically zero.
  std::vector<ScalarPolynomial> e(4, ScalarPolynomial{0, 1});
  auto s = MatrixPolynomial::from_entries(2, e);
  CHECK_FALSE(is_regular(s, 3, 1));
  CHECK_THROWS_AS(is_regular(p, 8, 1), InvalidArgument);
}

TEST_CASE("rng is deterministic") {
  Pcg64 a(42), b(42), c(43);
  for (int i = 0; i < 10; ++i) {
    auto x = a.next();
    CHECK(x == b.next());
    CHECK(x != c.next());
  }
}

TEST_CASE("worked example: constant and reversed terms") {
  auto p = testutil::quartic_poly();
  CHECK(eval(p, 0.0) == (ComplexMatrix{{2, -1}, {0, -1}}));
  CHECK(reverse(p, 4).coeff(0) == (ComplexMatrix{{1, 0}, {0, 0}}));
}

TEST_CASE("2x2 cubic at 1+i matches the power sum") {
  Pcg64 rng(12);
  auto p = testutil::random_poly(2, 3, rng, false);
  const cplx x(1, 1);
  ComplexMatrix sum(2, 2);
  for (std::size_t i = 0; i < 4; ++i) sum += p.coeff(i) * std::pow(x, static_cast<int>(i));
  CHECK(testutil::max_abs_diff(eval(p, x), sum) <= 1e-14 * sum.max_abs());
}
