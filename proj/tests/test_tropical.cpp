#include <doctest.h>

#include <cmath>
#include <numbers>

#include "secular/eigen.hpp"
#include "secular/errors.hpp"
#include "secular/frobenius.hpp"
#include "secular/tropical.hpp"
#include "test_util.hpp"

using namespace secular;

namespace {

MatrixPolynomial scalar(std::initializer_list<cplx> c) {
  return MatrixPolynomial::from_entries(1, std::vector{ScalarPolynomial(c)});
}

}  // namespace

TEST_CASE("two separated scalar roots") {
  auto t = tropical_roots(scalar({1, 100, 1}));
  REQUIRE(t.roots.size() == 2);
  CHECK(t.roots[0].magnitude == doctest::Approx(100.0));
  CHECK(t.roots[0].multiplicity == 1);
  CHECK(t.roots[1].magnitude == doctest::Approx(0.01));
  CHECK(t.roots[1].multiplicity == 1);
}

TEST_CASE("flat hull gives one root of full multiplicity") {
  auto t = tropical_roots(scalar({1, 1, 1, 1, 1}));
  REQUIRE(t.roots.size() == 1);
  CHECK(t.roots[0].magnitude == doctest::Approx(1.0));
  CHECK(t.roots[0].multiplicity == 4);
}

TEST_CASE("zero coefficients are skipped") {
  auto t = tropical_roots(scalar({0, 0, 4, 0, 1}));
  CHECK(t.low == 2);
  CHECK(t.high == 4);
  REQUIRE(t.roots.size() == 1);
  CHECK(t.roots[0].magnitude == doctest::Approx(2.0));
  CHECK(t.total_multiplicity() == 2);
  CHECK_THROWS_AS(tropical_roots(scalar({0, 0, 3})), InvalidArgument);
}

TEST_CASE("integer degree-11 example: magnitudes and multiplicities") {
  const auto p = testutil::integer_poly();
  const double expected[] = {1.2664e4, 0.9347, 1.1786e-4};
  const int mult[] = {2, 7, 2};
  auto two = tropical_roots(p, NormKind::Two);
  REQUIRE(two.roots.size() == 3);
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(two.roots[k].magnitude - expected[k]) <= 0.1 * expected[k]);
    CHECK(two.roots[k].multiplicity == mult[k]);
  }
  for (auto kind : {NormKind::Infinity, NormKind::Frobenius}) {
    auto t = tropical_roots(p, kind);
    REQUIRE(t.roots.size() == 3);
    for (int k = 0; k < 3; ++k) CHECK(t.roots[k].multiplicity == mult[k]);
  }
}

TEST_CASE("property: scaling covariance") {
  Pcg64 rng(51);
  for (int t = 0; t < 10; ++t) {
    auto p = testutil::random_poly(2, 6, rng, false);
    const double c = std::exp(3.0 * rng.normal());
    std::vector<ComplexMatrix> sc(p.coeffs().begin(), p.coeffs().end());
    for (std::size_t i = 0; i < sc.size(); ++i) sc[i] *= std::pow(c, static_cast<double>(i));
    auto a = tropical_roots(p);
    auto b = tropical_roots(MatrixPolynomial(2, sc));
    REQUIRE(a.roots.size() == b.roots.size());
    for (std::size_t k = 0; k < a.roots.size(); ++k) {
      CHECK(b.roots[k].magnitude * c == doctest::Approx(a.roots[k].magnitude).epsilon(1e-9));
      CHECK(b.roots[k].multiplicity == a.roots[k].multiplicity);
    }
    CHECK(a.total_multiplicity() == a.high - a.low);
  }
}

TEST_CASE("property: well separated roots are estimated within the degree bound") {
  // Scalar roots 1e4, 1, 1e-4: tropical roots match up to a modest factor.
  std::vector<cplx> r = {1e4, 1.0, 1e-4};
  auto p = MatrixPolynomial::from_entries(1, std::vector{ScalarPolynomial::from_roots(r)});
  auto t = tropical_roots(p);
  REQUIRE(t.roots.size() == 3);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(std::log10(t.roots[k].magnitude) - std::log10(std::abs(r[k]))) < 0.01);
}

TEST_CASE("Pellet annulus encloses the eigenvalues") {
  Pcg64 rng(52);
  for (int t = 0; t < 5; ++t) {
    auto p = testutil::random_poly(2, 4, rng, false);
    auto ann = pellet_annulus(p);
    REQUIRE(ann.has_value());
    CHECK(ann->first <= ann->second);
    for (cplx l : eig_pencil(frobenius_pencil(p)).eigenvalues) {
      CHECK(std::abs(l) >= ann->first * (1 - 1e-9));
      CHECK(std::abs(l) <= ann->second * (1 + 1e-9));
    }
  }
  auto p = scalar({1, 100, 1});
  auto ann = pellet_annulus(p);
  REQUIRE(ann.has_value());
  // Roots are about 0.0100 and 99.99.
  CHECK(ann->first <= 0.0100011);
  CHECK(ann->second >= 99.98);
  CHECK(ann->first == doctest::Approx(0.01).epsilon(0.01));
  auto sing = MatrixPolynomial(2, {ComplexMatrix{{1, 0}, {0, 0}}, ComplexMatrix::identity(2)});
  CHECK_FALSE(pellet_annulus(sing).has_value());
}

TEST_CASE("integer example Pellet bounds") {
  auto ann = pellet_annulus(testutil::integer_poly());
  REQUIRE(ann.has_value());
  CHECK(ann->first == doctest::Approx(5e-5).epsilon(1e-3));
  CHECK(ann->second == doctest::Approx(31622.8).epsilon(1e-3));
}

TEST_CASE("node plans") {
  auto f = plan_fourier(4, 2.0);
  REQUIRE(f.betas.size() == 4);
  CHECK(std::abs(f.betas[0] - cplx(0, 2)) < 1e-14);
  CHECK(std::abs(f.betas[3] - cplx(2, 0)) < 1e-14);
  CHECK_THROWS_AS(plan_fourier(0), InvalidArgument);
  CHECK_THROWS_AS(plan_fourier(3, 0.0), InvalidArgument);

  auto t = tropical_roots(testutil::integer_poly());
  auto plan = plan_tropical(t, 11);
  CHECK(plan.betas.size() == 11);
  CHECK(nodes_distinct(plan.betas));
  CHECK(std::abs(std::abs(plan.betas[0]) - t.roots[0].magnitude) < 1e-9 * t.roots[0].magnitude);
  auto r1 = plan_tropical(t, 11, PhaseMode::Random, 9);
  auto r2 = plan_tropical(t, 11, PhaseMode::Random, 9);
  CHECK(r1.betas == r2.betas);
  try {
    plan_tropical(t, 10);
    FAIL("expected MultiplicityMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MultiplicityMismatch);
  }
  TropicalRoots zero;
  zero.roots = {{0.0, 2}};
  try {
    plan_tropical(zero, 2);
    FAIL("expected NodeCollision");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NodeCollision);
  }
  CHECK_THROWS(plan_manual({1.0, 2.0, 1.0}));
  CHECK(plan_manual({1.0, 2.0}).strategy == NodeStrategy::Manual);
}

TEST_CASE("norm names") {
  CHECK(parse_norm_kind("two") == NormKind::Two);
  CHECK(parse_norm_kind("fro") == NormKind::Frobenius);
  CHECK(std::string(to_string(NormKind::Infinity)) == "inf");
  CHECK_THROWS_AS(parse_norm_kind("max"), InvalidArgument);
}

TEST_CASE("Pellet bounds for small examples") {
  std::vector<ScalarPolynomial> e = {ScalarPolynomial{-1, 1}, ScalarPolynomial{}, ScalarPolynomial{},
                                     ScalarPolynomial{-2, 1}};
  auto a = pellet_annulus(MatrixPolynomial::from_entries(2, e));
  REQUIRE(a.has_value());
  // The bounds touch the eigenvalues 1 and 2; allow for rounding in the bisection.
  CHECK(a->first <= 1.0 * (1 + 1e-12));
  CHECK(a->second >= 2.0 * (1 - 1e-12));

  auto b = pellet_annulus(scalar({1, -10, 1}));
  REQUIRE(b.has_value());
  CHECK(b->first < 0.11);
  CHECK(b->first <= 0.10102);
  CHECK(b->second > 9.8);

  auto c = pellet_annulus(scalar({1, 1, 1, 1, 1, 1}));
  if (c) {
    CHECK(c->first <= 1.0);
    CHECK(c->second >= 1.0);
  }
}

TEST_CASE("manual nodes are accepted verbatim") {
  std::vector<cplx> b = {1.7e-4, 1.4e-3, -1.4e-3, 5.0};
  auto plan = plan_manual(b);
  CHECK(plan.betas == b);
}

TEST_CASE("tropical placement for two separated roots") {
  auto t = tropical_roots(scalar({1, 100, 1}));
  auto plan = plan_tropical(t, 2);
  REQUIRE(plan.betas.size() == 2);
  CHECK(std::abs(plan.betas[0]) == doctest::Approx(100.0));
  CHECK(std::abs(plan.betas[1]) == doctest::Approx(0.01));
  CHECK(nodes_distinct(plan.betas));
}

TEST_CASE("property: group magnitudes follow the geometric mean of the root moduli") {
  Pcg64 rng(53);
  const std::vector<double> moduli = {1e8, 1e8, 1.0, 1.0, 1e-8};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> r;
    for (double mod : moduli) r.push_back(std::polar(mod, 2.0 * std::numbers::pi * rng.uniform()));
    auto p = MatrixPolynomial::from_entries(1, std::vector{ScalarPolynomial::from_roots(r)});
    auto t = tropical_roots(p);
    // Attribute each tropical root to the nearest group on the log scale.
    const double centers[] = {1e8, 1.0, 1e-8};
    int mult[3] = {0, 0, 0};
    for (const auto& tr : t.roots) {
      int g = 0;
      for (int k = 1; k < 3; ++k)
        if (std::abs(std::log(tr.magnitude / centers[k])) < std::abs(std::log(tr.magnitude / centers[g])))
          g = k;
      mult[g] += tr.multiplicity;
      CHECK(tr.magnitude <= 2.0 * centers[g]);
      CHECK(tr.magnitude >= 0.5 * centers[g]);
    }
    CHECK(mult[0] == 2);
    CHECK(mult[1] == 2);
    CHECK(mult[2] == 1);
  }
}
