#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "secular/errors.hpp"
#include "secular/experiment.hpp"
#include "test_util.hpp"

using namespace secular;
namespace fs = std::filesystem;

TEST_CASE("generators are seeded") {
  Pcg64 a(7), b(7);
  auto p = generate_unbalanced_scalar(10, 12.0, a);
  auto q = generate_unbalanced_scalar(10, 12.0, b);
  CHECK(p.degree() == 10);
  CHECK(p.leading() == ComplexMatrix::identity(1));
  for (std::size_t i = 0; i < 11; ++i) CHECK(p.coeff(i) == q.coeff(i));
  Pcg64 c(8);
  auto m = generate_unbalanced_matrix(3, 4, 2.0, c);
  CHECK(m.size() == 4);
  CHECK(m.leading() == ComplexMatrix::identity(4));
}

TEST_CASE("all strategies agree on the spectrum of a mild problem") {
  Pcg64 rng(71);
  auto p = testutil::random_poly(2, 4, rng);
  ExperimentConfig cfg;
  auto out = run_strategies(p, cfg);
  REQUIRE(out.size() == 3);
  std::vector<cplx> ref;
  for (const auto& r : out[0].rows) ref.push_back(r.lambda);
  for (const auto& o : out) {
    REQUIRE_FALSE(o.error.has_value());
    std::vector<cplx> l;
    for (const auto& r : o.rows) {
      l.push_back(r.lambda);
      CHECK(r.residual < 1e-10);
      CHECK(r.cond_pencil >= 1.0);
    }
    CHECK(testutil::multiset_distance(l, ref) < 1e-8);
  }
  auto table = comparison_table(out);
  CHECK(table.rows() == 8);
  CHECK(table.str().rfind("lambda_re,lambda_im,cond_frobenius,cond_secular_fourier,cond_secular_tropical\r\n", 0) == 0);
}

TEST_CASE("strategy failures are recorded") {
  // Singular leading coefficient: the companion pencil is refused.
  auto p = MatrixPolynomial(2, {ComplexMatrix::identity(2), ComplexMatrix{{1, 0}, {0, 0}}});
  ExperimentConfig cfg;
  cfg.strategies = {"frobenius"};
  auto out = run_strategies(p, cfg);
  REQUIRE(out.size() == 1);
  CHECK(out[0].error.has_value());
  CHECK(out[0].error_code == "LeadingBlockSingular");
  CHECK(std::isnan(out[0].max_cond()));
}

TEST_CASE("config parsing") {
  auto cfg = parse_experiment_config(
      R"({"generator":"unbalanced-matrix","n":5,"m":3,"seed":4,"count":2,"sigma":1.5,)"
      R"("strategies":["frobenius"],"norm":"two","phase":"random","fourier_alpha":"2i"})");
  CHECK(cfg.generator == "unbalanced-matrix");
  CHECK(cfg.m == 3);
  CHECK(cfg.norm == NormKind::Two);
  CHECK(cfg.phase == PhaseMode::Random);
  CHECK(cfg.fourier_alpha == cplx(0, 2));
  for (const char* bad : {"[]", R"({"generator":"nope"})", R"({"strategies":["qz"]})",
                          R"({"n":0})", R"({"generator":"file"})", R"({"n":"x"})"}) {
    try {
      parse_experiment_config(bad);
      FAIL("expected a parse error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Parse);
    }
  }
}

TEST_CASE("experiment output is reproducible") {
  const fs::path base = fs::temp_directory_path() / "secular_experiment_test";
  fs::remove_all(base);
  ExperimentConfig cfg;
  cfg.n = 8;
  cfg.count = 2;
  cfg.seed = 3;
  cfg.output = (base / "a").string();
  auto first = run_experiment(cfg);
  cfg.output = (base / "b").string();
  auto second = run_experiment(cfg);
  REQUIRE(first.problems.size() == 2);
  CHECK(first.problems[1].seed == 4);
  for (const char* f : {"problem_000.csv", "problem_001.csv"}) {
    CHECK(fs::exists(base / "a" / f));
    CHECK(read_text_file((base / "a" / f).string()) == read_text_file((base / "b" / f).string()));
  }
  CHECK(fs::exists(base / "a" / "summary.json"));
  CHECK(first.json.find("\"problems\"") != std::string::npos);
  fs::remove_all(base);
}
