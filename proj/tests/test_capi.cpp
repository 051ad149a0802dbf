#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include <json.hpp>

#include "secular/secular.h"

namespace {

// P(x) = [[x^4 + 2, -1], [x, x^3 - 1]] as interleaved coefficient data.
sec_poly* quartic() {
  double c[5][8] = {};
  c[0][0] = 2;   // P0(0,0)
  c[0][2] = -1;  // P0(0,1)
  c[0][6] = -1;  // P0(1,1)
  c[1][4] = 1;   // P1(1,0)
  c[3][6] = 1;   // P3(1,1)
  c[4][0] = 1;   // P4(0,0)
  sec_poly* p = nullptr;
  REQUIRE(sec_poly_create(2, 4, &c[0][0], &p) == SEC_OK);
  return p;
}

}  // namespace

TEST_CASE("polynomial handle basics") {
  sec_poly* p = quartic();
  CHECK(sec_poly_size(p) == 2);
  CHECK(sec_poly_degree(p) == 4);
  char* json = nullptr;
  REQUIRE(sec_poly_to_json(p, &json) == SEC_OK);
  sec_poly* q = nullptr;
  CHECK(sec_poly_from_json(json, &q) == SEC_OK);
  CHECK(sec_poly_degree(q) == 4);
  sec_string_free(json);
  sec_poly_free(q);
  sec_poly_free(p);
  sec_poly_free(nullptr);
}

TEST_CASE("building the worked quadratization") {
  sec_poly* p = quartic();
  const double shift[2] = {1.0, 0.0};
  sec_form* f = nullptr;
  REQUIRE(sec_form_build(p, "poly:1,0,-2;1,0,2", shift, nullptr, &f) == SEC_OK);
  CHECK(sec_form_block_count(f) == 2);
  double w[8];
  REQUIRE(sec_form_weight(f, 0, 0, w) == SEC_OK);
  CHECK(std::abs(w[0] - 1.2) < 1e-12);
  CHECK(std::abs(w[2] + 1.0) < 1e-12);
  REQUIRE(sec_form_weight(f, 1, 1, w) == SEC_OK);
  CHECK(std::abs(w[4] + 0.2) < 1e-12);
  CHECK(std::abs(w[6] - 1.0) < 1e-12);
  REQUIRE(sec_form_weight(f, 1, 5, w) == SEC_OK);
  CHECK(w[0] == 0.0);
  CHECK(sec_form_weight(f, 2, 0, w) == SEC_ERR_INVALID_ARGUMENT);
  double res = 1.0;
  REQUIRE(sec_form_residual(p, f, &res) == SEC_OK);
  CHECK(res <= 1e-10);
  char* strong = nullptr;
  REQUIRE(sec_form_strongness_json(f, &strong) == SEC_OK);
  CHECK(nlohmann::json::parse(strong)["strong"] == true);
  sec_string_free(strong);

  char* json = nullptr;
  REQUIRE(sec_form_to_json(f, p, SEC_FORM_JSON_SPARSE, &json) == SEC_OK);
  CHECK(nlohmann::json::parse(json)["assembled"]["kind"] == "sparse");
  sec_form* g = nullptr;
  REQUIRE(sec_form_from_json(json, &g) == SEC_OK);
  REQUIRE(sec_form_residual(p, g, &res) == SEC_OK);
  CHECK(res <= 1e-10);
  sec_string_free(json);
  sec_form_free(g);
  sec_form_free(f);
  sec_poly_free(p);
}

TEST_CASE("errors carry codes and JSON details") {
  sec_poly* p = quartic();
  sec_form* f = nullptr;
  const double shift[2] = {1.0, 0.0};
  // x^2 - 1 and x^2 + x share the factor x + 1.
  CHECK(sec_form_build(p, "poly:1,0,-1;1,1,0", shift, nullptr, &f) == SEC_ERR_NOT_COPRIME);
  CHECK(f == nullptr);
  CHECK(nlohmann::json::parse(sec_last_error_json()).contains("gcd"));
  CHECK(std::string(sec_status_name(SEC_ERR_NOT_COPRIME)) == "NotCoprime");
  CHECK(sec_status_exit_code(SEC_ERR_NOT_COPRIME) == 2);
  CHECK(sec_status_exit_code(SEC_ERR_CONVERGENCE) == 3);
  CHECK(sec_status_exit_code(SEC_ERR_IO) == 4);
  CHECK(sec_status_exit_code(SEC_OK) == 0);

  CHECK(sec_form_build(p, "linear:1,2,3", nullptr, nullptr, &f) == SEC_ERR_DEGREE_MISMATCH);
  CHECK(sec_form_build(p, "linear:1,2,1,3", nullptr, nullptr, &f) == SEC_ERR_DUPLICATE_NODE);
  CHECK(sec_form_build(p, "bogus", nullptr, nullptr, &f) == SEC_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(sec_last_error()) > 0);
  CHECK(sec_form_build(nullptr, "fourier:4", nullptr, nullptr, &f) == SEC_ERR_INVALID_ARGUMENT);
  CHECK(sec_poly_load("/nonexistent.json", &p) == SEC_ERR_IO);
  CHECK(sec_poly_from_json("{", &p) == SEC_ERR_PARSE);
  sec_poly_free(p);
}

TEST_CASE("eigenvalues through the C API") {
  // x^2 - 3x + 2
  const double c[6] = {2, 0, -3, 0, 1, 0};
  sec_poly* p = nullptr;
  REQUIRE(sec_poly_create(1, 2, c, &p) == SEC_OK);
  for (const char* method : {"frobenius", "secular:fourier:2", "secular:tropical"}) {
    sec_eig* e = nullptr;
    REQUIRE(sec_eig_solve(p, method, nullptr, &e) == SEC_OK);
    REQUIRE(sec_eig_count(e) == 2);
    double re, im, cp, cq, r;
    REQUIRE(sec_eig_get(e, 0, &re, &im, &cp, &cq, &r) == SEC_OK);
    CHECK(std::abs(re - 2.0) < 1e-12);
    CHECK(std::abs(im) < 1e-12);
    CHECK(r < 1e-12);
    CHECK(sec_eig_get(e, 2, &re, &im, &cp, &cq, &r) == SEC_ERR_INVALID_ARGUMENT);
    char* csv = nullptr;
    REQUIRE(sec_eig_csv(e, &csv) == SEC_OK);
    CHECK(std::string(csv).rfind("lambda_re,lambda_im,cond_pencil,cond_poly,residual_P\r\n", 0) == 0);
    sec_string_free(csv);
    sec_eig_free(e);
  }
  sec_eig* e = nullptr;
  CHECK(sec_eig_solve(p, "qz", nullptr, &e) == SEC_ERR_INVALID_ARGUMENT);
  char* t = nullptr;
  REQUIRE(sec_tropical_json(p, "two", &t) == SEC_OK);
  CHECK(std::string(t).find("\"multiplicity\"") != std::string::npos);
  sec_string_free(t);
  CHECK(sec_tropical_json(p, "max", &t) == SEC_ERR_INVALID_ARGUMENT);
  sec_poly_free(p);
}

TEST_CASE("complex parsing through the C API") {
  double z[2];
  REQUIRE(sec_parse_complex("1-2i", z) == SEC_OK);
  CHECK(z[0] == 1.0);
  CHECK(z[1] == -2.0);
  CHECK(sec_parse_complex("x", z) == SEC_ERR_INVALID_ARGUMENT);
}
