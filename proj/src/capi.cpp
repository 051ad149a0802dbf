#include "secular/secular.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include <json.hpp>

#include "secular/errors.hpp"
#include "secular/experiment.hpp"
#include "secular/io.hpp"
#include "secular/secular_form.hpp"
#include "secular/tropical.hpp"

struct sec_poly {
  secular::MatrixPolynomial p;
};
struct sec_form {
  secular::SecularForm f;
};
struct sec_eig {
  std::vector<secular::EigenRow> rows;
};

namespace {

using nlohmann::json;

thread_local std::string g_error;
thread_local std::string g_error_json;

sec_status status_of(secular::ErrorCode code) {
  using secular::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidArgument: return SEC_ERR_INVALID_ARGUMENT;
    case ErrorCode::NotCoprime: return SEC_ERR_NOT_COPRIME;
    case ErrorCode::SingularAtNode: return SEC_ERR_SINGULAR_AT_NODE;
    case ErrorCode::DegreeMismatch: return SEC_ERR_DEGREE_MISMATCH;
    case ErrorCode::DuplicateNode: return SEC_ERR_DUPLICATE_NODE;
    case ErrorCode::Convergence: return SEC_ERR_CONVERGENCE;
    case ErrorCode::LeadingBlockSingular: return SEC_ERR_LEADING_BLOCK_SINGULAR;
    case ErrorCode::BlockSingularAtEigenvalue: return SEC_ERR_BLOCK_SINGULAR_AT_EIGENVALUE;
    case ErrorCode::DegenerateLift: return SEC_ERR_DEGENERATE_LIFT;
    case ErrorCode::MultiplicityMismatch: return SEC_ERR_MULTIPLICITY_MISMATCH;
    case ErrorCode::NodeCollision: return SEC_ERR_NODE_COLLISION;
    case ErrorCode::NumericalFailure: return SEC_ERR_NUMERICAL_FAILURE;
    case ErrorCode::Io: return SEC_ERR_IO;
    case ErrorCode::Parse: return SEC_ERR_PARSE;
  }
  return SEC_ERR_INTERNAL;
}

json complex_pair(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

sec_status fail(sec_status st, const std::string& message, json extra = json::object()) {
  g_error = message;
  extra["error"] = sec_status_name(st);
  extra["message"] = message;
  g_error_json = extra.dump();
  return st;
}

template <class F>
sec_status guard(F&& body) {
  try {
    body();
    g_error.clear();
    g_error_json.clear();
    return SEC_OK;
  } catch (const secular::NotCoprime& e) {
    json gcd = json::array();
    for (auto z : e.gcd()) gcd.push_back(complex_pair(z));
    return fail(SEC_ERR_NOT_COPRIME, e.what(), {{"gcd", gcd}});
  } catch (const secular::SingularAtNode& e) {
    return fail(SEC_ERR_SINGULAR_AT_NODE, e.what(), {{"node", complex_pair(e.node())}});
  } catch (const secular::ConvergenceError& e) {
    return fail(SEC_ERR_CONVERGENCE, e.what(), {{"deflated", e.deflated()}});
  } catch (const secular::Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SEC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SEC_ERR_INTERNAL, e.what());
  }
}

void require(const void* p, const char* what) {
  if (!p) throw secular::InvalidArgument(std::string(what) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

secular::NormKind norm_of(const char* norm) {
  return norm ? secular::parse_norm_kind(norm) : secular::NormKind::Infinity;
}

}  // namespace

extern "C" {

const char* sec_last_error(void) { return g_error.c_str(); }
const char* sec_last_error_json(void) { return g_error_json.c_str(); }

const char* sec_status_name(sec_status status) {
  switch (status) {
    case SEC_OK: return "Ok";
    case SEC_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case SEC_ERR_NOT_COPRIME: return "NotCoprime";
    case SEC_ERR_SINGULAR_AT_NODE: return "SingularAtNode";
    case SEC_ERR_DEGREE_MISMATCH: return "DegreeMismatch";
    case SEC_ERR_DUPLICATE_NODE: return "DuplicateNode";
    case SEC_ERR_CONVERGENCE: return "ConvergenceError";
    case SEC_ERR_LEADING_BLOCK_SINGULAR: return "LeadingBlockSingular";
    case SEC_ERR_BLOCK_SINGULAR_AT_EIGENVALUE: return "BlockSingularAtEigenvalue";
    case SEC_ERR_DEGENERATE_LIFT: return "DegenerateLift";
    case SEC_ERR_MULTIPLICITY_MISMATCH: return "MultiplicityMismatch";
    case SEC_ERR_NODE_COLLISION: return "NodeCollision";
    case SEC_ERR_NUMERICAL_FAILURE: return "NumericalFailure";
    case SEC_ERR_IO: return "IoError";
    case SEC_ERR_PARSE: return "ParseError";
    case SEC_ERR_INTERNAL: return "InternalError";
  }
  return "Unknown";
}

int sec_status_exit_code(sec_status status) {
  switch (status) {
    case SEC_OK: return 0;
    case SEC_ERR_IO: return 4;
    case SEC_ERR_CONVERGENCE:
    case SEC_ERR_LEADING_BLOCK_SINGULAR:
    case SEC_ERR_BLOCK_SINGULAR_AT_EIGENVALUE:
    case SEC_ERR_DEGENERATE_LIFT:
    case SEC_ERR_NUMERICAL_FAILURE:
    case SEC_ERR_INTERNAL: return 3;
    default: return 2;
  }
}

void sec_string_free(char* s) { delete[] s; }

sec_status sec_parse_complex(const char* text, double* out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    const secular::cplx z = secular::parse_complex(text);
    out[0] = z.real();
    out[1] = z.imag();
  });
}

sec_status sec_poly_create(size_t m, size_t degree, const double* coeffs, sec_poly** out) {
  return guard([&] {
    require(coeffs, "coeffs");
    require(out, "out");
    if (m == 0) throw secular::InvalidArgument("size must be positive");
    std::vector<secular::ComplexMatrix> c;
    for (size_t k = 0; k <= degree; ++k) {
      std::vector<secular::cplx> e(m * m);
      for (size_t i = 0; i < m * m; ++i) {
        const double* z = coeffs + 2 * (k * m * m + i);
        e[i] = {z[0], z[1]};
      }
      c.emplace_back(m, m, std::move(e));
    }
    *out = new sec_poly{secular::MatrixPolynomial(m, std::move(c))};
  });
}

sec_status sec_poly_from_json(const char* text, sec_poly** out) {
  return guard([&] {
    require(text, "json");
    require(out, "out");
    *out = new sec_poly{secular::parse_problem(text).polynomial};
  });
}

sec_status sec_poly_load(const char* path, sec_poly** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new sec_poly{secular::load_problem(path).polynomial};
  });
}

sec_status sec_poly_to_json(const sec_poly* p, char** text) {
  return guard([&] {
    require(p, "polynomial");
    require(text, "json");
    *text = dup_string(secular::problem_to_json({"", p->p}));
  });
}

size_t sec_poly_size(const sec_poly* p) { return p ? p->p.size() : 0; }
int sec_poly_degree(const sec_poly* p) { return p ? p->p.degree() : -1; }
void sec_poly_free(sec_poly* p) { delete p; }

sec_status sec_form_build(const sec_poly* p, const char* blocks, const double* shift,
                          const char* norm, sec_form** out) {
  return guard([&] {
    require(p, "polynomial");
    require(blocks, "blocks");
    require(out, "out");
    std::optional<secular::cplx> s;
    if (shift) s = secular::cplx(shift[0], shift[1]);
    *out = new sec_form{
        secular::build_from_choice(p->p, secular::parse_block_spec(blocks), s, norm_of(norm))};
  });
}

sec_status sec_form_from_json(const char* text, sec_form** out) {
  return guard([&] {
    require(text, "json");
    require(out, "out");
    *out = new sec_form{secular::form_from_json(text)};
  });
}

sec_status sec_form_to_json(const sec_form* f, const sec_poly* p, int flags, char** text) {
  return guard([&] {
    require(f, "form");
    require(text, "json");
    secular::FormJsonExtras extras;
    if (p) {
      const int n = std::max(p->p.degree(), 1);
      extras.residual = secular::verify_reconstruction(p->p, f->f, 2 * static_cast<size_t>(n) + 2, 0x5ec0ULL);
      extras.strongness = secular::check_strong(f->f);
    }
    if (flags & SEC_FORM_JSON_SPARSE) {
      extras.assembled = secular::assemble_sparse(f->f);
      extras.assembled_kind = "sparse";
    } else if (flags & SEC_FORM_JSON_DENSE) {
      extras.assembled = secular::assemble_dense(f->f);
      extras.assembled_kind = "dense";
    }
    *text = dup_string(secular::form_to_json(f->f, extras));
  });
}

sec_status sec_form_residual(const sec_poly* p, const sec_form* f, double* residual) {
  return guard([&] {
    require(p, "polynomial");
    require(f, "form");
    require(residual, "residual");
    const int n = std::max(p->p.degree(), 1);
    *residual = secular::verify_reconstruction(p->p, f->f, 2 * static_cast<size_t>(n) + 2, 0x5ec0ULL);
  });
}

sec_status sec_form_strongness_json(const sec_form* f, char** text) {
  return guard([&] {
    require(f, "form");
    require(text, "json");
    *text = dup_string(secular::strongness_to_json(secular::check_strong(f->f)));
  });
}

size_t sec_form_block_count(const sec_form* f) { return f ? f->f.block_count() : 0; }

sec_status sec_form_weight(const sec_form* f, size_t i, size_t k, double* out) {
  return guard([&] {
    require(f, "form");
    require(out, "out");
    if (i >= f->f.block_count()) throw secular::InvalidArgument("weight index out of range");
    const secular::ComplexMatrix w = f->f.weights()[i].coeff(k);
    for (size_t j = 0; j < w.entries().size(); ++j) {
      out[2 * j] = w.entries()[j].real();
      out[2 * j + 1] = w.entries()[j].imag();
    }
  });
}

void sec_form_free(sec_form* f) { delete f; }

sec_status sec_eig_solve(const sec_poly* p, const char* method, const char* norm, sec_eig** out) {
  return guard([&] {
    require(p, "polynomial");
    require(method, "method");
    require(out, "out");
    const std::string m = method;
    auto result = std::make_unique<sec_eig>();
    if (m == "frobenius") {
      result->rows = secular::solve_frobenius(p->p);
    } else if (m.rfind("secular:", 0) == 0) {
      secular::BlockChoice choice = secular::parse_block_spec(m.substr(8));
      secular::SecularForm s = secular::build_from_choice(p->p, choice, std::nullopt, norm_of(norm));
      if (!s.is_linear()) throw secular::InvalidArgument("the secular method needs linear blocks");
      result->rows = secular::solve_secular(p->p, s);
    } else {
      throw secular::InvalidArgument("unknown method '" + m + "' (expected frobenius or secular:SPEC)");
    }
    *out = result.release();
  });
}

size_t sec_eig_count(const sec_eig* e) { return e ? e->rows.size() : 0; }

sec_status sec_eig_get(const sec_eig* e, size_t k, double* re, double* im, double* cond_pencil,
                       double* cond_poly, double* residual) {
  return guard([&] {
    require(e, "table");
    if (k >= e->rows.size()) throw secular::InvalidArgument("eigenvalue index out of range");
    const auto& r = e->rows[k];
    if (re) *re = r.lambda.real();
    if (im) *im = r.lambda.imag();
    if (cond_pencil) *cond_pencil = r.cond_pencil;
    if (cond_poly) *cond_poly = r.cond_poly;
    if (residual) *residual = r.residual;
  });
}

sec_status sec_eig_csv(const sec_eig* e, char** csv) {
  return guard([&] {
    require(e, "table");
    require(csv, "csv");
    secular::CsvTable t({"lambda_re", "lambda_im", "cond_pencil", "cond_poly", "residual_P"});
    for (const auto& r : e->rows)
      t.add_row(std::vector<double>{r.lambda.real(), r.lambda.imag(), r.cond_pencil, r.cond_poly, r.residual});
    *csv = dup_string(t.str());
  });
}

void sec_eig_free(sec_eig* e) { delete e; }

sec_status sec_tropical_json(const sec_poly* p, const char* norm, char** text) {
  return guard([&] {
    require(p, "polynomial");
    require(text, "json");
    *text = dup_string(secular::tropical_to_json(secular::tropical_roots(p->p, norm_of(norm)),
                                                 secular::pellet_annulus(p->p)));
  });
}

sec_status sec_experiment_run(const char* config_json, char** summary_json) {
  return guard([&] {
    require(config_json, "config");
    secular::ExperimentSummary s = secular::run_experiment(secular::parse_experiment_config(config_json));
    if (summary_json) *summary_json = dup_string(s.json);
  });
}

}  // extern "C"
