#ifndef SECULAR_SECULAR_H
#define SECULAR_SECULAR_H

#include <stddef.h>

#if defined(_WIN32)
#  ifdef SECULAR_BUILDING_LIBRARY
#    define SECULAR_API __declspec(dllexport)
#  else
#    define SECULAR_API __declspec(dllimport)
#  endif
#else
#  define SECULAR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sec_status {
  SEC_OK = 0,
  SEC_ERR_INVALID_ARGUMENT = 1,
  SEC_ERR_NOT_COPRIME = 2,
  SEC_ERR_SINGULAR_AT_NODE = 3,
  SEC_ERR_DEGREE_MISMATCH = 4,
  SEC_ERR_DUPLICATE_NODE = 5,
  SEC_ERR_CONVERGENCE = 6,
  SEC_ERR_LEADING_BLOCK_SINGULAR = 7,
  SEC_ERR_BLOCK_SINGULAR_AT_EIGENVALUE = 8,
  SEC_ERR_DEGENERATE_LIFT = 9,
  SEC_ERR_MULTIPLICITY_MISMATCH = 10,
  SEC_ERR_NODE_COLLISION = 11,
  SEC_ERR_NUMERICAL_FAILURE = 12,
  SEC_ERR_IO = 13,
  SEC_ERR_PARSE = 14,
  SEC_ERR_INTERNAL = 15
} sec_status;

/* Matrix polynomial, secular form and eigen table handles. */
typedef struct sec_poly sec_poly;
typedef struct sec_form sec_form;
typedef struct sec_eig sec_eig;

/* Message of the last failure on the calling thread ("" after success). */
SECULAR_API const char* sec_last_error(void);
/* {"error": name, "message": text, ...} for the last failure on this thread. */
SECULAR_API const char* sec_last_error_json(void);
SECULAR_API const char* sec_status_name(sec_status status);
/* 0 ok, 2 validation, 3 numerical, 4 I/O. */
SECULAR_API int sec_status_exit_code(sec_status status);

/* Strings returned through char** are owned by the caller. */
SECULAR_API void sec_string_free(char* s);

/* "1.5", "1+2i", "-0.5i", ... into out[0] (re) and out[1] (im). */
SECULAR_API sec_status sec_parse_complex(const char* text, double* out);

/* coeffs holds (degree + 1) m x m matrices, row-major, interleaved re/im. */
SECULAR_API sec_status sec_poly_create(size_t m, size_t degree, const double* coeffs, sec_poly** out);
SECULAR_API sec_status sec_poly_from_json(const char* json, sec_poly** out);
SECULAR_API sec_status sec_poly_load(const char* path, sec_poly** out);
SECULAR_API sec_status sec_poly_to_json(const sec_poly* p, char** json);
SECULAR_API size_t sec_poly_size(const sec_poly* p);
SECULAR_API int sec_poly_degree(const sec_poly* p);
SECULAR_API void sec_poly_free(sec_poly* p);

/* blocks: "linear:...", "fourier:n[:alpha]", "tropical[:random[:seed]]" or
   "poly:c;c;..." (coefficients highest degree first). shift: NULL for the
   default choice, else {re, im}. norm: NULL, "inf", "fro" or "two". */
SECULAR_API sec_status sec_form_build(const sec_poly* p, const char* blocks, const double* shift,
                                      const char* norm, sec_form** out);
SECULAR_API sec_status sec_form_from_json(const char* json, sec_form** out);
#define SEC_FORM_JSON_DENSE 1
#define SEC_FORM_JSON_SPARSE 2
/* p may be NULL; otherwise the reconstruction residual and strongness are included. */
SECULAR_API sec_status sec_form_to_json(const sec_form* f, const sec_poly* p, int flags, char** json);
SECULAR_API sec_status sec_form_residual(const sec_poly* p, const sec_form* f, double* residual);
SECULAR_API sec_status sec_form_strongness_json(const sec_form* f, char** json);
SECULAR_API size_t sec_form_block_count(const sec_form* f);
/* W_i coefficient k into out (m x m, interleaved re/im); zero beyond the stored degree. */
SECULAR_API sec_status sec_form_weight(const sec_form* f, size_t i, size_t k, double* out);
SECULAR_API void sec_form_free(sec_form* f);

/* method: "frobenius" or "secular:<blocks>". */
SECULAR_API sec_status sec_eig_solve(const sec_poly* p, const char* method, const char* norm,
                                     sec_eig** out);
SECULAR_API size_t sec_eig_count(const sec_eig* e);
SECULAR_API sec_status sec_eig_get(const sec_eig* e, size_t k, double* re, double* im,
                                   double* cond_pencil, double* cond_poly, double* residual);
/* lambda_re,lambda_im,cond_pencil,cond_poly,residual_P */
SECULAR_API sec_status sec_eig_csv(const sec_eig* e, char** csv);
SECULAR_API void sec_eig_free(sec_eig* e);

SECULAR_API sec_status sec_tropical_json(const sec_poly* p, const char* norm, char** json);

SECULAR_API sec_status sec_experiment_run(const char* config_json, char** summary_json);

#ifdef __cplusplus
}
#endif

#endif
