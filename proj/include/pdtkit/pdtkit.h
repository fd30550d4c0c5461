#ifndef PDTKIT_PDTKIT_H
#define PDTKIT_PDTKIT_H

/* C interface to pdtkit. Handles are opaque; every call returns a status and
 * writes results through out-parameters. Strings returned through char** are
 * owned by the caller and released with pdtkit_string_free. After a failing
 * call, pdtkit_last_error() describes the failure (per thread). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define PDTKIT_API __declspec(dllexport)
#else
#  define PDTKIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pdtkit_status {
  PDTKIT_OK = 0,
  PDTKIT_E_INVALID_ARGUMENT = 1,
  PDTKIT_E_NOT_BOOLEAN = 2,
  PDTKIT_E_DIMENSION_MISMATCH = 3,
  PDTKIT_E_INVALID_ETA = 4,
  PDTKIT_E_DEPENDENT_INPUT = 5,
  PDTKIT_E_ZERO_DIRECTION = 6,
  PDTKIT_E_DEPENDENT_CONSTRAINTS = 7,
  PDTKIT_E_NOT_FOUND = 8,
  PDTKIT_E_CONSTANT_INPUT = 9,
  PDTKIT_E_INVALID_TREE = 10,
  PDTKIT_E_TOO_LARGE = 11,
  PDTKIT_E_INVALID_SPEC = 12,
  PDTKIT_E_ZERO_DENSITY = 13,
  PDTKIT_E_INVALID_DEGREE = 14,
  PDTKIT_E_PARSE = 15,
  PDTKIT_E_OVERFLOW = 16,
  PDTKIT_E_INTERNAL = 99
} pdtkit_status;

typedef struct pdtkit_function pdtkit_function;
typedef struct pdtkit_tree pdtkit_tree;

PDTKIT_API const char* pdtkit_version(void);
PDTKIT_API const char* pdtkit_status_name(pdtkit_status status);
PDTKIT_API const char* pdtkit_last_error(void);
PDTKIT_API void pdtkit_string_free(char* s);

/* Functions ------------------------------------------------------------- */

/* "tt:<n>:<hex>", "anf:<n>:<poly>" or "family:<kind>(...)". */
PDTKIT_API pdtkit_status pdtkit_function_parse(const char* spec, pdtkit_function** out);
/* table[x] in {0,1} for x < 2^n, x1 the least significant bit of x. */
PDTKIT_API pdtkit_status pdtkit_function_from_table(unsigned n, const unsigned char* table, size_t length,
                                                    pdtkit_function** out);
PDTKIT_API void pdtkit_function_free(pdtkit_function* f);
PDTKIT_API unsigned pdtkit_function_arity(const pdtkit_function* f);
PDTKIT_API pdtkit_status pdtkit_function_eval(const pdtkit_function* f, uint32_t x, int* out);

PDTKIT_API pdtkit_status pdtkit_analyze(const pdtkit_function* f, char** json);

/* Trees ----------------------------------------------------------------- */

/* strategy: "greedy-l1", "heavy-hitter", "span-query" or "degree-reduce". */
PDTKIT_API pdtkit_status pdtkit_tree_build(const pdtkit_function* f, const char* strategy, pdtkit_tree** out);
PDTKIT_API pdtkit_status pdtkit_tree_from_json(const char* json, pdtkit_tree** out);
PDTKIT_API void pdtkit_tree_free(pdtkit_tree* t);
PDTKIT_API pdtkit_status pdtkit_tree_eval(const pdtkit_tree* t, uint32_t x, int* out);
PDTKIT_API pdtkit_status pdtkit_tree_depth(const pdtkit_tree* t, size_t* out);
PDTKIT_API pdtkit_status pdtkit_tree_to_json(const pdtkit_tree* t, char** json);
PDTKIT_API pdtkit_status pdtkit_tree_to_dot(const pdtkit_tree* t, char** dot);
/* *correct receives 1 when the tree computes f. */
PDTKIT_API pdtkit_status pdtkit_tree_check(const pdtkit_tree* t, const pdtkit_function* f, int* correct,
                                           char** json);

/* Analyses -------------------------------------------------------------- */

/* method: "greedy" or "norm-halving". *verified receives the exhaustive check. */
PDTKIT_API pdtkit_status pdtkit_certificate(const pdtkit_function* f, const char* method, int* verified,
                                            char** json);
PDTKIT_API pdtkit_status pdtkit_rank(const pdtkit_function* f, unsigned max_codim, char** json);
/* *equal receives 1 when the XOR matrix rank equals the Fourier sparsity. */
PDTKIT_API pdtkit_status pdtkit_comm_rank(const pdtkit_function* f, int* equal, char** json);
/* x and y are bitstrings x1...xn. *correct receives 1 when the protocol
 * output equals f(x xor y). */
PDTKIT_API pdtkit_status pdtkit_comm_simulate(const pdtkit_tree* t, const pdtkit_function* f, const char* x,
                                              const char* y, int* correct, char** json);
PDTKIT_API pdtkit_status pdtkit_verify(const pdtkit_function* f, int* overall, char** json);

/* family without arity, e.g. "bent_ip"; strategies comma separated.
 * *diagnostics lists skipped arities, one per line (possibly empty). */
PDTKIT_API pdtkit_status pdtkit_sweep(const char* family, unsigned n_lo, unsigned n_hi, const char* strategies,
                                      char** csv, char** diagnostics);

#ifdef __cplusplus
}
#endif

#endif
