/* C interface to the modular differential equation verification toolkit.
 *
 * All functions operate on an opaque context holding the run configuration
 * (precision, series order, tolerance, RNG seed). Commands produce a JSON
 * report string allocated by the library; release it with mdeq_string_free.
 *
 * Status discipline:
 *   MDEQ_OK            - command ran, every contained check passed
 *   MDEQ_CHECK_FAILED  - command ran, at least one check failed (JSON is
 *                        still produced and describes the failure)
 *   anything else      - no JSON; mdeq_last_error(ctx) has the story
 */
#ifndef MDEQ_H
#define MDEQ_H

#include <stddef.h>

#if defined(__GNUC__)
#define MDEQ_API __attribute__((visibility("default")))
#else
#define MDEQ_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mdeq_ctx mdeq_ctx;

typedef enum {
  MDEQ_OK = 0,
  MDEQ_CHECK_FAILED = 1,
  MDEQ_INVALID_ARGUMENT = 2,
  MDEQ_NO_CONVERGENCE = 3,
  MDEQ_INTERNAL_ERROR = 4
} mdeq_status;

MDEQ_API int mdeq_abi_version(void);

MDEQ_API mdeq_ctx* mdeq_ctx_new(void);
MDEQ_API void mdeq_ctx_free(mdeq_ctx* ctx);

/* Configuration. Defaults: 256 bits, order 60, tol "1e-20", seed 0. */
MDEQ_API mdeq_status mdeq_ctx_set_precision_bits(mdeq_ctx* ctx, unsigned bits);
MDEQ_API mdeq_status mdeq_ctx_set_order(mdeq_ctx* ctx, unsigned order);
MDEQ_API mdeq_status mdeq_ctx_set_tolerance(mdeq_ctx* ctx, const char* decimal);
MDEQ_API mdeq_status mdeq_ctx_set_seed(mdeq_ctx* ctx, unsigned long long seed);

/* Human-readable description of the most recent failure on this context. */
MDEQ_API const char* mdeq_last_error(const mdeq_ctx* ctx);

MDEQ_API void mdeq_string_free(char* s);

/* Special values of higher derivatives at the elliptic points. */
MDEQ_API mdeq_status mdeq_run_special_values(mdeq_ctx* ctx, char** json_out);

/* Solve the residue system E^n_{a,b,c}; a, b, c are decimal or p/q strings. */
MDEQ_API mdeq_status mdeq_run_solve(mdeq_ctx* ctx, const char* a, const char* b, const char* c,
                                    unsigned n, char** json_out);

/* Full verification pipeline for residue class alpha in {1,5,7,11}. */
MDEQ_API mdeq_status mdeq_run_verify_class(mdeq_ctx* ctx, unsigned alpha, unsigned n,
                                           char** json_out);

/* Level-2 pipeline; variant is "case1", "case2-cusp0" or "case2-cusp1". */
MDEQ_API mdeq_status mdeq_run_level2(mdeq_ctx* ctx, unsigned n, const char* variant,
                                     char** json_out);

/* Admissible (a, b) pole/cusp counts for level m in 2..5, gcd(m, n) = 1. */
MDEQ_API mdeq_status mdeq_run_enumerate(mdeq_ctx* ctx, unsigned m, unsigned n, char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* MDEQ_H */
