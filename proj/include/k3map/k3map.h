/* Copyright 2026 The k3map Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Stable C interface. Every function that can fail returns a k3map_status;
 * on failure k3map_last_error() and k3map_last_detail() describe it for the
 * calling thread. Strings returned by the library stay valid until the
 * owning handle is freed or the next call on the same thread that replaces
 * the last error.
 */
#ifndef K3MAP_K3MAP_H_
#define K3MAP_K3MAP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define K3MAP_API __declspec(dllexport)
#else
#define K3MAP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum k3map_status {
  K3MAP_OK = 0,
  K3MAP_ERR_PARSE = 1,
  K3MAP_ERR_NON_SQUARE = 2,
  K3MAP_ERR_DIMENSION_MISMATCH = 3,
  K3MAP_ERR_DET_NOT_ONE = 4,
  K3MAP_ERR_NOT_MONIC = 5,
  K3MAP_ERR_CONSTANT_NOT_UNIT = 6,
  K3MAP_ERR_BAD_PARAMS = 7,
  K3MAP_ERR_REFINEMENT_BUDGET = 8,
  K3MAP_ERR_UNDECIDED_CIRCLE = 9,
  K3MAP_ERR_BUDGET_EXCEEDED = 10,
  K3MAP_ERR_EPS_TOO_SMALL = 11,
  K3MAP_ERR_INVALID_ARGUMENT = 12,
  K3MAP_ERR_INTERNAL = 13
} k3map_status;

typedef struct k3map_matrix k3map_matrix;
typedef struct k3map_result k3map_result;

typedef struct k3map_spectra_options {
  double eps;
  unsigned max_rounds;
} k3map_spectra_options;

typedef struct k3map_dynamics_options {
  double eps;
  int n_max;
  uint64_t seed;
  size_t budget;
  size_t max_centers;
  unsigned threads;
  int include_ray;
  double ray_eps;
  int ray_n_max;
} k3map_dynamics_options;

K3MAP_API const char* k3map_version(void);
K3MAP_API const char* k3map_status_name(k3map_status status);
K3MAP_API const char* k3map_last_error(void);
/* Determinant for K3MAP_ERR_DET_NOT_ONE, otherwise empty. */
K3MAP_API const char* k3map_last_detail(void);

K3MAP_API void k3map_spectra_defaults(k3map_spectra_options* out);
K3MAP_API void k3map_dynamics_defaults(k3map_dynamics_options* out);

/* Whitespace/comma separated entries or a JSON array of rows; dim 0 infers. */
K3MAP_API k3map_status k3map_matrix_parse(const char* text, size_t dim, k3map_matrix** out);
/* Companion matrix of a monic polynomial such as "x^4 - 6x^2 + 1". */
K3MAP_API k3map_status k3map_matrix_from_poly(const char* poly, k3map_matrix** out);
K3MAP_API k3map_status k3map_matrix_identity(size_t dim, k3map_matrix** out);
K3MAP_API size_t k3map_matrix_dim(const k3map_matrix* m);
K3MAP_API const char* k3map_matrix_to_string(const k3map_matrix* m);
K3MAP_API void k3map_matrix_free(k3map_matrix* m);

/* 4x4, det 1: spectrum, homology and classification. */
K3MAP_API k3map_status k3map_analyze(const k3map_matrix* m, const char* source, const k3map_spectra_options* spectra,
                                     k3map_result** out);
/* Any square matrix with |det| = 1: spectrum plus entropy estimates. */
K3MAP_API k3map_status k3map_verify_entropy(const k3map_matrix* m, const char* source,
                                            const k3map_spectra_options* spectra,
                                            const k3map_dynamics_options* dynamics, k3map_result** out);
/* analyze plus the estimates. */
K3MAP_API k3map_status k3map_report(const k3map_matrix* m, const char* source, const k3map_spectra_options* spectra,
                                    const k3map_dynamics_options* dynamics, k3map_result** out);
/* kind: "product", "irreducible" or "gap"; ranges like "3", "3..10". second
 * is used by "product" only and may be NULL otherwise. */
K3MAP_API k3map_status k3map_family_sweep(const char* kind, const char* first, const char* second,
                                          const k3map_spectra_options* spectra, unsigned threads,
                                          k3map_result** out);

K3MAP_API const char* k3map_result_json(k3map_result* r, int include_timing);
/* Family table, or the torus estimate table for verify-entropy and report;
 * empty for analyze. */
K3MAP_API const char* k3map_result_csv(k3map_result* r);
K3MAP_API const char* k3map_result_summary(k3map_result* r, int include_timing);
/* Nonzero when an estimate stopped early at its budget. */
K3MAP_API int k3map_result_partial(const k3map_result* r);
K3MAP_API void k3map_result_free(k3map_result* r);

#ifdef __cplusplus
}
#endif

#endif /* K3MAP_K3MAP_H_ */
