/*
 * Copyright 2026 The potlab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * potlab: entropy-potential lower bounds for rotation circuits.
 *
 * Every function returns a potlab_status. On failure the out-parameters are
 * left untouched and potlab_last_error() describes the problem (the message
 * is per thread and stays valid until the next failing call on that
 * thread). Handles are opaque; each *_free accepts NULL. Strings returned
 * through char** are released with potlab_string_free.
 *
 * Complex numbers cross the boundary as interleaved (re, im) doubles.
 */
#ifndef POTLAB_POTLAB_H_
#define POTLAB_POTLAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define POTLAB_API __declspec(dllexport)
#elif defined(__GNUC__) || defined(__clang__)
#define POTLAB_API __attribute__((visibility("default")))
#else
#define POTLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum potlab_status {
  POTLAB_OK = 0,
  POTLAB_ERR_NULL_ARGUMENT = 1,
  POTLAB_ERR_INVALID_DIMENSION = 2,
  POTLAB_ERR_DIMENSION_MISMATCH = 3,
  POTLAB_ERR_INVALID_STEP = 4,
  POTLAB_ERR_PRECONDITION = 5,
  POTLAB_ERR_ILL_CONDITIONED = 6,
  POTLAB_ERR_RESOURCE_LIMIT = 7,
  POTLAB_ERR_IO = 8,
  POTLAB_ERR_PARSE = 9,
  POTLAB_ERR_OUT_OF_RANGE = 10,
  POTLAB_ERR_INTERNAL = 11
} potlab_status;

typedef enum potlab_transform {
  POTLAB_TRANSFORM_DFT = 0,
  POTLAB_TRANSFORM_WHT = 1
} potlab_transform;

typedef enum potlab_step_kind {
  POTLAB_STEP_NONE = -1, /* start record of a trace */
  POTLAB_STEP_SWAP = 0,
  POTLAB_STEP_BUTTERFLY = 1,
  POTLAB_STEP_OTHER = 2
} potlab_step_kind;

typedef struct potlab_matrix potlab_matrix;
typedef struct potlab_circuit potlab_circuit;
typedef struct potlab_trace potlab_trace;
typedef struct potlab_xalpha_scan potlab_xalpha_scan;

#define POTLAB_DEFAULT_COMPOUND_CAP 5000

POTLAB_API const char *potlab_version(void);
POTLAB_API const char *potlab_status_name(potlab_status status);
POTLAB_API const char *potlab_last_error(void);
POTLAB_API void potlab_string_free(char *s);

/* ---- matrices ---------------------------------------------------------- */

POTLAB_API potlab_status potlab_matrix_identity(size_t n, potlab_matrix **out);
/* Normalized DFT, entry (k,l) = n^-1/2 exp(-2 pi i k l / n). */
POTLAB_API potlab_status potlab_matrix_dft(size_t n, potlab_matrix **out);
/* Walsh-Hadamard; n must be a power of two. */
POTLAB_API potlab_status potlab_matrix_wht(size_t n, potlab_matrix **out);
POTLAB_API potlab_status potlab_matrix_random_unitary(size_t n, uint64_t seed,
                                                      potlab_matrix **out);
/* X_alpha = cos(alpha) Id + sin(alpha) [[0, T], [-T^*, 0]], size 2n. */
POTLAB_API potlab_status potlab_matrix_x_alpha(size_t n, double alpha,
                                               potlab_transform transform,
                                               potlab_matrix **out);
/* entries: rows*cols interleaved (re, im) pairs, row-major. */
POTLAB_API potlab_status potlab_matrix_from_entries(size_t rows, size_t cols,
                                                    const double *entries,
                                                    potlab_matrix **out);
POTLAB_API potlab_status potlab_matrix_from_json(const char *json,
                                                 potlab_matrix **out);
POTLAB_API potlab_status potlab_matrix_to_json(const potlab_matrix *m,
                                               char **out);
POTLAB_API void potlab_matrix_free(potlab_matrix *m);

POTLAB_API potlab_status potlab_matrix_shape(const potlab_matrix *m,
                                             size_t *rows, size_t *cols);
POTLAB_API potlab_status potlab_matrix_get(const potlab_matrix *m, size_t r,
                                           size_t c, double *re, double *im);
POTLAB_API potlab_status potlab_matrix_multiply(const potlab_matrix *a,
                                                const potlab_matrix *b,
                                                potlab_matrix **out);
POTLAB_API potlab_status potlab_matrix_unitarity_defect(const potlab_matrix *m,
                                                        double *out);
/* *out = 1 if m is square and max|M M^* - Id| <= tol, else 0. */
POTLAB_API potlab_status potlab_matrix_is_unitary(const potlab_matrix *m,
                                                  double tol, int *out);
POTLAB_API potlab_status potlab_frobenius_distance(const potlab_matrix *a,
                                                   const potlab_matrix *b,
                                                   double *out);

/* ---- circuits ---------------------------------------------------------- */

POTLAB_API potlab_status potlab_circuit_new(size_t n, potlab_circuit **out);
/* block: a11, a12, a21, a22 as interleaved (re, im), 8 doubles. */
POTLAB_API potlab_status potlab_circuit_append(potlab_circuit *c, size_t i,
                                               size_t j, const double *block);
POTLAB_API potlab_status potlab_circuit_fft(size_t n, potlab_circuit **out);
POTLAB_API potlab_status potlab_circuit_wht(size_t n, potlab_circuit **out);
POTLAB_API potlab_status potlab_circuit_random(size_t n, size_t m,
                                               uint64_t seed,
                                               potlab_circuit **out);
/* JSON lines: {"n","steps"} header, then {"t","i","j","block"} per step. */
POTLAB_API potlab_status potlab_circuit_load(const char *path,
                                             potlab_circuit **out);
POTLAB_API potlab_status potlab_circuit_save(const potlab_circuit *c,
                                             const char *path);
POTLAB_API void potlab_circuit_free(potlab_circuit *c);

POTLAB_API potlab_status potlab_circuit_dimension(const potlab_circuit *c,
                                                  size_t *out);
POTLAB_API potlab_status potlab_circuit_size(const potlab_circuit *c,
                                             size_t *out);
/* Any of i, j, block (8 doubles), kind may be NULL. */
POTLAB_API potlab_status potlab_circuit_step(const potlab_circuit *c,
                                             size_t t, size_t *i, size_t *j,
                                             double *block,
                                             potlab_step_kind *kind);
/* start may be NULL for the identity. */
POTLAB_API potlab_status potlab_circuit_evaluate(const potlab_circuit *c,
                                                 const potlab_matrix *start,
                                                 potlab_matrix **out);
/* Largest unitarity defect over every intermediate state. */
POTLAB_API potlab_status potlab_circuit_max_state_defect(
    const potlab_circuit *c, const potlab_matrix *start, double *out);

/* ---- entropy potential -------------------------------------------------- */

POTLAB_API potlab_status potlab_entropy_potential(const potlab_matrix *m,
                                                  double base, double *out);
POTLAB_API potlab_status potlab_entropy_pair_delta(double x, double y,
                                                   double z, double w,
                                                   double *out);
/* |Phi(target*start) - Phi(start)| / 2; start may be NULL for identity. */
POTLAB_API potlab_status potlab_step_lower_bound(const potlab_matrix *target,
                                                 const potlab_matrix *start,
                                                 double *out);

typedef struct potlab_trace_record {
  size_t step;
  int has_rows; /* 0 on the start record */
  size_t i;
  size_t j;
  potlab_step_kind kind;
  double phi;
  double delta;
} potlab_trace_record;

typedef struct potlab_trace_summary {
  size_t n;
  size_t k; /* 0 for plain traces */
  size_t steps;
  uint64_t compound_dim;
  double phi_start;
  double phi_end;
  double max_abs_delta;
  double structural_cap;           /* lifted only */
  double implied_bound;            /* phi_end / max_abs_delta, lifted only */
  double implied_bound_structural; /* phi_end / structural_cap */
} potlab_trace_summary;

/* start may be NULL for the identity. */
POTLAB_API potlab_status potlab_potential_trace(const potlab_circuit *c,
                                                const potlab_matrix *start,
                                                double base,
                                                potlab_trace **out);
/* Lifted potential through the order-k compound, starting at identity. */
POTLAB_API potlab_status potlab_lifted_trace(const potlab_circuit *c, size_t k,
                                             size_t cap, double base,
                                             potlab_trace **out);
POTLAB_API void potlab_trace_free(potlab_trace *t);
POTLAB_API potlab_status potlab_trace_length(const potlab_trace *t,
                                             size_t *out);
POTLAB_API potlab_status potlab_trace_record_at(const potlab_trace *t,
                                                size_t index,
                                                potlab_trace_record *out);
POTLAB_API potlab_status potlab_trace_summarize(const potlab_trace *t,
                                                potlab_trace_summary *out);
/* Plain: step,i,j,kind,phi,delta_phi. Lifted:
 * step,kind,phi_lifted,delta,structural_cap. */
POTLAB_API potlab_status potlab_trace_to_csv(const potlab_trace *t,
                                             char **out);
/* Plain: {n,steps,phi_start,phi_end,max_abs_delta}. Lifted: scan summary
 * with compound_dim, phi_lifted_F, max_step_delta_fft, structural_cap,
 * implied_bound; `kind` labels the circuit. */
POTLAB_API potlab_status potlab_trace_summary_json(const potlab_trace *t,
                                                   const char *kind,
                                                   char **out);

/* ---- X_alpha family ------------------------------------------------------ */

POTLAB_API potlab_status potlab_xalpha_entropy_closed_form(size_t n,
                                                           double alpha,
                                                           double base,
                                                           double *out);
/* Phi(X_{pi/4+alpha/2}) - Phi(X_{pi/4-alpha/2}), 0 < alpha <= pi/2. */
POTLAB_API potlab_status potlab_xalpha_improved_gap(size_t n, double alpha,
                                                    double base, double *out);
/* x, y: n interleaved complex values. y = T x recovered through X_alpha. */
POTLAB_API potlab_status potlab_reduce_dft_via_xalpha(
    size_t n, const double *x, double alpha, potlab_transform transform,
    double *y);
/* Writes `steps` evenly spaced angles over [0, pi/2] to out. */
POTLAB_API potlab_status potlab_alpha_grid(size_t steps, double *out);

typedef struct potlab_xalpha_row {
  size_t n;
  double alpha;
  double phi_exact;
  double phi_closed_form;
  double gap;
  double gap_over_2;
  double naive_bound;
} potlab_xalpha_row;

POTLAB_API potlab_status potlab_xalpha_scan_run(size_t n, const double *alphas,
                                                size_t count,
                                                potlab_transform transform,
                                                double base, size_t jobs,
                                                potlab_xalpha_scan **out);
POTLAB_API void potlab_xalpha_scan_free(potlab_xalpha_scan *s);
POTLAB_API potlab_status potlab_xalpha_scan_length(const potlab_xalpha_scan *s,
                                                   size_t *out);
POTLAB_API potlab_status potlab_xalpha_scan_row(const potlab_xalpha_scan *s,
                                                size_t index,
                                                potlab_xalpha_row *out);
/* n,alpha,phi_exact,phi_closed_form,gap,gap_over_2,naive_bound */
POTLAB_API potlab_status potlab_xalpha_scan_to_csv(const potlab_xalpha_scan *s,
                                                   char **out);

/* ---- compound (determinant) representation ------------------------------ */

/* Saturates at UINT64_MAX. */
POTLAB_API potlab_status potlab_binomial(size_t n, size_t k, uint64_t *out);
POTLAB_API potlab_status potlab_subset_rank(size_t n, size_t k,
                                            const size_t *subset,
                                            uint64_t *out);
/* subset_out receives k sorted indices. */
POTLAB_API potlab_status potlab_subset_unrank(size_t n, size_t k,
                                              uint64_t rank,
                                              size_t *subset_out);
POTLAB_API potlab_status potlab_compound_matrix(const potlab_matrix *u,
                                                size_t k, size_t cap,
                                                potlab_matrix **out);
POTLAB_API potlab_status potlab_verify_representation(const potlab_matrix *u,
                                                      const potlab_matrix *v,
                                                      size_t k, size_t cap,
                                                      double *out);
POTLAB_API potlab_status potlab_lifted_potential(const potlab_matrix *u,
                                                 size_t k, size_t cap,
                                                 double base, double *out);
/* 2 C(n-2, k-1). */
POTLAB_API potlab_status potlab_structural_cap(size_t n, size_t k,
                                               double *out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* POTLAB_POTLAB_H_ */
