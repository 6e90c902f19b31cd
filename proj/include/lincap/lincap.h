/*
 * Copyright 2026 The lincap Authors
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

#ifndef LINCAP_LINCAP_H_
#define LINCAP_LINCAP_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(LINCAP_BUILDING_LIBRARY)
#define LINCAP_API __declspec(dllexport)
#else
#define LINCAP_API __declspec(dllimport)
#endif
#else
#define LINCAP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every fallible call returns one; on failure the message is
 * available from lincap_last_error() on the same thread. */
typedef enum lincap_status {
  LINCAP_OK = 0,
  LINCAP_INVALID_ARGUMENT = 1,
  LINCAP_INVALID_MODE_SPLIT = 2,
  LINCAP_OVERFLOW = 3,
  LINCAP_DIMENSION_CAP = 4,
  LINCAP_SIZE_CAP = 5,
  LINCAP_MODE_COUNT_MISMATCH = 6,
  LINCAP_BASIS_MISMATCH = 7,
  LINCAP_INDEX_OUT_OF_RANGE = 8,
  LINCAP_NON_CONVERGENCE = 9,
  LINCAP_TRACE_VIOLATION = 10,
  LINCAP_INCONCLUSIVE = 11,
  LINCAP_SOLVER_FAILURE = 12,
  LINCAP_PARSE = 13,
  LINCAP_IO = 14,
  LINCAP_INTERNAL = 99
} lincap_status;

LINCAP_API const char* lincap_status_string(lincap_status status);
LINCAP_API const char* lincap_last_error(void);
LINCAP_API const char* lincap_version(void);

/* Strings returned through char** out-parameters are owned by the caller. */
LINCAP_API void lincap_string_free(char* s);

/* ---- Fock space ---------------------------------------------------------- */

/* C(photons + modes - 1, photons); LINCAP_OVERFLOW past 64 bits. */
LINCAP_API lincap_status lincap_dim_fock(int photons, int modes, uint64_t* out);
LINCAP_API lincap_status lincap_log2_dim_fock(int photons, int modes, double* out);

/* ---- Analytic capacity --------------------------------------------------- */

typedef struct lincap_capacity_report lincap_capacity_report;

typedef enum lincap_regime {
  LINCAP_ALICE_DOMINANT = 0,
  LINCAP_BALANCED = 1,
  LINCAP_BOB_DOMINANT = 2,
  LINCAP_BOB_SATURATED = 3
} lincap_regime;

LINCAP_API lincap_status lincap_capacity_compute(int photons, int modes, int alice_modes,
                                                 lincap_capacity_report** out);
LINCAP_API void lincap_capacity_free(lincap_capacity_report* report);
LINCAP_API double lincap_capacity_bits(const lincap_capacity_report* report);
LINCAP_API double lincap_capacity_log2_span_bound(const lincap_capacity_report* report);
LINCAP_API double lincap_capacity_log2_hilbert_dim(const lincap_capacity_report* report);
/* Exact values; return 0 when the integer does not fit in 64 bits. */
LINCAP_API int lincap_capacity_span_bound(const lincap_capacity_report* report, uint64_t* out);
LINCAP_API int lincap_capacity_hilbert_dim(const lincap_capacity_report* report, uint64_t* out);
LINCAP_API size_t lincap_capacity_num_sectors(const lincap_capacity_report* report);
LINCAP_API lincap_status lincap_capacity_sector_term(const lincap_capacity_report* report, size_t index,
                                                     int* alice_photons, double* log2_value);
LINCAP_API lincap_regime lincap_capacity_regime(const lincap_capacity_report* report);
LINCAP_API const char* lincap_regime_name(lincap_regime regime);
LINCAP_API double lincap_capacity_peak(const lincap_capacity_report* report);
LINCAP_API double lincap_capacity_crossover(const lincap_capacity_report* report);
LINCAP_API lincap_status lincap_capacity_to_json(const lincap_capacity_report* report, char** out);

/* CSV N,M,M_A,log2_dS,log2_dH,dualrail_bits for M = 2N and
 * M_A = round(M r / (1 + r)); ratios are iterated outermost. */
LINCAP_API lincap_status lincap_asymptotic_csv(const int* photon_counts, size_t num_photon_counts,
                                               const double* ratios, size_t num_ratios, char** out);

/* ---- Numerical span rank -------------------------------------------------- */

typedef struct lincap_span_options {
  int num_samples; /* 0: max(2 * bound, bound + 8) */
  uint64_t seed;
  int threads;     /* 0: all cores */
  double rank_tolerance;
  int strict;      /* nonzero: LINCAP_INCONCLUSIVE when the gap is not decisive */
} lincap_span_options;

typedef struct lincap_span_result {
  int rank;
  int num_samples;
  double singular_gap; /* +inf when no singular value falls below the threshold */
  uint64_t bound;
  int matches_bound;
  int confident;
} lincap_span_result;

LINCAP_API void lincap_span_options_default(lincap_span_options* options);
LINCAP_API lincap_status lincap_span_estimate(int photons, int modes, int alice_modes,
                                              const lincap_span_options* options, lincap_span_result* out);
/* CSV N,M,M_A,rank,bound,match,singular_gap over photons <= max_photons,
 * 2 <= modes <= max_modes and every valid split. */
LINCAP_API lincap_status lincap_span_sweep_csv(int max_photons, int max_modes, const lincap_span_options* options,
                                               char** out);

/* ---- Codebooks and entropy optimization ---------------------------------- */

typedef struct lincap_codebook lincap_codebook;
typedef struct lincap_opt_result lincap_opt_result;

typedef enum lincap_optimizer { LINCAP_OPTIMIZER_LBFGS = 0, LINCAP_OPTIMIZER_MOMENTUM = 1 } lincap_optimizer;
typedef enum lincap_probabilities { LINCAP_PROBABILITIES_UNIFORM = 0, LINCAP_PROBABILITIES_SIMPLEX = 1 }
    lincap_probabilities;

typedef struct lincap_opt_config {
  int restarts;
  int max_iterations;
  double gradient_tolerance;
  lincap_optimizer optimizer;
  lincap_probabilities probabilities;
  uint64_t seed;
  int threads;
  int stop_at_bound;
} lincap_opt_config;

LINCAP_API void lincap_opt_config_default(lincap_opt_config* config);

/* warm_start may be NULL. */
LINCAP_API lincap_status lincap_optimize(int photons, int modes, int alice_modes, int num_symbols,
                                         const lincap_opt_config* config, const lincap_codebook* warm_start,
                                         lincap_opt_result** out);
LINCAP_API void lincap_opt_result_free(lincap_opt_result* result);
LINCAP_API double lincap_opt_result_entropy(const lincap_opt_result* result);
LINCAP_API int lincap_opt_result_converged(const lincap_opt_result* result);
LINCAP_API int lincap_opt_result_restarts_used(const lincap_opt_result* result);
LINCAP_API int lincap_opt_result_best_restart(const lincap_opt_result* result);
LINCAP_API double lincap_opt_result_max_gram_off_diagonal(const lincap_opt_result* result);
LINCAP_API size_t lincap_opt_result_trajectory(const lincap_opt_result* result, double* values, size_t capacity);
/* Codebook file for the result; metadata_json is an optional JSON object of
 * extra string fields (may be NULL). */
LINCAP_API lincap_status lincap_opt_result_codebook_json(const lincap_opt_result* result, const char* metadata_json,
                                                         char** out);

/* CSV X,S_max_bits,log2X,capacity_bits,converged,restarts_used. */
LINCAP_API lincap_status lincap_symbol_sweep_csv(int photons, int modes, int alice_modes, int x_min, int x_max,
                                                 const lincap_opt_config* config, int warm_start, char** out);

LINCAP_API lincap_status lincap_codebook_from_json(const char* text, lincap_codebook** out);
LINCAP_API void lincap_codebook_free(lincap_codebook* codebook);
LINCAP_API int lincap_codebook_num_symbols(const lincap_codebook* codebook);
LINCAP_API lincap_status lincap_codebook_shape(const lincap_codebook* codebook, int* photons, int* modes,
                                               int* alice_modes);
LINCAP_API lincap_status lincap_codebook_entropy(const lincap_codebook* codebook, double* out);

/* ---- Eight-symbol protocol ------------------------------------------------ */

typedef struct lincap_protocol_params lincap_protocol_params;
typedef struct lincap_protocol_report lincap_protocol_report;

LINCAP_API lincap_status lincap_protocol_default(lincap_protocol_params** out);
LINCAP_API lincap_status lincap_protocol_solve_random(uint64_t seed, lincap_protocol_params** out);
LINCAP_API lincap_status lincap_protocol_from_json(const char* text, lincap_protocol_params** out);
LINCAP_API lincap_status lincap_protocol_to_json(const lincap_protocol_params* params, char** out);
LINCAP_API void lincap_protocol_params_free(lincap_protocol_params* params);
LINCAP_API double lincap_protocol_max_residual(const lincap_protocol_params* params);

LINCAP_API lincap_status lincap_protocol_verify(const lincap_protocol_params* params, double tolerance,
                                                lincap_protocol_report** out);
LINCAP_API void lincap_protocol_report_free(lincap_protocol_report* report);
LINCAP_API int lincap_protocol_report_pass(const lincap_protocol_report* report);
LINCAP_API double lincap_protocol_report_max_off_diagonal(const lincap_protocol_report* report);
LINCAP_API double lincap_protocol_report_entropy(const lincap_protocol_report* report);
LINCAP_API double lincap_protocol_report_mean_alice_photons(const lincap_protocol_report* report);
LINCAP_API lincap_status lincap_protocol_report_text(const lincap_protocol_report* report, char** out);
LINCAP_API lincap_status lincap_protocol_codebook_json(const lincap_protocol_params* params,
                                                       const char* metadata_json, char** out);

#ifdef __cplusplus
}
#endif

#endif /* LINCAP_LINCAP_H_ */
