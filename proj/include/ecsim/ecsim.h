/* Copyright 2026 The ecsim Authors
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

/* C interface of the ecsim shared library.
 *
 * Every fallible call returns an ecsim_status. On failure the message is
 * available from ecsim_last_error() on the same thread until the next call.
 * Handles are opaque and owned by the caller, who releases them with the
 * matching *_destroy function. Destroying NULL is a no-op.
 */

#ifndef ECSIM_ECSIM_H_
#define ECSIM_ECSIM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(ECSIM_BUILDING_LIBRARY)
#define ECSIM_API __attribute__((visibility("default")))
#else
#define ECSIM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  ECSIM_OK = 0,
  ECSIM_ERR_DOMAIN = 1,
  ECSIM_ERR_DIMENSION = 2,
  ECSIM_ERR_INDEX = 3,
  ECSIM_ERR_UNSUPPORTED = 4,
  ECSIM_ERR_RESOURCE = 5,
  ECSIM_ERR_NULL_ARGUMENT = 6,
  ECSIM_ERR_INTERNAL = 7
} ecsim_status;

typedef enum { ECSIM_SIGN_PLUS = 0, ECSIM_SIGN_MINUS = 1 } ecsim_sign;

typedef enum { ECSIM_ENGINE_COHERENT = 0, ECSIM_ENGINE_ORACLE = 1 } ecsim_engine;

typedef enum {
  ECSIM_LOSS_ALL_CHANNEL_MODES = 0,
  ECSIM_LOSS_RECEIVER_MODES = 1
} ecsim_loss_placement;

typedef enum {
  ECSIM_CORRECTION_NONE = 0,
  ECSIM_CORRECTION_PHASE_ONLY = 1,
  ECSIM_CORRECTION_PHASE_PLUS_SIGN = 2,
  ECSIM_CORRECTION_SIGN_ONLY = 3
} ecsim_correction;

typedef enum {
  ECSIM_VARIANT_PRINTED = 0,
  ECSIM_VARIANT_MISSING_ALPHA = 1,
  ECSIM_VARIANT_LINEAR_LOSS = 2
} ecsim_fidelity_variant;

typedef struct {
  double re;
  double im;
} ecsim_complex;

typedef struct ecsim_state ecsim_state;
typedef struct ecsim_report ecsim_report;

ECSIM_API const char* ecsim_version(void);
ECSIM_API const char* ecsim_last_error(void);
ECSIM_API const char* ecsim_status_name(ecsim_status status);
ECSIM_API const char* ecsim_correction_name(ecsim_correction correction);
ECSIM_API const char* ecsim_fidelity_variant_name(ecsim_fidelity_variant v);

/* Diagnostics such as low Fock cutoffs go to `callback`; NULL restores the
 * default, which writes to standard error. */
typedef void (*ecsim_warning_callback)(const char* message, void* user);
ECSIM_API void ecsim_set_warning_callback(ecsim_warning_callback callback,
                                          void* user);

/* ---- States ------------------------------------------------------------ */

ECSIM_API ecsim_status ecsim_channel_create(int m, ecsim_complex alpha,
                                            ecsim_sign sign, ecsim_state** out);
ECSIM_API ecsim_status ecsim_input_create(int m, ecsim_complex alpha,
                                          ecsim_complex kappa1,
                                          ecsim_complex kappa2,
                                          ecsim_state** out);
ECSIM_API void ecsim_state_destroy(ecsim_state* state);

ECSIM_API ecsim_status ecsim_state_mode_count(const ecsim_state* state,
                                              size_t* out);
ECSIM_API ecsim_status ecsim_state_term_count(const ecsim_state* state,
                                              size_t* out);
/* Copies one term; `amplitudes` must hold mode_count entries. */
ECSIM_API ecsim_status ecsim_state_term(const ecsim_state* state, size_t index,
                                        ecsim_complex* coeff,
                                        ecsim_complex* amplitudes,
                                        size_t amplitudes_len);
ECSIM_API ecsim_status ecsim_state_inner_product(const ecsim_state* x,
                                                 const ecsim_state* y,
                                                 ecsim_complex* out);

/* Writes the m+1 channel amplitude multipliers. */
ECSIM_API ecsim_status ecsim_channel_pattern(int m, double* out, size_t len);
ECSIM_API ecsim_status ecsim_channel_normalization(int m, ecsim_complex alpha,
                                                   ecsim_sign sign,
                                                   double* out);

/* ---- Entanglement ------------------------------------------------------ */

/* Channel mode `mode` versus the remaining channel modes. */
ECSIM_API ecsim_status ecsim_concurrence_closed_form(int m, ecsim_complex alpha,
                                                     ecsim_sign sign,
                                                     size_t mode, double* out);
ECSIM_API ecsim_status ecsim_concurrence_oracle(int m, ecsim_complex alpha,
                                                ecsim_sign sign, size_t mode,
                                                double* out);
/* Coefficients x00, x01, x10, x11 across side_a | rest. */
ECSIM_API ecsim_status ecsim_schmidt_coefficients(const ecsim_state* state,
                                                  const size_t* side_a,
                                                  size_t side_a_len,
                                                  ecsim_complex out[4]);

/* ---- Teleportation ----------------------------------------------------- */

typedef struct {
  int m;
  ecsim_complex alpha;
  ecsim_sign sign;
  ecsim_complex kappa1;
  ecsim_complex kappa2;
} ecsim_teleport_setup;

typedef struct {
  int l;
  int n;
  double probability;
  ecsim_correction correction;
  int heralded;
  double fidelity;
  double reference_fidelity;
} ecsim_outcome;

typedef struct {
  double success_probability;
  double mean_fidelity;
  double mean_reference_fidelity;
  double both_nonzero_probability;
  double truncation_bound;
  double total_probability;
} ecsim_report_summary;

ECSIM_API ecsim_status ecsim_teleport_run(const ecsim_teleport_setup* setup,
                                          ecsim_engine engine,
                                          ecsim_report** out);
/* Loss with transmissivity eta on the channel before the protocol runs. */
ECSIM_API ecsim_status ecsim_teleport_run_lossy(
    const ecsim_teleport_setup* setup, double eta,
    ecsim_loss_placement placement, ecsim_report** out);
ECSIM_API void ecsim_report_destroy(ecsim_report* report);

ECSIM_API ecsim_status ecsim_report_outcome_count(const ecsim_report* report,
                                                  size_t* out);
ECSIM_API ecsim_status ecsim_report_outcome(const ecsim_report* report,
                                            size_t index, ecsim_outcome* out);
ECSIM_API ecsim_status ecsim_report_summary_get(const ecsim_report* report,
                                                ecsim_report_summary* out);
/* Fidelity with the input after applying the outcome's correction; with
 * allow_sign_flip = 0 only its phase-shift part is applied. */
ECSIM_API ecsim_status ecsim_report_corrected_fidelity(
    const ecsim_report* report, size_t index, int allow_sign_flip,
    double* out);

ECSIM_API ecsim_status ecsim_outcome_probability(int m, ecsim_complex alpha,
                                                 ecsim_sign sign, int n,
                                                 double* out);
ECSIM_API ecsim_status ecsim_success_probability(int m, ecsim_complex alpha,
                                                 ecsim_sign sign, double* out);
ECSIM_API ecsim_status ecsim_unsquared_success_probability(int m,
                                                           ecsim_complex alpha,
                                                           double* out);

/* ---- Loss -------------------------------------------------------------- */

ECSIM_API ecsim_status ecsim_channel_fidelity_closed_form(int m,
                                                          ecsim_complex alpha,
                                                          double eta,
                                                          double* out);
ECSIM_API ecsim_status ecsim_channel_fidelity(int m, ecsim_complex alpha,
                                              double eta, double* out);
ECSIM_API ecsim_status ecsim_unscaled_channel_fidelity(int m,
                                                       ecsim_complex alpha,
                                                       double eta, double* out);
ECSIM_API ecsim_status ecsim_teleported_fidelity_closed_form(
    int m, ecsim_complex alpha, double eta, ecsim_fidelity_variant variant,
    double* out);
ECSIM_API ecsim_status ecsim_teleported_fidelity(int m, ecsim_complex alpha,
                                                 double eta,
                                                 ecsim_loss_placement placement,
                                                 double* out);
/* deviations[v] is the largest |engine - variant v| over the grid. */
ECSIM_API ecsim_status ecsim_adjudicate_teleported_fidelity(
    int m, const double* alphas, size_t alphas_len, const double* etas,
    size_t etas_len, ecsim_loss_placement placement,
    ecsim_fidelity_variant* winner, double deviations[3], int* definitive);

/* ---- Self-checks ------------------------------------------------------- */

typedef void (*ecsim_check_callback)(const char* suite, const char* name,
                                     int passed, double observed,
                                     double tolerance, void* user);
typedef void (*ecsim_verdict_callback)(const char* text, void* user);

/* Runs the verification suite. `passed` receives 1 when every check holds.
 * On failure the smallest failing case is written to `first_failure`
 * (truncated to `first_failure_len`), if provided. */
ECSIM_API ecsim_status ecsim_verify(uint64_t seed, int trials,
                                    ecsim_check_callback on_check,
                                    ecsim_verdict_callback on_verdict,
                                    void* user, int* passed,
                                    char* first_failure,
                                    size_t first_failure_len);

/* Largest disagreements {inner product, beam splitter, probability,
 * fidelity} between the two engines over random scenarios. */
ECSIM_API ecsim_status ecsim_oracle_equivalence(uint64_t seed, int scenarios,
                                                double max_amplitude,
                                                double out[4]);

#ifdef __cplusplus
}
#endif

#endif /* ECSIM_ECSIM_H_ */
