// Copyright 2026 The hofspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* hofspec C API.
 *
 * Spectra of the almost Mathieu operator and its unitary relatives at
 * rational frequency, behind opaque handles. Every function that can fail
 * returns a hofspec_status; the matching message is available from
 * hofspec_last_error() on the calling thread until the next failing call.
 * Handles are not shared between threads unless only const functions are used.
 */
#ifndef HOFSPEC_HOFSPEC_H
#define HOFSPEC_HOFSPEC_H

#include <stddef.h>
#include <stdint.h>

#if defined(HOFSPEC_BUILDING_LIBRARY)
#define HOFSPEC_API __attribute__((visibility("default")))
#else
#define HOFSPEC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hofspec_status {
  HOFSPEC_OK = 0,
  HOFSPEC_INVALID_ARGUMENT = 1,
  HOFSPEC_NOT_COPRIME = 2,
  HOFSPEC_NUMERICAL = 3,
  HOFSPEC_IO = 4,
  HOFSPEC_KIND_MISMATCH = 5,
  HOFSPEC_EMPTY = 6,
  HOFSPEC_UNKNOWN_CHECK = 7,
  HOFSPEC_INTERNAL = 8
} hofspec_status;

typedef enum hofspec_kind {
  HOFSPEC_KIND_H = 0,
  HOFSPEC_KIND_UH = 1,
  HOFSPEC_KIND_UKH = 2,
  HOFSPEC_KIND_UORDKR = 3
} hofspec_kind;

typedef struct hofspec_params {
  int kind; /* hofspec_kind */
  double kappa;
  double lambda;
  int64_t p;
  int64_t q;
  int theta_mother; /* nonzero: union over theta, `theta` ignored */
  double theta;
} hofspec_params;

typedef struct hofspec_grid {
  int n_x;
  int n_theta;
} hofspec_grid;

typedef struct hofspec_options {
  int threads; /* 0 = hardware concurrency */
  double tol_hermitian;
  double tol_unitary;
  double tol_eig_residual;
} hofspec_options;

typedef struct hofspec_spectrum hofspec_spectrum;
typedef struct hofspec_bands hofspec_bands;
typedef struct hofspec_report hofspec_report;
typedef struct hofspec_zoom hofspec_zoom;

HOFSPEC_API const char* hofspec_version(void);
HOFSPEC_API const char* hofspec_last_error(void);
HOFSPEC_API const char* hofspec_status_string(hofspec_status status);

HOFSPEC_API void hofspec_options_default(hofspec_options* opts);
HOFSPEC_API hofspec_status hofspec_parse_kind(const char* text, int* kind);
/* Parses "p/q"; reports HOFSPEC_NOT_COPRIME for unreduced fractions. */
HOFSPEC_API hofspec_status hofspec_parse_alpha(const char* text, int64_t* p, int64_t* q);

/* Round-trip decimal text for v; fails with HOFSPEC_INVALID_ARGUMENT if cap is too small. */
HOFSPEC_API hofspec_status hofspec_format_real(double v, char* buf, size_t cap);

/* ---- spectra ---------------------------------------------------------- */

/* opts may be NULL for defaults. */
HOFSPEC_API hofspec_status hofspec_spectrum_compute(const hofspec_params* params,
                                                    const hofspec_grid* grid,
                                                    const hofspec_options* opts,
                                                    hofspec_spectrum** out);
/* Same, through the on-disk cache in cache_dir. *hit (optional) reports a cache hit. */
HOFSPEC_API hofspec_status hofspec_spectrum_compute_cached(const hofspec_params* params,
                                                           const hofspec_grid* grid,
                                                           const hofspec_options* opts,
                                                           const char* cache_dir, int* hit,
                                                           hofspec_spectrum** out);
HOFSPEC_API void hofspec_spectrum_free(hofspec_spectrum* s);

HOFSPEC_API size_t hofspec_spectrum_size(const hofspec_spectrum* s);
/* 1 for unit-circle spectra, 0 for the real line. */
HOFSPEC_API int hofspec_spectrum_is_circle(const hofspec_spectrum* s);
HOFSPEC_API double hofspec_spectrum_error_bound(const hofspec_spectrum* s);
HOFSPEC_API hofspec_status hofspec_spectrum_params(const hofspec_spectrum* s, hofspec_params* out);
/* Copies size() points; re/im must each hold cap >= size() values. */
HOFSPEC_API hofspec_status hofspec_spectrum_points(const hofspec_spectrum* s, double* re, double* im,
                                                   size_t cap);
/* Sorted principal arguments in (-pi, pi]; unit-circle spectra only. */
HOFSPEC_API hofspec_status hofspec_spectrum_eigenphases(const hofspec_spectrum* s, double* out,
                                                        size_t cap);

HOFSPEC_API hofspec_status hofspec_spectrum_write_csv(const hofspec_spectrum* s, const char* path);
HOFSPEC_API hofspec_status hofspec_spectrum_read_csv(const char* path, hofspec_spectrum** out);
HOFSPEC_API hofspec_status hofspec_rings_write_svg(const hofspec_spectrum* const* rings, size_t n,
                                                   const char* path);

/* arc_metric = 0: chordal distance on the circle; 1: eigenphase arc length. */
HOFSPEC_API hofspec_status hofspec_hausdorff(const hofspec_spectrum* a, const hofspec_spectrum* b,
                                             int arc_metric, double* out);
HOFSPEC_API hofspec_status hofspec_grid_error_bound(const hofspec_params* params,
                                                    const hofspec_grid* grid, double* out);

/* ---- bands ------------------------------------------------------------ */

/* merge_gap < 0 selects max(4 * error_bound, 1e-9). */
HOFSPEC_API hofspec_status hofspec_bands_merge(const hofspec_spectrum* s, double merge_gap,
                                               hofspec_bands** out);
HOFSPEC_API hofspec_status hofspec_bands_index(const hofspec_params* params,
                                               const hofspec_grid* grid,
                                               const hofspec_options* opts, hofspec_bands** out);
HOFSPEC_API void hofspec_bands_free(hofspec_bands* b);
HOFSPEC_API size_t hofspec_bands_count(const hofspec_bands* b);
HOFSPEC_API hofspec_status hofspec_bands_get(const hofspec_bands* b, size_t i, double* lo,
                                             double* hi);
HOFSPEC_API double hofspec_bands_total_width(const hofspec_bands* b);
HOFSPEC_API double hofspec_bands_merge_gap(const hofspec_bands* b);
HOFSPEC_API size_t hofspec_bands_count_in_window(const hofspec_bands* b, double lo, double hi);

/* ---- analysis --------------------------------------------------------- */

/* p and q must hold count entries. */
HOFSPEC_API hofspec_status hofspec_golden_convergents(int count, int64_t* p, int64_t* q);
/* Writes up to cap fractions; *n receives the full count. */
HOFSPEC_API hofspec_status hofspec_farey(int64_t q_max, int64_t* p, int64_t* q, size_t cap,
                                         size_t* n);
HOFSPEC_API hofspec_status hofspec_powerlaw_fit(const int64_t* q, const double* w, size_t n,
                                                double* prefactor, double* exponent,
                                                double* residual);
/* Computes the butterfly and writes it as CSV; *rows (optional) receives the row count. */
HOFSPEC_API hofspec_status hofspec_butterfly_write_csv(int kind, double kappa, double lambda,
                                                       int64_t q_max, int grid_n,
                                                       const hofspec_options* opts,
                                                       const char* path, size_t* rows);
HOFSPEC_API hofspec_status hofspec_phase_median(const double* phases, size_t n, double* out);
HOFSPEC_API hofspec_status hofspec_alpha_jump_witness(double lambda, double alpha1, double alpha2,
                                                      double theta, int64_t n_max, double* out);

/* Mother unitary spectrum with nested windows; center = NULL uses the phase median. */
HOFSPEC_API hofspec_status hofspec_zoom_run(const hofspec_params* params, const hofspec_grid* grid,
                                            const double* factors, size_t n_factors,
                                            const double* center, const hofspec_options* opts,
                                            hofspec_zoom** out);
HOFSPEC_API void hofspec_zoom_free(hofspec_zoom* z);
HOFSPEC_API double hofspec_zoom_center(const hofspec_zoom* z);
/* Window 0 is the full circle, so this is n_factors + 1. */
HOFSPEC_API size_t hofspec_zoom_window_count(const hofspec_zoom* z);
HOFSPEC_API hofspec_status hofspec_zoom_window(const hofspec_zoom* z, size_t i, double* lo,
                                               double* hi, size_t* n_points, size_t* n_bands);
HOFSPEC_API hofspec_status hofspec_zoom_window_points(const hofspec_zoom* z, size_t i, double* out,
                                                      size_t cap);

/* ---- verification ----------------------------------------------------- */

HOFSPEC_API size_t hofspec_check_count(void);
/* Upper-case id of the i-th check, or NULL when out of range. */
HOFSPEC_API const char* hofspec_check_name(size_t i);
/* Default config as JSON; release with hofspec_string_free. */
HOFSPEC_API hofspec_status hofspec_check_default_config(const char* check_id, char** json_out);
/* config_json (may be NULL) overrides fields of the default config. */
HOFSPEC_API hofspec_status hofspec_check_run(const char* check_id, const char* config_json,
                                             const hofspec_options* opts, hofspec_report** out);
HOFSPEC_API void hofspec_report_free(hofspec_report* r);
HOFSPEC_API const char* hofspec_report_check_id(const hofspec_report* r);
HOFSPEC_API int hofspec_report_pass(const hofspec_report* r);
HOFSPEC_API double hofspec_report_measured(const hofspec_report* r);
HOFSPEC_API double hofspec_report_bound(const hofspec_report* r);
HOFSPEC_API const char* hofspec_report_notes(const hofspec_report* r);
HOFSPEC_API const char* hofspec_report_json(const hofspec_report* r);

/* ---- cache ------------------------------------------------------------ */

HOFSPEC_API hofspec_status hofspec_cache_key(const hofspec_params* params, const hofspec_grid* grid,
                                             const hofspec_options* opts, char* buf, size_t cap);
HOFSPEC_API hofspec_status hofspec_cache_clear(const char* cache_dir, size_t* removed);

HOFSPEC_API void hofspec_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* HOFSPEC_HOFSPEC_H */
