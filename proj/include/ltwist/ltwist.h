// Copyright 2026 The ltwist Authors
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

/* C interface to ltwist: curve tables, L-values of quadratic twists,
 * modular-symbol sums and the verification sweeps.
 *
 * Every function returns an ltw_status. On failure, ltw_last_error() gives
 * the message for the calling thread. Strings returned through char** are
 * owned by the caller and released with ltw_string_free. */

#ifndef LTWIST_LTWIST_H_
#define LTWIST_LTWIST_H_

#include <stdint.h>

#if defined(LTW_BUILDING_LIBRARY)
#define LTW_API __attribute__((visibility("default")))
#else
#define LTW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ltw_status {
  LTW_OK = 0,
  LTW_SINGULAR_MODEL = 1,
  LTW_NOT_SQUAREFREE = 2,
  LTW_NO_RATIONAL_TWO_TORSION = 3,
  LTW_FULL_TWO_TORSION = 4,
  LTW_ZERO_DISCRIMINANT = 5,
  LTW_BAD_REDUCTION = 6,
  LTW_GOOD_REDUCTION = 7,
  LTW_WRONG_TORSION_SHAPE = 8,
  LTW_TWIST_NOT_COPRIME = 9,
  LTW_NOT_TWIST_PRIME = 10,
  LTW_PRECISION_EXHAUSTED = 11,
  LTW_COEFFICIENT_TABLE_TOO_SHORT = 12,
  LTW_AMBIGUOUS_ROOT_NUMBER = 13,
  LTW_ROUTE_DISAGREEMENT = 14,
  LTW_NO_GAMMA_FOUND = 15,
  LTW_NOT_LATTICE_POINT = 16,
  LTW_INTEGRALITY_VIOLATION = 17,
  LTW_NO_RATIONAL_IN_WINDOW = 18,
  LTW_ORD2_DISAGREEMENT = 19,
  LTW_THEOREM_VIOLATION = 20,
  LTW_PARSE_ERROR = 21,
  LTW_VALIDATION_ERROR = 22,
  LTW_INVALID_ARGUMENT = 23,
  LTW_UNKNOWN_CURVE = 24,
  LTW_IO_ERROR = 25,
  LTW_INTERNAL = 99
} ltw_status;

/* Holds a curve table (the bundled one by default) and per-curve caches. */
typedef struct ltw_session ltw_session;
/* A curve opened in a session. Free with ltw_curve_free before the session;
 * loading another table invalidates it. */
typedef struct ltw_curve ltw_curve;

LTW_API const char* ltw_version(void);
LTW_API const char* ltw_status_name(ltw_status s);
/* Message of the last failure on this thread; "" if none. */
LTW_API const char* ltw_last_error(void);
LTW_API void ltw_string_free(char* s);

LTW_API ltw_status ltw_session_new(ltw_session** out);
LTW_API void ltw_session_free(ltw_session* s);
/* Replaces the session's table with the file at `path`. */
LTW_API ltw_status ltw_session_load_table(ltw_session* s, const char* path);
/* Labels of the current table, newline separated. */
LTW_API ltw_status ltw_session_labels(ltw_session* s, char** out);
/* Subcommand names accepted by ltw_run, newline separated. */
LTW_API ltw_status ltw_commands(char** out);

/* `spec` is a label or "a1,a2,a3,a4,a6[:conductor]". */
LTW_API ltw_status ltw_curve_open(ltw_session* s, const char* spec, int jobs, ltw_curve** out);
LTW_API void ltw_curve_free(ltw_curve* c);
LTW_API ltw_status ltw_curve_label(const ltw_curve* c, char** out);
LTW_API ltw_status ltw_curve_conductor(const ltw_curve* c, int64_t* out);
LTW_API ltw_status ltw_curve_ap(ltw_curve* c, uint64_t p, int64_t* out);
/* Decimal L(E,1) and the root number at `bits` of working precision and a
 * target absolute error of 10^target_exp10. */
LTW_API ltw_status ltw_curve_l_value(ltw_curve* c, int bits, int target_exp10, char** value, int* root_number);
/* L(E^(M),1)/c_inf(E^(M)) as a fraction "p/q" and its 2-adic valuation
 * (INT32_MAX stands for +infinity). */
LTW_API ltw_status ltw_curve_twist_ratio(ltw_curve* c, int64_t M, int bits, int target_exp10, char** rational,
                                         int32_t* ord2);

/* Runs a subcommand. `config_json` holds RunConfig fields (see README);
 * `curve` may be NULL for commands without a curve. The JSON report is
 * returned in *report; *all_pass is 1 when no verdict failed. */
LTW_API ltw_status ltw_run(ltw_session* s, const char* command, const char* config_json, const char* curve,
                           char** report, int* all_pass);
/* CSV projection of a JSON report, and the results array parsed back. */
LTW_API ltw_status ltw_report_to_csv(const char* report_json, char** csv);
LTW_API ltw_status ltw_csv_to_results(const char* csv, char** results_json);

#ifdef __cplusplus
}
#endif

#endif /* LTWIST_LTWIST_H_ */
