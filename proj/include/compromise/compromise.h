// Copyright 2026 The Compromise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * C interface to the compromise toolkit.
 *
 * Objects are opaque handles created by *_parse / *_new style calls and
 * released with the matching *_free. Every fallible call returns a
 * cmp_status; on failure cmp_last_error() describes the problem for the
 * calling thread. Strings returned by the library stay valid until the
 * owning handle is freed.
 */

#ifndef COMPROMISE_COMPROMISE_H_
#define COMPROMISE_COMPROMISE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CMP_API __declspec(dllexport)
#else
#define CMP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cmp_status {
  CMP_OK = 0,
  CMP_ERR_INVALID_ARGUMENT = 1,
  CMP_ERR_CONFIG = 2,
  CMP_ERR_DOMAIN = 3,
  CMP_ERR_NOT_FOUND = 4,
  CMP_ERR_CAPACITY = 5,
  CMP_ERR_NUMERIC = 6,
  CMP_ERR_NOT_MONOTONE = 7,
  CMP_ERR_NON_REGULAR = 8,
  CMP_ERR_INTERNAL = 9
} cmp_status;

typedef struct cmp_config cmp_config;
typedef struct cmp_report cmp_report;

/* Utility callback: coordinates of a point and caller data. */
typedef double (*cmp_utility_fn)(const double* x, size_t dim, void* user);

CMP_API const char* cmp_version(void);
CMP_API const char* cmp_status_name(cmp_status status);
/* Message of the last failed call on this thread, "" if none. */
CMP_API const char* cmp_last_error(void);

/* Run configurations in the flat "key = value" format. */
CMP_API cmp_status cmp_config_parse(const char* text, cmp_config** out);
CMP_API cmp_status cmp_config_set(cmp_config* cfg, const char* key,
                                  const char* value);
CMP_API cmp_status cmp_config_set_custom_preference(cmp_config* cfg, int agent,
                                                    cmp_utility_fn fn,
                                                    void* user);
/* Output path named by the configuration, "" if unset. */
CMP_API const char* cmp_config_output(const cmp_config* cfg);
CMP_API void cmp_config_free(cmp_config* cfg);

/* Subcommands. Each produces a report; a report that fails its checks is
 * still CMP_OK, with cmp_report_passed() returning 0. */
CMP_API cmp_status cmp_solve(const cmp_config* cfg, cmp_report** out);
CMP_API cmp_status cmp_verify(const cmp_config* cfg, const double* x,
                              size_t dim, cmp_report** out);
CMP_API cmp_status cmp_mechanism(const cmp_config* cfg, cmp_report** out);
/* n == 0 draws the configured sample.n points. */
CMP_API cmp_status cmp_sample(const cmp_config* cfg, size_t n,
                              cmp_report** out);
/* name == NULL runs every registered scenario. */
CMP_API cmp_status cmp_reproduce(const char* name, size_t resolution,
                                 cmp_report** out);

CMP_API size_t cmp_scenario_count(void);
/* NULL when index is out of range. */
CMP_API const char* cmp_scenario_name(size_t index);

CMP_API const char* cmp_report_text(const cmp_report* rep);
/* Comma-separated table with a header line. */
CMP_API const char* cmp_report_table(const cmp_report* rep);
CMP_API int cmp_report_passed(const cmp_report* rep);
CMP_API size_t cmp_report_row_count(const cmp_report* rep);
CMP_API void cmp_report_free(cmp_report* rep);

/* Measure of agent's lower contour set at x under the configured backend. */
CMP_API cmp_status cmp_lower_measure(const cmp_config* cfg, int agent,
                                     const double* x, size_t dim,
                                     double* value, double* std_err);

/* Exhaustive multimatum equilibrium of a finite problem with n outcomes.
 * weights == NULL means counting measure. lex_outcome receives the
 * lexicographic outcome; outcome_mask, when not NULL, receives a bitmask of
 * all equilibrium outcomes. */
CMP_API cmp_status cmp_finite_spne(size_t n, const double* u1,
                                   const double* u2, const double* weights,
                                   size_t* lex_outcome, uint32_t* outcome_mask);

#ifdef __cplusplus
}
#endif

#endif /* COMPROMISE_COMPROMISE_H_ */
