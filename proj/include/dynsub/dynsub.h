// Copyright 2026 The Authors.
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

/* C interface to the dynsub library. All handles are opaque; every fallible
 * call returns a dsm_status and records a message for dsm_last_error(). */
#ifndef DYNSUB_DYNSUB_H_
#define DYNSUB_DYNSUB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(DYNSUB_BUILDING_LIBRARY)
#define DSM_API __attribute__((visibility("default")))
#else
#define DSM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dsm_status {
  DSM_OK = 0,
  DSM_ERR_USAGE = 1,      /* bad arguments or configuration */
  DSM_ERR_INVARIANT = 2,  /* a checked invariant failed */
  DSM_ERR_DOMAIN = 3,     /* value outside the function's domain */
  DSM_ERR_IO = 4,         /* file could not be read or written */
  DSM_ERR_BUDGET = 5,     /* enumeration above its configured budget */
  DSM_ERR_INTERNAL = 6
} dsm_status;

/* Message of the last failed call on this thread; "" if none. */
DSM_API const char* dsm_last_error(void);
DSM_API const char* dsm_version(void);

/* ---- key/value parameters ---------------------------------------------- */

typedef struct dsm_params dsm_params;

DSM_API dsm_params* dsm_params_new(void);
DSM_API void dsm_params_free(dsm_params* p);
/* Later values replace earlier ones for the same key. */
DSM_API dsm_status dsm_params_set(dsm_params* p, const char* key,
                                  const char* value);
/* Reads "key = value" lines from a file. */
DSM_API dsm_status dsm_params_load(dsm_params* p, const char* path);
DSM_API size_t dsm_params_count(const dsm_params* p);
DSM_API const char* dsm_params_key(const dsm_params* p, size_t i);
DSM_API const char* dsm_params_value(const dsm_params* p, size_t i);

/* ---- oracles ------------------------------------------------------------ */

typedef struct dsm_oracle dsm_oracle;

/* Coverage file, hard-instance descriptor, or the literal "random-coverage"
 * with elements/items/max_cover/oracle_seed taken from params (may be NULL). */
DSM_API dsm_status dsm_oracle_open(const char* source, const dsm_params* params,
                                   dsm_oracle** out);
DSM_API void dsm_oracle_free(dsm_oracle* o);
DSM_API size_t dsm_oracle_ground_size(const dsm_oracle* o);
DSM_API dsm_status dsm_oracle_eval(dsm_oracle* o, const uint32_t* set,
                                   size_t n, double* value);
DSM_API uint64_t dsm_oracle_query_count(const dsm_oracle* o);

/* ---- cardinality engine ------------------------------------------------- */

typedef struct dsm_card dsm_card;

/* opt <= 0 selects the OPT ladder. The oracle must outlive the engine. */
DSM_API dsm_status dsm_card_new(dsm_oracle* o, size_t k, double epsilon,
                                double opt, dsm_card** out);
DSM_API void dsm_card_free(dsm_card* c);
DSM_API dsm_status dsm_card_insert(dsm_card* c, uint32_t element);
DSM_API double dsm_card_value(const dsm_card* c);
/* Writes up to cap ids; *n receives the solution size. */
DSM_API dsm_status dsm_card_solution(const dsm_card* c, uint32_t* ids,
                                     size_t cap, size_t* n);

/* ---- stream runs -------------------------------------------------------- */

typedef struct dsm_round_record {
  uint64_t t;
  char op; /* 'I' or 'D' */
  uint64_t ground;
  double value;
  double opt;
  double ratio;
  uint64_t q_round;
  uint64_t q_total;
  int opt_is_bound;
} dsm_round_record;

typedef struct dsm_run dsm_run;

/* Runs the stream described by params (keys as in the config file). */
DSM_API dsm_status dsm_run_execute(const dsm_params* params, dsm_run** out);
DSM_API void dsm_run_free(dsm_run* r);
DSM_API size_t dsm_run_record_count(const dsm_run* r);
DSM_API dsm_status dsm_run_get_record(const dsm_run* r, size_t i,
                                      dsm_round_record* out);
DSM_API uint64_t dsm_run_algorithm_queries(const dsm_run* r);
DSM_API uint64_t dsm_run_harness_queries(const dsm_run* r);
/* format: "csv" or "json". path NULL or "-" returns the text through *text
 * (owned by the run, valid until the next call); otherwise writes the file
 * and sets *text to NULL when text is non-NULL. */
DSM_API dsm_status dsm_run_report(dsm_run* r, const char* format,
                                  const char* path, const char** text);

/* ---- sweeps ------------------------------------------------------------- */

typedef struct dsm_sweep_row {
  const char* value;
  uint64_t rounds;
  double final_value;
  double final_opt;
  double final_ratio;
  double min_ratio;
  uint64_t q_total;
  double q_per_round;
} dsm_sweep_row;

typedef struct dsm_sweep dsm_sweep;

/* values: comma-separated list for `key`; runs execute in parallel. */
DSM_API dsm_status dsm_sweep_execute(const dsm_params* params, const char* key,
                                     const char* values, dsm_sweep** out);
DSM_API void dsm_sweep_free(dsm_sweep* s);
DSM_API size_t dsm_sweep_row_count(const dsm_sweep* s);
DSM_API dsm_status dsm_sweep_get_row(const dsm_sweep* s, size_t i,
                                     dsm_sweep_row* out);

/* ---- hard instances ----------------------------------------------------- */

/* family: "bipartite" or "tree"; params as in GenerateHardInstance. Writes
 * the stream file and the JSON descriptor. */
DSM_API dsm_status dsm_generate(const char* family, const dsm_params* params,
                                uint64_t seed, const char* stream_path,
                                const char* descriptor_path,
                                uint64_t* stream_length);

typedef struct dsm_check {
  const char* name;
  int passed;
  const char* detail;
} dsm_check;

typedef struct dsm_verify dsm_verify;

/* Returns DSM_OK if every check passed, DSM_ERR_INVARIANT if one failed;
 * *out is set in both cases. params may set seed, sets, trials. */
DSM_API dsm_status dsm_verify_instance(const char* descriptor_path,
                                       const dsm_params* params,
                                       dsm_verify** out);
DSM_API void dsm_verify_free(dsm_verify* v);
DSM_API size_t dsm_verify_check_count(const dsm_verify* v);
DSM_API dsm_status dsm_verify_get_check(const dsm_verify* v, size_t i,
                                        dsm_check* out);
DSM_API const char* dsm_verify_family(const dsm_verify* v);

#ifdef __cplusplus
}
#endif

#endif /* DYNSUB_DYNSUB_H_ */
