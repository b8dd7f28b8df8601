// Copyright 2026 The hdforce Authors
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

#ifndef HDFORCE_HDFORCE_H_
#define HDFORCE_HDFORCE_H_

/*
 * C interface to the hdforce library: finite simplified gap-1 morasses,
 * forcing systems along them, and the checkers and experiments built on top.
 *
 * Conventions
 *  - Every function returns an hdf_status. On failure a message is
 *    available from hdf_last_error() until the next call on the same thread.
 *  - Strings returned through `char**` are owned by the caller and released
 *    with hdf_string_free(). Documents are canonical JSON (sorted keys,
 *    two-space indent) unless stated otherwise.
 *  - Handles are immutable after construction and may be shared between
 *    threads.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define HDF_API __declspec(dllexport)
#else
#define HDF_API __attribute__((visibility("default")))
#endif

typedef enum hdf_status {
  HDF_OK = 0,
  HDF_INVALID_ARGUMENT = 1, /* null pointer, unknown name, bad index */
  HDF_REJECTED_INPUT = 2,   /* well-formed input violating a precondition */
  HDF_PARSE_ERROR = 3,      /* malformed JSON or wrong document shape */
  HDF_SIZE_LIMIT = 4,       /* a requested universe is too large */
  HDF_INTERNAL = 5          /* an internal consistency check tripped */
} hdf_status;

/* Outcome of a check or experiment, matching the CLI exit codes. */
typedef enum hdf_verdict {
  HDF_PASS = 0,
  HDF_VALIDATION_FAILURE = 1,
  HDF_COUNTEREXAMPLE = 2
} hdf_verdict;

typedef struct hdf_morass hdf_morass;

HDF_API const char* hdf_version(void);
HDF_API const char* hdf_last_error(void);
HDF_API void hdf_string_free(char* s);

/* ---- morasses --------------------------------------------------------- */

/* theta_alpha = 2^alpha, every split at delta = 0. height <= 20. */
HDF_API hdf_status hdf_morass_doubling(unsigned height, hdf_morass** out);
/* Seeded random successor morass with widths capped at theta_cap. */
HDF_API hdf_status hdf_morass_random(unsigned height, uint32_t theta_cap,
                                     uint64_t seed, hdf_morass** out);
/* Accepts any well-typed document; axioms are checked by hdf_check_morass. */
HDF_API hdf_status hdf_morass_from_json(const char* json, hdf_morass** out);
HDF_API void hdf_morass_free(hdf_morass* m);

HDF_API hdf_status hdf_morass_to_json(const hdf_morass* m, char** out);
HDF_API hdf_status hdf_morass_tree_dot(const hdf_morass* m, char** out);
HDF_API unsigned hdf_morass_height(const hdf_morass* m);
/* 0 for a null handle or a level above the height. */
HDF_API uint32_t hdf_morass_theta(const hdf_morass* m, unsigned level);
HDF_API uint64_t hdf_morass_branch_count(const hdf_morass* m);
/* Sets *result to 1 iff <s_level,s_index> precedes <t_level,t_index>. */
HDF_API hdf_status hdf_morass_precedes(const hdf_morass* m, unsigned s_level,
                                       uint32_t s_index, unsigned t_level,
                                       uint32_t t_index, int* result);
/* Writes pi_st into values[0..len), len = s_index + 1. Fails with
 * HDF_INVALID_ARGUMENT if cap < len (len is still reported). */
HDF_API hdf_status hdf_morass_pi(const hdf_morass* m, unsigned s_level,
                                 uint32_t s_index, unsigned t_level,
                                 uint32_t t_index, uint32_t* values,
                                 size_t cap, size_t* len);

/* ---- checks ----------------------------------------------------------- */

/* Axiom analogues and tree lemmas of a morass document. A document that is
 * not well typed is reported (clause P0b), not rejected. */
HDF_API hdf_status hdf_check_morass(const char* json, char** report,
                                    hdf_verdict* verdict);
/* FS1-FS7 for a named forcing system fixture along m. */
HDF_API hdf_status hdf_check_fs(const hdf_morass* m, const char* fixture,
                                char** report, hdf_verdict* verdict);
/* Membership of a colored-pair condition {"a","b","f"}. */
HDF_API hdf_status hdf_check_delta(const hdf_morass* m, const char* json,
                                   char** report, hdf_verdict* verdict);
/* Clauses and membership of a partial-order condition {"x","lt","B"}. */
HDF_API hdf_status hdf_check_sba(const hdf_morass* m, const char* json,
                                 char** report, hdf_verdict* verdict);

/* ---- experiments ------------------------------------------------------ */

typedef struct hdf_experiment_config {
  const char* fixture;  /* FS fixture, default "harmonized-cohen" */
  const char* mutation; /* delta or sba mutation name, or NULL */
  uint64_t seed;        /* default 1 */
  uint64_t steps;       /* generic runs, default 100 */
  uint64_t trials;      /* ccc trials, default 20 */
  uint64_t samples;     /* sampled sweeps (D_p), default 10000 */
  uint32_t family_size; /* ccc family size, default 8 */
  uint32_t max_a;       /* delta universes, default 2 */
  uint32_t max_b;       /* default 2 */
  uint32_t colors;      /* default 3 */
  uint32_t max_x;       /* sba universes, default 3 */
  uint32_t block;       /* sba block size B, default 2 */
} hdf_experiment_config;

HDF_API void hdf_experiment_config_init(hdf_experiment_config* cfg);

/* Names one experiment per line: "name<TAB>summary". */
HDF_API hdf_status hdf_experiment_list(char** out);

/* Runs a named experiment (see hdf_experiment_list). A found counterexample
 * gives HDF_COUNTEREXAMPLE, a failed validation HDF_VALIDATION_FAILURE. */
HDF_API hdf_status hdf_experiment(const hdf_morass* m, const char* name,
                                  const hdf_experiment_config* cfg,
                                  char** report, hdf_verdict* verdict);

/* Members of a truncated universe as a JSON array. kind is "delta"
 * (bounds max_a, max_b, colors) or "sba" (bounds max_x, block). */
HDF_API hdf_status hdf_enumerate(const hdf_morass* m, const char* kind,
                                 const hdf_experiment_config* cfg,
                                 char** out);

/* DOT drawing of the order produced by the "sba-generic" experiment. */
HDF_API hdf_status hdf_sba_generic_dot(const hdf_morass* m,
                                       const hdf_experiment_config* cfg,
                                       char** out);

#ifdef __cplusplus
}
#endif

#endif  /* HDFORCE_HDFORCE_H_ */
