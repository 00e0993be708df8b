/* Copyright 2023 The Authors.
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

/* C interface to the flatgeom library.
 *
 * Every call returns an fg_status. On failure the message is available from
 * fg_last_error() on the same thread until the next call. Strings returned
 * through char** are JSON documents carrying "v": FG_SCHEMA_VERSION and are
 * released with fg_string_free. Handles are released with their *_free
 * function; passing NULL to a free function is a no-op.
 *
 * Element sets cross the boundary as arrays of ids. Spectrum sets are text
 * such as "0,1,3+,omega".
 */

#ifndef FLATGEOM_FLATGEOM_H_
#define FLATGEOM_FLATGEOM_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(FLATGEOM_BUILDING)
#define FLATGEOM_API __declspec(dllexport)
#else
#define FLATGEOM_API __declspec(dllimport)
#endif
#else
#define FLATGEOM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define FG_SCHEMA_VERSION 1

typedef enum fg_status {
  FG_OK = 0,
  FG_INVALID_ARGUMENT = 1,
  FG_PARSE = 2,
  FG_INVALID_ELEMENT = 3,
  FG_GROUND_TOO_LARGE = 4,
  FG_NO_LARGE_CIRCUIT = 5,
  FG_NOT_INDEPENDENT = 6,
  FG_EMPTY_COLLECTION = 7,
  FG_INVALID_SEQUENCE = 8,
  FG_INVALID_CONFIG = 9,
  FG_NOT_EXTENDABLE = 10,
  FG_INCOHERENT_SCHEDULE = 11,
  FG_PROFILE_INVALID = 12,
  FG_INVALID_STRUCTURE = 13,
  FG_INTERNAL = 14
} fg_status;

typedef struct fg_matroid fg_matroid;
typedef struct fg_structure fg_structure;
typedef struct fg_lambda_scenario fg_lambda_scenario;
typedef struct fg_going_down fg_going_down;

FLATGEOM_API const char* fg_version(void);
FLATGEOM_API const char* fg_status_name(fg_status status);
FLATGEOM_API const char* fg_last_error(void);
FLATGEOM_API void fg_string_free(char* s);

/* Matroids: JSON text as in the matroid file format, or a corpus name. */
FLATGEOM_API fg_status fg_matroid_from_json(const char* json, fg_matroid** out);
FLATGEOM_API fg_status fg_matroid_from_corpus(const char* name,
                                              fg_matroid** out);
FLATGEOM_API void fg_matroid_free(fg_matroid* m);
FLATGEOM_API fg_status fg_matroid_size(const fg_matroid* m, int* out);
FLATGEOM_API fg_status fg_matroid_rank(const fg_matroid* m, const int* ids,
                                       size_t count, int* out);
/* Writes the closure's ids (at most `capacity`) and its size to *out_count. */
FLATGEOM_API fg_status fg_matroid_closure(const fg_matroid* m, const int* ids,
                                          size_t count, int* out_ids,
                                          size_t capacity, size_t* out_count);
FLATGEOM_API fg_status fg_matroid_to_json(const fg_matroid* m, char** out);

/* bound <= 0 keeps the default; sample != 0 checks random subsets. */
FLATGEOM_API fg_status fg_verify_pregeometry(const fg_matroid* m, int bound,
                                             int sample, uint64_t seed,
                                             char** out);
FLATGEOM_API fg_status fg_circuits(const fg_matroid* m, int max_size,
                                   char** out);
FLATGEOM_API fg_status fg_carousel_check(const fg_matroid* m, const int* abar,
                                         size_t abar_count, const int* bs,
                                         size_t bs_count, int* out);

/* flats_json: [[ids], ...]; each member must be a flat. */
FLATGEOM_API fg_status fg_delta(const fg_matroid* m, const char* flats_json,
                                int64_t* delta, int* union_dim);
FLATGEOM_API fg_status fg_check_flat(const fg_matroid* m, int max_sigma,
                                     int exhaustive, char** out);

/* strategy: 0 least candidate, 1 all branches. */
FLATGEOM_API fg_status fg_pps_run(const fg_matroid* m, const int* net,
                                  size_t net_count, int a1, int a2, int t1,
                                  int strategy, int budget, char** out);
FLATGEOM_API fg_status fg_pps_find_cycle(const fg_matroid* m, int budget,
                                         char** out);

/* Geometric structures: {"universe","matroid","phi","K"}. */
FLATGEOM_API fg_status fg_structure_from_json(const char* json,
                                              fg_structure** out);
FLATGEOM_API void fg_structure_free(fg_structure* g);
/* budget <= 0 uses the default, which always suffices. */
FLATGEOM_API fg_status fg_lambda_closure(const fg_structure* g, const int* x,
                                         size_t count, int budget, char** out);

/* Staged structures with a count oracle. */
FLATGEOM_API fg_status fg_lambda_scenario_from_json(const char* json,
                                                    fg_lambda_scenario** out);
FLATGEOM_API void fg_lambda_scenario_free(fg_lambda_scenario* s);
FLATGEOM_API fg_status fg_lambda_scenario_stages(const fg_lambda_scenario* s,
                                                 int* out);
/* bbar == NULL uses the scenario's own "bbar". */
FLATGEOM_API fg_status fg_acl_enumerate(const fg_lambda_scenario* s,
                                        const int* bbar, size_t count,
                                        int budget, char** out);
FLATGEOM_API fg_status fg_ild_estimate(const fg_lambda_scenario* s, int budget,
                                       char** out);

/* Going-down scenarios. Writes the trace and the verification report. */
FLATGEOM_API fg_status fg_going_down_from_json(const char* json,
                                               fg_going_down** out);
FLATGEOM_API void fg_going_down_free(fg_going_down* s);
FLATGEOM_API fg_status fg_going_down_run(const fg_going_down* s,
                                         char** trace, char** report);
/* A guess schedule converging to cl(bbar) in the matroid `m`. `script` is
 * JSON [{"element","stage","toggles"}, ...] or NULL. */
FLATGEOM_API fg_status fg_acl_schedule(const fg_matroid* m, const int* bbar,
                                       size_t count, const char* script,
                                       char** out);

/* Spectrum rules. p < 0 or ild < 0 means unspecified. */
FLATGEOM_API fg_status fg_validate_profile(int n, int p, int ild, char** out);
FLATGEOM_API fg_status fg_spectrum_classify(int n, int p, const char* set,
                                            char** out);
FLATGEOM_API fg_status fg_spectrum_cases(int n, char** out);

/* Corpus: list, one entry's JSON, and validation of every entry. */
FLATGEOM_API fg_status fg_corpus_list(char** out);
FLATGEOM_API fg_status fg_corpus_entry(const char* name, char** out);
FLATGEOM_API fg_status fg_corpus_check(char** out);

#ifdef __cplusplus
}
#endif

#endif /* FLATGEOM_FLATGEOM_H_ */
