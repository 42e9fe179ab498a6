/*
 * Copyright 2026 The dkd Authors
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
 * dkd: distance-k dispersion of mobile robots on a dynamic ring.
 *
 * Plain C interface to the simulator and the exhaustive verifier. All objects
 * are opaque handles owned by the caller and released with the matching
 * *_free function. Every call that can fail returns a dkd_status; the message
 * of the most recent failure on the calling thread is available from
 * dkd_last_error().
 *
 * Functions that fill a caller buffer follow one pattern: pass buf = NULL (or a
 * too small capacity) to learn the required size through *needed, then call
 * again. DKD_BUFFER_TOO_SMALL is returned in the second case. Strings are
 * NUL-terminated and *needed counts the terminator.
 */

#ifndef DKD_DKD_H_
#define DKD_DKD_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(DKD_BUILDING_LIBRARY)
#    define DKD_API __declspec(dllexport)
#  else
#    define DKD_API __declspec(dllimport)
#  endif
#else
#  define DKD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dkd_status {
  DKD_OK = 0,
  DKD_INVALID_ARGUMENT = 1,
  DKD_ILLEGAL_TRAVERSAL = 2,
  DKD_PROTOCOL_CANNOT_ACT = 3,
  DKD_INAPPLICABLE = 4,
  DKD_CAP_EXCEEDED = 5,
  DKD_NOT_CHAIN_CLASSIFIABLE = 6,
  DKD_IO = 7,
  DKD_BUFFER_TOO_SMALL = 8,
  DKD_INTERNAL = 9
} dkd_status;

/* Edge value meaning "no edge removed this round". */
#define DKD_NO_EDGE (-1)

typedef struct dkd_params {
  uint32_t n;            /* ring size, >= 2 */
  uint32_t k;            /* target distance, >= 1 */
  uint32_t l;            /* robots, 1 <= l <= n / k */
  uint32_t initial_node; /* root node, < n */
  uint64_t round_limit;  /* 0 selects the default of n rounds */
} dkd_params;

typedef enum dkd_adversary_kind {
  DKD_ADV_NONE = 0,       /* never removes an edge */
  DKD_ADV_RANDOM = 1,     /* seeded, uniform over every edge and "none" */
  DKD_ADV_SCRIPTED = 2,   /* script[i] for round i, DKD_NO_EDGE afterwards */
  DKD_ADV_GOOD_CHAIN = 3  /* removes the edge the protocol wants to use */
} dkd_adversary_kind;

typedef struct dkd_adversary {
  dkd_adversary_kind kind;
  uint64_t seed;
  const int64_t* script; /* edge index or DKD_NO_EDGE per round */
  size_t script_len;
} dkd_adversary;

typedef enum dkd_classification {
  DKD_CLASS_CHAIN = 0,
  DKD_CLASS_BLOCKS = 1,
  DKD_CLASS_TARGET = 2,
  DKD_CLASS_INVALID = 3
} dkd_classification;

typedef enum dkd_phase { DKD_PHASE_SPREAD = 0, DKD_PHASE_RECONSTRUCT = 1, DKD_PHASE_HALT = 2 } dkd_phase;

typedef enum dkd_outcome_kind {
  DKD_OUTCOME_TERMINATED = 0,
  DKD_OUTCOME_BOUND_EXCEEDED = 1,
  DKD_OUTCOME_FROZEN = 2,
  DKD_OUTCOME_ESCAPED = 3,
  DKD_OUTCOME_IN_PROGRESS = 4
} dkd_outcome_kind;

typedef enum dkd_move { DKD_MOVE_STAY = 0, DKD_MOVE_CW = 1, DKD_MOVE_CCW = 2 } dkd_move;

typedef struct dkd_outcome {
  dkd_outcome_kind kind;
  uint64_t rounds;
} dkd_outcome;

typedef struct dkd_round_info {
  uint64_t round;
  int64_t missing_edge; /* DKD_NO_EDGE when every edge was present */
  dkd_classification classification;
  dkd_phase phase;
  /* Semi-synchronous traces only; activated_robot is 0 otherwise. */
  uint32_t activated_robot;
  dkd_move activated_move;
} dkd_round_info;

typedef struct dkd_trace dkd_trace;
typedef struct dkd_session dkd_session;
typedef struct dkd_report dkd_report;

DKD_API const char* dkd_version(void);
DKD_API const char* dkd_status_string(dkd_status status);
/* Message of the last failed call on this thread; "" if none. */
DKD_API const char* dkd_last_error(void);

DKD_API const char* dkd_classification_name(dkd_classification c);
DKD_API const char* dkd_phase_name(dkd_phase p);
DKD_API const char* dkd_outcome_name(dkd_outcome_kind kind);
DKD_API const char* dkd_move_name(dkd_move m);

/* Checks parameters. Warnings for unsupported but accepted values (k = 1,
 * l = 1) are joined with '\n' into buf. */
DKD_API dkd_status dkd_validate_params(const dkd_params* params, char* buf, size_t cap,
                                       size_t* needed);

/* Parses one line of adversary input: an edge index below n or "none".
 * *edge receives the index or DKD_NO_EDGE. */
DKD_API dkd_status dkd_parse_edge_choice(const char* line, uint32_t n, int64_t* edge);

/* ---- Runs ---------------------------------------------------------------- */

DKD_API dkd_status dkd_run_fsync(const dkd_params* params, const dkd_adversary* adversary,
                                 dkd_trace** out);
/* Semi-synchronous run of `rounds` rounds against the hostile scheduler.
 * Requires l >= 2. */
DKD_API dkd_status dkd_run_ssync_demo(const dkd_params* params, uint64_t rounds,
                                      dkd_trace** out);
/* Parses a serialized trace. */
DKD_API dkd_status dkd_trace_parse(const char* text, size_t len, dkd_trace** out);

DKD_API void dkd_trace_free(dkd_trace* trace);
DKD_API dkd_outcome dkd_trace_outcome(const dkd_trace* trace);
DKD_API size_t dkd_trace_record_count(const dkd_trace* trace);
DKD_API dkd_status dkd_trace_record(const dkd_trace* trace, size_t index, dkd_round_info* out);
/* Start-of-round robot counts per node of record `index`. */
DKD_API dkd_status dkd_trace_record_occupancy(const dkd_trace* trace, size_t index,
                                              uint32_t* buf, size_t cap, size_t* needed);
DKD_API size_t dkd_trace_warning_count(const dkd_trace* trace);
DKD_API const char* dkd_trace_warning(const dkd_trace* trace, size_t index);
/* Replays the trace and runs every per-round and end-of-run check. Each
 * violation becomes one line of buf; *violations receives their number. */
DKD_API dkd_status dkd_trace_check(const dkd_trace* trace, size_t* violations, char* buf,
                                   size_t cap, size_t* needed);
/* JSON lines: one header line, then one line per round. */
DKD_API dkd_status dkd_trace_serialize(const dkd_trace* trace, char* buf, size_t cap,
                                       size_t* needed);
DKD_API dkd_status dkd_trace_write_file(const dkd_trace* trace, const char* path);

/* ---- Step-by-step sessions (the caller chooses each missing edge) -------- */

DKD_API dkd_status dkd_session_create(const dkd_params* params, const char* adversary_name,
                                      dkd_session** out);
DKD_API void dkd_session_free(dkd_session* session);
/* 1 once the target is reached or the round limit is spent. */
DKD_API int dkd_session_finished(const dkd_session* session);
DKD_API uint64_t dkd_session_round(const dkd_session* session);
DKD_API dkd_classification dkd_session_classification(const dkd_session* session);
/* ASCII ring: '.' empty, 'o' one robot, a digit for more (capped at 9), and
 * between cells '-' for an edge or 'x' for the missing one. */
DKD_API dkd_status dkd_session_render(const dkd_session* session, int64_t missing_edge,
                                      char* buf, size_t cap, size_t* needed);
DKD_API dkd_status dkd_session_step(dkd_session* session, int64_t missing_edge);
/* Snapshot of the run so far. */
DKD_API dkd_status dkd_session_trace(const dkd_session* session, dkd_trace** out);

/* ---- Exhaustive verification --------------------------------------------- */

typedef struct dkd_verify_options {
  uint32_t max_n;      /* 0 selects 12 */
  uint64_t max_states; /* 0 selects 5000000 */
} dkd_verify_options;

typedef struct dkd_report_info {
  uint32_t n, k, l;
  uint64_t states_explored;
  uint64_t transitions_checked;
  uint64_t worst_case_rounds;
  uint64_t best_case_rounds;
  uint64_t bound;
  int certified;
  size_t violation_count;
  int has_counterexample;
} dkd_report_info;

/* options may be NULL. Returns DKD_CAP_EXCEEDED when the instance is over the
 * configured limits; the message then carries the partial statistics. */
DKD_API dkd_status dkd_verify(uint32_t n, uint32_t k, uint32_t l,
                              const dkd_verify_options* options, dkd_report** out);
DKD_API void dkd_report_free(dkd_report* report);
DKD_API dkd_status dkd_report_info_get(const dkd_report* report, dkd_report_info* out);
DKD_API dkd_status dkd_report_violation(const dkd_report* report, size_t index, char* buf,
                                        size_t cap, size_t* needed);
/* Copy of the counterexample trace; DKD_INAPPLICABLE when there is none. */
DKD_API dkd_status dkd_report_counterexample(const dkd_report* report, dkd_trace** out);
/* One JSON object on one line. */
DKD_API dkd_status dkd_report_serialize(const dkd_report* report, char* buf, size_t cap,
                                        size_t* needed);

#ifdef __cplusplus
}
#endif

#endif /* DKD_DKD_H_ */
