/*
 * nlbox: exact construction and verification of the binary network
 * non-local box.
 *
 * Plain C interface. Objects are opaque handles released with the matching
 * *_free function. Every fallible call returns an nlbox_status; on failure
 * nlbox_last_error() describes the problem for the calling thread. Strings
 * returned through char** out-parameters are owned by the caller and must be
 * released with nlbox_string_free(). Strings returned directly as
 * const char* stay valid until the owning handle is freed.
 */
#ifndef NLBOX_NLBOX_H
#define NLBOX_NLBOX_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(NLBOX_BUILDING_LIBRARY)
#define NLBOX_API __declspec(dllexport)
#else
#define NLBOX_API __declspec(dllimport)
#endif
#else
#define NLBOX_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum nlbox_status {
  NLBOX_OK = 0,
  NLBOX_ERROR_INVALID_ARGUMENT = 1,
  NLBOX_ERROR_PARSE = 2,
  NLBOX_ERROR_RANGE = 3,
  NLBOX_ERROR_DOMAIN = 4,
  NLBOX_ERROR_RESOURCE = 5,
  NLBOX_ERROR_VALIDATION = 6,
  NLBOX_ERROR_INTERNAL = 7
} nlbox_status;

typedef enum nlbox_topology {
  NLBOX_LINE = 0,
  NLBOX_LOOP = 1
} nlbox_topology;

typedef struct nlbox_quad nlbox_quad;
typedef struct nlbox_table nlbox_table;
typedef struct nlbox_dist nlbox_dist;
typedef struct nlbox_report nlbox_report;

NLBOX_API const char* nlbox_version(void);
NLBOX_API const char* nlbox_status_name(nlbox_status status);
/* Message of the last failed call on this thread, "" if none. */
NLBOX_API const char* nlbox_last_error(void);
NLBOX_API void nlbox_string_free(char* s);

/* Enumeration limit for full distributions (default 16, env NLBOX_ENUM_LIMIT). */
NLBOX_API int nlbox_get_enumeration_limit(void);
NLBOX_API nlbox_status nlbox_set_enumeration_limit(int limit);

/* ---- exact numbers a + b*sqrt2 ---------------------------------------- */

NLBOX_API nlbox_status nlbox_quad_parse(const char* text, nlbox_quad** out);
NLBOX_API nlbox_status nlbox_quad_from_ints(long a, long b, nlbox_quad** out);
/* sqrt2^k */
NLBOX_API nlbox_status nlbox_quad_pow_sqrt2(unsigned k, nlbox_quad** out);
NLBOX_API nlbox_quad* nlbox_quad_clone(const nlbox_quad* x);
NLBOX_API void nlbox_quad_free(nlbox_quad* x);

NLBOX_API nlbox_status nlbox_quad_add(const nlbox_quad* x, const nlbox_quad* y, nlbox_quad** out);
NLBOX_API nlbox_status nlbox_quad_sub(const nlbox_quad* x, const nlbox_quad* y, nlbox_quad** out);
NLBOX_API nlbox_status nlbox_quad_mul(const nlbox_quad* x, const nlbox_quad* y, nlbox_quad** out);
/* NLBOX_ERROR_DOMAIN when y is zero. */
NLBOX_API nlbox_status nlbox_quad_div(const nlbox_quad* x, const nlbox_quad* y, nlbox_quad** out);
NLBOX_API nlbox_status nlbox_quad_neg(const nlbox_quad* x, nlbox_quad** out);

/* -1, 0 or +1, exact. */
NLBOX_API int nlbox_quad_sign(const nlbox_quad* x);
NLBOX_API int nlbox_quad_equal(const nlbox_quad* x, const nlbox_quad* y);
NLBOX_API nlbox_status nlbox_quad_to_double(const nlbox_quad* x, double* out);
/* Canonical text, e.g. "-147+104*sqrt2". */
NLBOX_API nlbox_status nlbox_quad_format(const nlbox_quad* x, char** out);
/* {"exact": ..., "a": "p/q", "b": "r/s", "float": ...} */
NLBOX_API nlbox_status nlbox_quad_to_json(const nlbox_quad* x, char** out);
NLBOX_API nlbox_status nlbox_quad_from_json(const char* json, nlbox_quad** out);

/* ---- correlators -------------------------------------------------------- */

NLBOX_API nlbox_status nlbox_table_create(int n_max, nlbox_table** out);
NLBOX_API void nlbox_table_free(nlbox_table* table);
NLBOX_API int nlbox_table_size(const nlbox_table* table);
/* E_k, 0 <= k <= n_max. */
NLBOX_API nlbox_status nlbox_table_line(const nlbox_table* table, int k, nlbox_quad** out);
/* E^o_k, 1 <= k <= n_max. */
NLBOX_API nlbox_status nlbox_table_loop(const nlbox_table* table, int k, nlbox_quad** out);
NLBOX_API nlbox_status nlbox_line_correlator_closed(int n, double* out);
NLBOX_API nlbox_status nlbox_loop_correlator_closed(int n, double* out);

/* ---- distributions ------------------------------------------------------ */

/* q = 2^n p of one outcome string such as "+-+". */
NLBOX_API nlbox_status nlbox_q_value(nlbox_topology topology, const char* outcome, const nlbox_table* table,
                                     nlbox_quad** out);
NLBOX_API nlbox_status nlbox_dist_create(nlbox_topology topology, int n, const nlbox_table* table,
                                         nlbox_dist** out);
NLBOX_API void nlbox_dist_free(nlbox_dist* dist);
/* Copy with every output flipped. */
NLBOX_API nlbox_status nlbox_dist_flip(const nlbox_dist* dist, nlbox_dist** out);
NLBOX_API uint64_t nlbox_dist_size(const nlbox_dist* dist);
/* Outcome index: bit j set means x_{j+1} = -1. */
NLBOX_API nlbox_status nlbox_dist_q(const nlbox_dist* dist, uint64_t index, nlbox_quad** out);
NLBOX_API nlbox_status nlbox_dist_outcome(const nlbox_dist* dist, uint64_t index, char** out);
/* Number of outcomes with q < 0 (exact). */
NLBOX_API nlbox_status nlbox_dist_count_negative(const nlbox_dist* dist, int workers, uint64_t* out);

/* ---- command reports ---------------------------------------------------- */

NLBOX_API nlbox_status nlbox_correlators(int n, const char* golden_path_or_null, nlbox_report** out);
NLBOX_API nlbox_status nlbox_dist_table(nlbox_topology topology, int n, nlbox_report** out);
NLBOX_API nlbox_status nlbox_verify(nlbox_topology topology, int n_max, int workers, nlbox_report** out);
NLBOX_API nlbox_status nlbox_lemma1(nlbox_report** out);
NLBOX_API nlbox_status nlbox_bound(double tolerance, nlbox_report** out);
NLBOX_API nlbox_status nlbox_search_certificate(int reference_support_only, int forbid_e3_squared,
                                                nlbox_report** out);
NLBOX_API nlbox_status nlbox_sample(nlbox_topology topology, int n, uint64_t count, uint64_t seed,
                                    nlbox_report** out);

NLBOX_API int nlbox_report_passed(const nlbox_report* report);
NLBOX_API const char* nlbox_report_text(const nlbox_report* report);
NLBOX_API const char* nlbox_report_json(const nlbox_report* report);
/* "" for reports without tabular output. */
NLBOX_API const char* nlbox_report_csv(const nlbox_report* report);
NLBOX_API void nlbox_report_free(nlbox_report* report);

#ifdef __cplusplus
}
#endif

#endif /* NLBOX_NLBOX_H */
