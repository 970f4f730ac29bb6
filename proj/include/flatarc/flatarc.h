/* C interface to the flatarc library.
 *
 * Every function returns an fa_status. On failure fa_last_error() holds a
 * message for the calling thread until its next call. Strings handed out
 * through char** are owned by the caller and released with fa_string_free.
 * Handles are released with their matching *_free function; passing NULL
 * to any free function is a no-op.
 */
#ifndef FLATARC_FLATARC_H
#define FLATARC_FLATARC_H

#include <stdint.h>

#if defined(_WIN32)
#define FA_API __declspec(dllexport)
#else
#define FA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values match the CLI exit codes. */
typedef enum fa_status {
  FA_OK = 0,
  FA_ERR_HYPOTHESIS = 1, /* a hypothesis or placement condition failed */
  FA_ERR_PRECISION = 2,  /* certified precision ran out */
  FA_ERR_BUDGET = 3,     /* search budget exceeded */
  FA_ERR_INVALID = 64,   /* malformed or out-of-range input */
  FA_ERR_INTERNAL = 70,
  FA_ERR_IO = 74
} fa_status;

typedef struct fa_profile fa_profile;
typedef struct fa_construction fa_construction;
typedef struct fa_curve fa_curve;

FA_API const char* fa_version(void);
FA_API const char* fa_last_error(void);
/* Error class of the last failure, e.g. "HypothesisViolated". */
FA_API const char* fa_last_error_kind(void);
/* Extra certified digits estimated by the last FA_ERR_PRECISION, else 0. */
FA_API int fa_last_extra_digits(void);
FA_API void fa_string_free(char* s);

/* ---- exact arithmetic ---- */

/* Canonical form of a slope (rat:, quad:, cf:, dec: grammar). */
FA_API fa_status fa_slope_normalize(const char* w, char** out);
/* "<delta> q=<argmin>", the value exact when rational. */
FA_API fa_status fa_delta(const char* w, const char* x, char** out);

/* ---- Farey windows ---- */

typedef struct fa_farey_counts {
  uint64_t count_strict;
  uint64_t count_closed;
  double bound; /* z M / (pi^2 q), upper end of its enclosure */
  int satisfied;
  int hypothesis_met;
} fa_farey_counts;

/* mode: "sieve" or "enumerate". z is a rational literal. */
FA_API fa_status fa_farey_count(int64_t a, int64_t q, int64_t M, const char* z, const char* mode,
                                fa_farey_counts* out);
FA_API fa_status fa_farey_size(int64_t M, uint64_t* out);

/* ---- constants profiles ---- */

/* "paper" or "desk". */
FA_API fa_status fa_profile_named(const char* name, fa_profile** out);
FA_API fa_status fa_profile_from_json(const char* json, fa_profile** out);
FA_API fa_status fa_profile_to_json(const fa_profile* p, char** out);
FA_API void fa_profile_free(fa_profile* p);

/* ---- constructions ---- */

/* regime: auto, trivial, farey, irrational, rational, very_near, near,
 * glued. profile may be NULL for desk. */
FA_API fa_status fa_construct(const char* w, double ell, double r, const char* regime, const fa_profile* profile,
                              fa_construction** out);
FA_API void fa_construction_free(fa_construction* c);
FA_API fa_status fa_construction_regime(const fa_construction* c, char** out);
FA_API fa_status fa_construction_counts(const fa_construction* c, uint64_t* certified, uint64_t* candidates);
FA_API fa_status fa_construction_satisfied(const fa_construction* c, int* out);
/* Curve file text with the construction inputs as metadata. */
FA_API fa_status fa_construction_curve_text(const fa_construction* c, char** out);
/* JSON lines: config, rationale, params, claims, summary. */
FA_API fa_status fa_construction_report(const fa_construction* c, char** out);
FA_API fa_status fa_construction_svg(const fa_construction* c, char** out);

/* ---- curve files ---- */

FA_API fa_status fa_curve_parse(const char* text, fa_curve** out);
FA_API void fa_curve_free(fa_curve* c);
FA_API fa_status fa_curve_text(const fa_curve* c, char** out);
/* Marks the designated lattice points. */
FA_API fa_status fa_curve_svg(const fa_curve* c, char** out);
/* Metadata value, or FA_ERR_INVALID when the key is absent. */
FA_API fa_status fa_curve_meta(const fa_curve* c, const char* key, char** out);
/* Bound report for the curve. w may be NULL: the "w" metadata is used, else
 * the initial slope. format: "jsonl" or "csv". */
FA_API fa_status fa_curve_verify(const fa_curve* c, const char* w, const char* format, char** out);

/* ---- bounds ---- */

FA_API fa_status fa_local_bound(double ell, double r, double* out);
FA_API fa_status fa_geometric_bound(const char* w, double ell, double r, int64_t a, int64_t q, double* out);
/* measured < 0 means none. One JSON line. */
FA_API fa_status fa_bound_report(const char* w, double ell, double r, int64_t measured, char** out);
FA_API fa_status fa_slope_chain_oracle(const char* w, int64_t ell, double r, int64_t budget, int64_t* out);
/* CSV with a comment header: r, exponent, branch, running_max, running_min
 * over the convergent cubes in [r_min, r_max] plus `points` log-spaced values. */
FA_API fa_status fa_scan(const char* w, double alpha, double r_min, double r_max, int points, char** out);

#ifdef __cplusplus
}
#endif

#endif
