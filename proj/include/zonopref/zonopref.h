#ifndef ZONOPREF_H
#define ZONOPREF_H

/* C interface to the zonopref library. Every call returns a zp_status;
   on failure zp_last_error() describes the problem for the calling thread.
   Strings handed out through char** parameters belong to the caller and are
   released with zp_string_free. */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(ZONOPREF_BUILDING)
#    define ZP_API __declspec(dllexport)
#  else
#    define ZP_API __declspec(dllimport)
#  endif
#else
#  define ZP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define ZP_ABI_VERSION 1

typedef enum zp_status {
  ZP_OK = 0,
  ZP_ERR_IO = 1,
  ZP_ERR_PARSE = 2,
  ZP_ERR_SCHEMA = 3,
  ZP_ERR_DUPLICATE_ELEMENT = 4,
  ZP_ERR_UNKNOWN_ELEMENT = 5,
  ZP_ERR_NOT_REFLEXIVE = 6,
  ZP_ERR_NOT_TRANSITIVE = 7,
  ZP_ERR_INSTANCE_TOO_LARGE = 8,
  ZP_ERR_PRODUCT_TOO_LARGE = 9,
  ZP_ERR_NOT_INTERVAL_ORDER = 10,
  ZP_ERR_NO_DECOMPOSITION_WITHIN_BOUND = 11,
  ZP_ERR_MISSING_COORDINATES = 12,
  ZP_ERR_DIMENSION_MISMATCH = 13,
  ZP_ERR_NEGATIVE_BASIS_COMPONENT = 14,
  ZP_ERR_NOT_TWO_DIMENSIONAL = 15,
  ZP_ERR_EPS_TOO_LARGE = 16,
  ZP_ERR_ARITY_MISMATCH = 17,
  ZP_ERR_UNKNOWN_ALTERNATIVE = 18,
  ZP_ERR_INVALID_ARGUMENT = 19,
  ZP_ERR_INTERNAL = 20
} zp_status;

/* A command can succeed (ZP_OK) and still report a failed check. */
typedef enum zp_outcome {
  ZP_OUTCOME_OK = 0,
  ZP_OUTCOME_VIOLATIONS = 1,
  ZP_OUTCOME_AXIOM_FAILURE = 2,
  ZP_OUTCOME_UNFAITHFUL = 3
} zp_outcome;

typedef struct zp_problem zp_problem;
typedef struct zp_zonotope zp_zonotope;

ZP_API int zp_abi_version(void);
ZP_API const char* zp_status_name(zp_status status);

/* Message of the last failed call on this thread ("" if none). */
ZP_API const char* zp_last_error(void);
/* Identifiers demonstrating the last failure (e.g. a transitivity triple). */
ZP_API size_t zp_last_error_witness_count(void);
ZP_API const char* zp_last_error_witness(size_t index);

ZP_API zp_status zp_problem_from_json(const char* text, zp_problem** out);
ZP_API zp_status zp_problem_from_file(const char* path, zp_problem** out);
ZP_API void zp_problem_free(zp_problem* problem);
/* Same keys as the "options" object of a problem file, values as text. */
ZP_API zp_status zp_problem_set_option(zp_problem* problem, const char* key, const char* value);
/* Canonical JSON of the problem as parsed (re-readable). */
ZP_API zp_status zp_problem_to_json(const zp_problem* problem, char** out);

/* Command entry points. `outcome` may be NULL. */
ZP_API zp_status zp_validate(const zp_problem* p, char** out, zp_outcome* outcome);
ZP_API zp_status zp_quotient(const zp_problem* p, char** out, zp_outcome* outcome);
ZP_API zp_status zp_width(const zp_problem* p, char** out, zp_outcome* outcome);
ZP_API zp_status zp_extend(const zp_problem* p, char** out, zp_outcome* outcome);
ZP_API zp_status zp_dimension(const zp_problem* p, char** out, zp_outcome* outcome);
ZP_API zp_status zp_interval_check(const zp_problem* p, char** out, zp_outcome* outcome);
ZP_API zp_status zp_decompose(const zp_problem* p, char** out, zp_outcome* outcome);
ZP_API zp_status zp_represent(const zp_problem* p, char** out, zp_outcome* outcome);
ZP_API zp_status zp_compare(const zp_problem* p, const char* x, const char* y, int certificate,
                            char** out, zp_outcome* outcome);
/* normal_csv/threshold may be NULL to search for a separating hyperplane. */
ZP_API zp_status zp_separate(const zp_problem* p, const char* above, const char* below,
                             const char* normal_csv, const char* threshold, char** out,
                             zp_outcome* outcome);
ZP_API zp_status zp_render(const zp_problem* p, char** svg, zp_outcome* outcome);
ZP_API zp_status zp_report(const zp_problem* p, char** out, zp_outcome* outcome);

ZP_API void zp_string_free(char* s);

/* Standalone zonotopes: {"base": [..], "generators": [{"v": [..], "lo": .., "hi": ..}]}. */
ZP_API zp_status zp_zonotope_from_json(const char* text, zp_zonotope** out);
ZP_API void zp_zonotope_free(zp_zonotope* z);
ZP_API size_t zp_zonotope_dim(const zp_zonotope* z);
ZP_API zp_status zp_zonotope_to_json(const zp_zonotope* z, char** out);
ZP_API zp_status zp_zonotope_minkowski_sum(const zp_zonotope* a, const zp_zonotope* b,
                                           zp_zonotope** out);
ZP_API zp_status zp_zonotope_difference(const zp_zonotope* a, const zp_zonotope* b,
                                        zp_zonotope** out);
/* Exact support value h(direction) as a rational string. */
ZP_API zp_status zp_zonotope_support(const zp_zonotope* z, const char* direction_csv, char** out);
/* JSON array of [x, y] vertices, counterclockwise. */
ZP_API zp_status zp_zonotope_vertices_2d(const zp_zonotope* z, char** out);

#ifdef __cplusplus
}
#endif

#endif
