#ifndef ARITHDYN_ARITHDYN_H
#define ARITHDYN_ARITHDYN_H

/* C interface to the arithdyn library.
 *
 * Numbers cross the boundary as decimal strings ("-12", "3/7"); points use
 * "p/q" or "inf". Every fallible call returns an ad_status, and on failure
 * ad_last_error() describes the problem for the calling thread. Strings
 * returned through char** out-parameters are owned by the caller and must be
 * released with ad_string_free. Handles are immutable once built and may be
 * shared between threads. */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(ARITHDYN_BUILDING_LIBRARY)
#    define ARITHDYN_API __declspec(dllexport)
#  else
#    define ARITHDYN_API __declspec(dllimport)
#  endif
#else
#  define ARITHDYN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ad_status {
  AD_OK = 0,
  AD_INVALID_ARGUMENT = 1,
  AD_DOMAIN = 2,
  AD_BIT_CAP_EXCEEDED = 3,
  AD_ITERATION_CAP = 4,
  AD_PRECISION_EXHAUSTED = 5,
  AD_SINGULAR = 6,
  AD_INTERNAL = 7
} ad_status;

typedef struct ad_point ad_point;
typedef struct ad_map ad_map;

ARITHDYN_API const char* ad_version(void);
/* Message for the last failed call on this thread ("" if none). */
ARITHDYN_API const char* ad_last_error(void);
ARITHDYN_API const char* ad_status_name(ad_status status);
ARITHDYN_API void ad_string_free(char* s);

/* Points of the projective line. */
ARITHDYN_API ad_status ad_point_parse(const char* text, ad_point** out);
ARITHDYN_API ad_status ad_point_new(const char* x0, const char* x1, ad_point** out);
ARITHDYN_API void ad_point_free(ad_point* p);
ARITHDYN_API ad_status ad_point_to_string(const ad_point* p, char** out);
ARITHDYN_API int ad_point_equal(const ad_point* a, const ad_point* b);

/* Rational maps num(z)/den(z); coefficient i is the coefficient of z^i. */
ARITHDYN_API ad_status ad_map_new(const char* const* num, size_t num_len, const char* const* den, size_t den_len,
                                  ad_map** out);
/* {"num": [...], "den": [...]} */
ARITHDYN_API ad_status ad_map_from_json(const char* json, ad_map** out);
ARITHDYN_API void ad_map_free(ad_map* m);
ARITHDYN_API int ad_map_degree(const ad_map* m);
ARITHDYN_API ad_status ad_map_resultant(const ad_map* m, char** out);
ARITHDYN_API ad_status ad_map_to_string(const ad_map* m, char** out);
ARITHDYN_API ad_status ad_map_apply(const ad_map* m, const ad_point* x, ad_point** out);
/* bit_cap = 0 selects the library default. */
ARITHDYN_API ad_status ad_map_iterate(const ad_map* m, const ad_point* x, unsigned long n, size_t bit_cap,
                                      ad_point** out);

/* Heights (natural logarithms). */
ARITHDYN_API ad_status ad_weil_height(const ad_point* x, double* out);
ARITHDYN_API ad_status ad_map_height(const ad_map* m, double* out);
ARITHDYN_API ad_status ad_height_drop_constants(const ad_map* m, double* e_up, double* e_low);
/* Certified enclosure lo <= hhat(x) <= hi; max_iterations 0 means the default (64). */
ARITHDYN_API ad_status ad_canonical_height(const ad_map* m, const ad_point* x, double tolerance,
                                           unsigned max_iterations, double* lo, double* hi);

/* Arithmetic. */
ARITHDYN_API ad_status ad_valuation(const char* rational, const char* p, long* out);
ARITHDYN_API ad_status ad_lte_valuation(const char* a, const char* b, const char* n, const char* p, long* out);
ARITHDYN_API ad_status ad_min_exponent_kv(const char* beta, const char* p, char** out);
/* places: "inf" or "inf,3,5". */
ARITHDYN_API ad_status ad_is_s_integral(const ad_point* x, const ad_point* beta, const char* places, int* out);

/* Command layer: JSON array of command names, a command's key schema, and a
 * full run returning the rendered report plus its exit code (0 ok, 1 invalid
 * input, 2 resource cap). ad_run_command returns AD_OK whenever a report was
 * produced, including error reports. */
ARITHDYN_API ad_status ad_command_names(char** out);
ARITHDYN_API ad_status ad_command_schema(const char* command, char** out);
ARITHDYN_API ad_status ad_run_command(const char* command, const char* config_json, char** report, int* exit_code);

#ifdef __cplusplus
}
#endif

#endif
