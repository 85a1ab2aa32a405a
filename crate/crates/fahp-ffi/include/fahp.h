/* C interface to the fahp decision engine. */

#ifndef FAHP_H
#define FAHP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by fallible calls. `Ok` is zero; the error values
// match the CLI exit codes where one exists.
typedef enum FahpStatus {
  FAHP_STATUS_OK = 0,
  // The file could not be read.
  FAHP_STATUS_IO_ERROR = 1,
  // The document was malformed or violated the study schema.
  FAHP_STATUS_SCHEMA_ERROR = 2,
  // Strict-mode ranking found a matrix with CR >= 0.10.
  FAHP_STATUS_CONSISTENCY_ERROR = 3,
  // A null pointer or otherwise invalid argument was passed.
  FAHP_STATUS_INVALID_ARGUMENT = 4,
} FahpStatus;

// Opaque handle to the result of a ranking run.
typedef struct FahpReport FahpReport;

// Opaque handle to a loaded, validated study.
typedef struct FahpStudy FahpStudy;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The most recent error message on this thread, or null if none. The caller
// owns the returned string.
char *fahp_last_error(void);

// Release a string returned by this library.
//
// # Safety
// `s` must be null or a pointer previously returned by a `fahp_*` call and
// not yet freed.
void fahp_string_free(char *s);

// Load and validate a study document from a file path.
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be a valid pointer.
enum FahpStatus fahp_study_load(const char *path, struct FahpStudy **out);

// Parse and validate a study document from a JSON string.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be a valid pointer.
enum FahpStatus fahp_study_parse(const char *json, struct FahpStudy **out);

// Release a study handle.
//
// # Safety
// `study` must be null or a handle from `fahp_study_load`/`fahp_study_parse`
// not yet freed.
void fahp_study_free(struct FahpStudy *study);

// The study's goal as a caller-owned string, or null on null input.
//
// # Safety
// `study` must be null or a live study handle.
char *fahp_study_goal(const struct FahpStudy *study);

// Run the ranking pipeline. With `strict` set, any comparison matrix with
// CR >= 0.10 fails the call instead of producing a report.
//
// # Safety
// `study` must be a live study handle; `out` must be a valid pointer.
enum FahpStatus fahp_rank(const struct FahpStudy *study, bool strict, struct FahpReport **out);

// Release a report handle.
//
// # Safety
// `report` must be null or a handle from `fahp_rank` not yet freed.
void fahp_report_free(struct FahpReport *report);

// The report as schema-stable JSON. Caller owns the string.
//
// # Safety
// `report` must be null or a live report handle.
char *fahp_report_json(const struct FahpReport *report);

// The report rendered as markdown. Caller owns the string.
//
// # Safety
// `report` must be null or a live report handle.
char *fahp_report_markdown(const struct FahpReport *report);

// Graded-mean defuzzification of the triangle `(l, m, u)`. Returns NaN when
// the components are not ordered.
double fahp_defuzzify(double l, double m, double u);

// Degree of possibility that triangle `a` is at least triangle `b`. Returns
// NaN when either triple is not ordered.
double fahp_possibility_degree(double a_l,
                               double a_m,
                               double a_u,
                               double b_l,
                               double b_m,
                               double b_u);

// Kendall's coefficient of concordance over a row-major `raters x items`
// grid of ranks (mid-ranks for ties). Writes W to `out_w`.
//
// # Safety
// `ranks` must point to `raters * items` doubles; `out_w` must be valid.
enum FahpStatus fahp_kendalls_w(const double *ranks,
                                uintptr_t raters,
                                uintptr_t items,
                                bool tie_correction,
                                double *out_w);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FAHP_H */
