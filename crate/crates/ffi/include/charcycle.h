#ifndef CHARCYCLE_H
#define CHARCYCLE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Run flags.
 */
#define CC_FLAG_VERTICES 1

/*
 Render as JSON instead of text.
 */
#define CC_FORMAT_JSON 1

/*
 Status codes returned by every function.
 */
typedef enum CcStatus {
  CC_STATUS_OK = 0,
  /*
   A required pointer argument was null.
   */
  CC_STATUS_NULL_ARGUMENT = 1,
  /*
   A string argument was not valid UTF-8.
   */
  CC_STATUS_INVALID_UTF8 = 2,
  /*
   The job text did not parse.
   */
  CC_STATUS_PARSE = 3,
  /*
   The engine failed (unresolved component, non-holonomic input, ...).
   */
  CC_STATUS_ENGINE = 4,
  /*
   An internal panic was caught at the boundary.
   */
  CC_STATUS_INTERNAL = 5,
} CcStatus;

/*
 A parsed job.
 */
typedef struct CcJob CcJob;

/*
 The result of running a job.
 */
typedef struct CcReport CcReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the last failure on this thread, or null. Valid until the
 next call into the library from the same thread.
 */
const char *cc_last_error(void);

/*
 Parses a job. On success `*out` owns a job to release with `cc_job_free`.

 # Safety
 `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum CcStatus cc_job_parse(const char *text, struct CcJob **out);

/*
 Releases a job. Null is ignored.

 # Safety
 `job` must come from `cc_job_parse` and not be used afterwards.
 */
void cc_job_free(struct CcJob *job);

/*
 Runs a job. `flags` is a combination of `CC_FLAG_*`. On success `*out`
 owns a report to release with `cc_report_free`.

 # Safety
 `job` must be a live job and `out` a valid pointer.
 */
enum CcStatus cc_run(const struct CcJob *job, uint32_t flags, struct CcReport **out);

/*
 Number of warnings attached to a report (0 for null).

 # Safety
 `report` must be null or a live report.
 */
uintptr_t cc_report_warning_count(const struct CcReport *report);

/*
 Renders a report; `format` is 0 for text or `CC_FORMAT_JSON`. On success
 `*out` owns a string to release with `cc_string_free`.

 # Safety
 `report` must be a live report and `out` a valid pointer.
 */
enum CcStatus cc_report_render(const struct CcReport *report, uint32_t format, char **out);

/*
 Releases a report. Null is ignored.

 # Safety
 `report` must come from `cc_run` and not be used afterwards.
 */
void cc_report_free(struct CcReport *report);

/*
 Releases a string returned by the library. Null is ignored.

 # Safety
 `s` must come from this library and not be used afterwards.
 */
void cc_string_free(char *s);

/*
 Library version, a static string.
 */
const char *cc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHARCYCLE_H */
