#ifndef HSTAB_H
#define HSTAB_H

/* C interface to the hstab library. Every function returns an hstab_status;
 * on failure the session keeps a message retrievable with
 * hstab_session_last_error. Strings returned through out-parameters are
 * released with hstab_string_free. */

#ifdef __cplusplus
extern "C" {
#endif

#if defined(HSTAB_BUILDING)
#define HSTAB_API __attribute__((visibility("default")))
#else
#define HSTAB_API
#endif

typedef enum hstab_status {
  HSTAB_OK = 0,
  HSTAB_ERROR_ARGUMENT = 1,
  HSTAB_ERROR_PARSE = 2,
  HSTAB_ERROR_RESOURCE = 3,
  HSTAB_ERROR_INTERNAL = 4
} hstab_status;

typedef struct hstab_session hstab_session;
typedef struct hstab_report hstab_report;

HSTAB_API const char* hstab_version(void);

/* options_json may be NULL or an object with optional keys
 * "cache_dir" (string), "no_cache" (bool), "jobs" (int >= 1),
 * "max_entries" (int >= 1). Without cache_dir the default cache
 * directory is used ($HSTAB_CACHE_DIR, else the user cache root). */
HSTAB_API hstab_status hstab_session_create(const char* options_json, hstab_session** out);
HSTAB_API void hstab_session_destroy(hstab_session* session);
/* Message of the last failed call on this session; "" if none. */
HSTAB_API const char* hstab_session_last_error(const hstab_session* session);

/* Runs a command (homology, stability, injective-words, ss,
 * group-homology, snf, counterexample) with a JSON object of parameters. */
HSTAB_API hstab_status hstab_run(hstab_session* session, const char* command, const char* params_json,
                                 hstab_report** out);
/* 1 when no prediction was violated, else 0. */
HSTAB_API int hstab_report_pass(const hstab_report* report);
/* format: "json", "csv" or "md". */
HSTAB_API hstab_status hstab_report_render(const hstab_report* report, const char* format, int include_timing,
                                           char** out);
HSTAB_API void hstab_report_destroy(hstab_report* report);
HSTAB_API void hstab_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
