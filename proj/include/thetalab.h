/* C interface to the thetalab core library.
 *
 * All functions return an error code:
 *   0  success
 *   1  computation error (domain/precondition failure)
 *   2  validation error (bad scenario or input document)
 *   64 usage error (unknown command, malformed options)
 *
 * Strings returned through out-parameters are heap-allocated and must be
 * released with tl_string_free. tl_last_error returns a thread-local
 * message describing the most recent failure on the calling thread.
 */
#ifndef THETALAB_H
#define THETALAB_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct tl_scenario tl_scenario;

/* Parse and validate a scenario JSON file. */
int tl_scenario_load_file(const char* path, tl_scenario** out);

/* Parse and validate a scenario from a JSON string. */
int tl_scenario_load_json(const char* text, tl_scenario** out);

void tl_scenario_free(tl_scenario* sc);

/* Run a command against a scenario and return the JSON report.
 * Commands: curve-info, tate, theta-data, pilots, indet, inequality.
 * options_json may be NULL or a JSON object with any of: digits,
 * precision, n0, cache, strict_processions, precision_cap, approx_digits. */
int tl_report(const tl_scenario* sc, const char* command,
              const char* options_json, char** out_json);

/* Expected log-volume of a standalone region document. */
int tl_region_volume_json(const char* region_json, char** out_json);

void tl_string_free(char* s);

/* Static name for an error code ("ok", "computation", ...). */
const char* tl_errname(int code);

/* Thread-local message for the last failed call; empty if none. */
const char* tl_last_error(void);

#ifdef __cplusplus
}
#endif

#endif /* THETALAB_H */
