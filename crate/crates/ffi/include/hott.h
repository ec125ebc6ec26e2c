#ifndef HOTT_H
#define HOTT_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a session call.
typedef enum HottStatus {
  HOTT_STATUS_OK = 0,
  // Some declaration failed to type-check.
  HOTT_STATUS_CHECK_FAILED = 1,
  HOTT_STATUS_SYNTAX_ERROR = 2,
  HOTT_STATUS_IO_ERROR = 3,
  // A null pointer or invalid UTF-8 was passed in.
  HOTT_STATUS_INVALID_ARGUMENT = 4,
  // The checker panicked; the session should be freed.
  HOTT_STATUS_INTERNAL = 5,
} HottStatus;

// Opaque checking session.
typedef struct HottSession HottSession;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Create a new, empty session. Free it with `hott_session_free`.
struct HottSession *hott_session_new(void);

// Free a session. Passing null is allowed.
//
// # Safety
// `session` must be null or a pointer from `hott_session_new` not yet freed.
void hott_session_free(struct HottSession *session);

// Enable or disable η-rules in conversion for later checks.
//
// # Safety
// `session` must be a live session pointer.
enum HottStatus hott_session_set_eta(struct HottSession *session, bool enabled);

// Parse `source` and check its declarations into the session. `name` is
// used in messages only.
//
// # Safety
// `session` must be a live session; `name` and `source` must be
// nul-terminated strings.
enum HottStatus hott_check_source(struct HottSession *session,
                                  const char *name,
                                  const char *source);

// Read, parse and check a file into the session.
//
// # Safety
// `session` must be a live session; `path` must be a nul-terminated string.
enum HottStatus hott_check_file(struct HottSession *session, const char *path);

// Number of declarations checked successfully so far.
//
// # Safety
// `session` must be null or a live session.
uintptr_t hott_declaration_count(const struct HottSession *session);

// Report of the last check: one `OK <name>` or `FAIL <name>: <error>` line
// per declaration. Never null for a live session.
//
// # Safety
// `session` must be null or a live session.
const char *hott_last_report(const struct HottSession *session);

// Message describing the last failure, or an empty string.
//
// # Safety
// `session` must be null or a live session.
const char *hott_last_error(const struct HottSession *session);

// Comma-separated axiom footprint of a checked declaration, or null if
// no declaration has that name.
//
// # Safety
// `session` must be a live session; `name` must be a nul-terminated string.
const char *hott_footprint(struct HottSession *session, const char *name);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HOTT_H */
