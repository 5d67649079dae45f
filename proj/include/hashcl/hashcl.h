/* SPDX-License-Identifier: Apache-2.0 */
#ifndef HASHCL_HASHCL_H
#define HASHCL_HASHCL_H

/*
 * C interface to the HCL toolchain: parsing, well-formedness, typing,
 * resolution against a registry of deployed components, stub generation.
 *
 * Handles are opaque. Every function returning hashcl_status stores a
 * message retrievable with hashcl_last_error() when it fails; the message
 * is thread-local and valid until the next failing call on that thread.
 * Strings returned by accessors are owned by the handle they come from.
 */

#include <stddef.h>

#if defined(HASHCL_BUILDING_LIBRARY)
#define HASHCL_API __attribute__((visibility("default")))
#else
#define HASHCL_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hashcl_status {
    HASHCL_OK = 0,
    HASHCL_ERR_USAGE = 1,             /* invalid argument */
    HASHCL_ERR_INPUT = 2,             /* lexical, syntax, well-formedness or typing failure */
    HASHCL_ERR_NO_IMPLEMENTATION = 3, /* resolution found no deployed implementation */
    HASHCL_ERR_IO = 4,
    HASHCL_ERR_INTERNAL = 5
} hashcl_status;

typedef struct hashcl_registry hashcl_registry;
typedef struct hashcl_report hashcl_report;

HASHCL_API const char* hashcl_version(void);
HASHCL_API const char* hashcl_last_error(void);
HASHCL_API const char* hashcl_status_name(hashcl_status status);

/* Registry ------------------------------------------------------------- */

/* path: registry root directory (containing registry.manifest) or the
 * manifest file. */
HASHCL_API hashcl_status hashcl_registry_load(const char* path, hashcl_registry** out);
HASHCL_API hashcl_status hashcl_registry_empty(hashcl_registry** out);
HASHCL_API void hashcl_registry_free(hashcl_registry* registry);

HASHCL_API size_t hashcl_registry_abstract_count(const hashcl_registry* registry);
HASHCL_API size_t hashcl_registry_concrete_count(const hashcl_registry* registry);
HASHCL_API size_t hashcl_registry_edge_count(const hashcl_registry* registry);

/* Reports -------------------------------------------------------------- */

/* Result lines of a command (what a driver prints on standard output). */
HASHCL_API size_t hashcl_report_line_count(const hashcl_report* report);
HASHCL_API const char* hashcl_report_line(const hashcl_report* report, size_t index);

/* Diagnostics (standard error). text is "file:line:col: error: Code: message". */
HASHCL_API size_t hashcl_report_diagnostic_count(const hashcl_report* report);
HASHCL_API const char* hashcl_report_diagnostic_text(const hashcl_report* report, size_t index);
HASHCL_API const char* hashcl_report_diagnostic_code(const hashcl_report* report, size_t index);
HASHCL_API const char* hashcl_report_diagnostic_message(const hashcl_report* report, size_t index);
HASHCL_API int hashcl_report_diagnostic_line(const hashcl_report* report, size_t index);
HASHCL_API int hashcl_report_diagnostic_column(const hashcl_report* report, size_t index);

HASHCL_API hashcl_status hashcl_report_status(const hashcl_report* report);
HASHCL_API void hashcl_report_free(hashcl_report* report);

/* Commands ------------------------------------------------------------- */
/*
 * Each command fills *out with a report, also on failure, and returns the
 * report's status. source is HCL text; file names it in diagnostics.
 * HASHCL_ERR_USAGE without a report (*out == NULL) signals bad arguments.
 */

/* Canonical re-printing; n > 0 expands unit families into n instances. */
HASHCL_API hashcl_status hashcl_parse(const char* source, const char* file, unsigned n, hashcl_report** out);

HASHCL_API hashcl_status hashcl_check(const char* source, const char* file, const hashcl_registry* registry,
                                      hashcl_report** out);

/* The canonical type, then one line per discharged obligation. */
HASHCL_API hashcl_status hashcl_type(const char* source, const char* file, const hashcl_registry* registry,
                                     hashcl_report** out);

/* type_expression uses configuration-application syntax, e.g.
 * "Channel[MPIFull, Vector]". explain != 0 reports the visited demands. */
HASHCL_API hashcl_status hashcl_resolve(const char* type_expression, const hashcl_registry* registry, int explain,
                                        hashcl_report** out);

/* Writes stubs below out_dir; result lines are the written relative paths. */
HASHCL_API hashcl_status hashcl_gen(const char* source, const char* file, const hashcl_registry* registry,
                                    const char* out_dir, hashcl_report** out);

HASHCL_API hashcl_status hashcl_interp(const char* source, const char* file, const hashcl_registry* registry,
                                       hashcl_report** out);

#ifdef __cplusplus
}
#endif

#endif
