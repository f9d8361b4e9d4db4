/* Copyright (C) 2026 The kamred authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the kamred engine: reduction of quasi-periodically forced
 * linear Schrodinger operators on the sphere to block-diagonal normal form.
 *
 * All state lives behind opaque handles; every call returns a status code and
 * the last error message is retrievable per thread.  The heavy lifting
 * (assembly, regularization, the iterative reduction, Monte-Carlo measure
 * scans, time evolution) is driven through run configurations and writes
 * machine-readable reports into an output directory.
 */

#ifndef KAMRED_H
#define KAMRED_H

#include <stddef.h>

#if defined(_WIN32)
#define KAMRED_API __declspec(dllexport)
#else
#define KAMRED_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kamred_status {
  KAMRED_OK = 0,
  KAMRED_ERR_IO = 1,       /* missing or malformed files */
  KAMRED_ERR_CONFIG = 2,   /* parameter validation failure */
  KAMRED_ERR_DOMAIN = 3,   /* operation precondition violated */
  KAMRED_ERR_NUMERIC = 4,  /* divergent series, resonant divisor, ... */
  KAMRED_ERR_INTERNAL = 5, /* unexpected failure */
  KAMRED_ERR_ARGUMENT = 6  /* null handle or bad argument */
} kamred_status;

typedef struct kamred_config kamred_config; /* opaque run configuration */

/* Library version string, static storage. */
KAMRED_API const char* kamred_version(void);

/* Message of the most recent failure on this thread, static storage. */
KAMRED_API const char* kamred_last_error(void);

/* Loads a run configuration from a structured text file. */
KAMRED_API kamred_status kamred_config_open(const char* path, kamred_config** out);

/* Parses a run configuration from memory; base_dir resolves relative paths
 * (may be NULL for the current directory). */
KAMRED_API kamred_status kamred_config_parse(const char* text, const char* base_dir,
                                             kamred_config** out);

KAMRED_API void kamred_config_close(kamred_config* cfg);

/* Runs one pipeline stage ("assemble", "regularize", "reduce", "measure",
 * "evolve", "report") into out_dir. */
KAMRED_API kamred_status kamred_run_stage(kamred_config* cfg, const char* stage,
                                          const char* out_dir);

/* Runs the stages selected by the configuration, in canonical order. */
KAMRED_API kamred_status kamred_run_pipeline(kamred_config* cfg, const char* out_dir);

/* Runs the module invariant suites at small truncation.  Writes the matrix
 * as JSON when json_path is non-NULL; fills summary (if non-NULL) with up to
 * summary_len bytes of human-readable lines.  Returns KAMRED_OK when every
 * suite passes, KAMRED_ERR_NUMERIC otherwise. */
KAMRED_API kamred_status kamred_selfcheck(const char* json_path, char* summary,
                                          size_t summary_len);

#ifdef __cplusplus
}
#endif

#endif /* KAMRED_H */
