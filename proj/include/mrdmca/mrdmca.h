// Copyright 2026 The mrdmca-sim Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MRDMCA_MRDMCA_H
#define MRDMCA_MRDMCA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MRDMCA_BUILDING)
#    define MRD_API __declspec(dllexport)
#  else
#    define MRD_API __declspec(dllimport)
#  endif
#else
#  define MRD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    MRD_OK = 0,
    MRD_INVALID_ARGUMENT,   // null handle or out pointer, bad value
    MRD_CONFIG,             // bad grid key/value or config file
    MRD_INFEASIBLE,         // no connected deployment within the attempt cap
    MRD_IO,                 // file or CSV format error
    MRD_AGGREGATION,        // metrics refused the input
    MRD_AUDIT_MISMATCH,     // audit found rows inconsistent with ground truth
    MRD_INTERNAL,
} mrd_status;

typedef struct mrd_grid mrd_grid;
typedef struct mrd_results mrd_results;

// Message of the last failing call on this thread; "" if none.
MRD_API const char* mrd_last_error(void);
MRD_API const char* mrd_status_string(mrd_status status);
MRD_API const char* mrd_version(void);

// Single-cell grid with defaults (mrdmca, native termination, N=10, C=10,
// m=2, PR off, 100 runs, seed 1).
MRD_API mrd_status mrd_grid_create(mrd_grid** out);
// `baseline`, `controlled`, `scale` or `smoke`.
MRD_API mrd_status mrd_grid_create_builtin(const char* name, mrd_grid** out);
// Reads a `key = value` grid file.
MRD_API mrd_status mrd_grid_parse_config(const char* path, mrd_grid** out);
// Overrides one grid key, e.g. ("nodes", "3,10") or ("pr", "high").
MRD_API mrd_status mrd_grid_set(mrd_grid* grid, const char* key, const char* value);
MRD_API mrd_status mrd_grid_destroy(mrd_grid* grid);

// Runs every cell. `trace_path` may be NULL.
MRD_API mrd_status mrd_grid_run(const mrd_grid* grid, unsigned workers, const char* trace_path, mrd_results** out);

// CSV text owned by the caller; release with mrd_string_free.
MRD_API mrd_status mrd_results_aggregate_csv(const mrd_results* results, char** out);
MRD_API mrd_status mrd_results_per_run_csv(const mrd_results* results, char** out);
MRD_API mrd_status mrd_results_incomplete_count(const mrd_results* results, size_t* out);
MRD_API mrd_status mrd_results_destroy(mrd_results* results);
MRD_API void mrd_string_free(char* s);

// Checks a per-run CSV against re-derived ground truth. `report` (optional,
// free with mrd_string_free) lists problems. MRD_AUDIT_MISMATCH if any.
MRD_API mrd_status mrd_audit_per_run_csv(const char* path, size_t* rows, char** report);

// Writes one connected deployment as `id x y` lines. area <= 0 uses the default.
MRD_API mrd_status mrd_deploy_export(size_t nodes, double area, double range, uint64_t seed, const char* path);

#ifdef __cplusplus
}
#endif

#endif // MRDMCA_MRDMCA_H
