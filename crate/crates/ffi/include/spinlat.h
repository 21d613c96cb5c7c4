/* Copyright 2026 The spinlat developers. Apache-2.0. */

#ifndef SPINLAT_H
#define SPINLAT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Success.
 */
#define SPINLAT_OK 0

/**
 * A required pointer argument was null.
 */
#define SPINLAT_ERR_NULL 1

/**
 * Input text failed to parse (bad JSON or invalid UTF-8).
 */
#define SPINLAT_ERR_PARSE 2

/**
 * The model is semantically invalid (non-Hermitian, bad state spec, ...).
 */
#define SPINLAT_ERR_MODEL 3

/**
 * An algebra validation suite reported a violated relation.
 */
#define SPINLAT_ERR_VALIDATION 4

/**
 * A dense-oracle resource limit was exceeded.
 */
#define SPINLAT_ERR_RESOURCE 5

/**
 * Opaque parsed model handle.
 */
typedef struct SpinlatModel SpinlatModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *spinlat_last_error(void);

/**
 * Parse a JSON model file into a handle. On success writes the handle to
 * `out` and returns `SPINLAT_OK`.
 *
 * # Safety
 * `text` must be nul-terminated; `out` must be a valid pointer.
 */
int32_t spinlat_model_parse(const char *text, struct SpinlatModel **out);

/**
 * Release a model handle. Null is a no-op.
 *
 * # Safety
 * `model` must have come from [`spinlat_model_parse`] and not be freed twice.
 */
void spinlat_model_free(struct SpinlatModel *model);

/**
 * Release a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `text` must have been returned through a `char**` out-parameter here.
 */
void spinlat_string_free(char *text);

/**
 * Re-render the model as canonical JSON.
 *
 * # Safety
 * `model` must be a live handle; `out` must be a valid pointer.
 */
int32_t spinlat_model_render(const struct SpinlatModel *model, char **out);

/**
 * Number of qubits in the mapped register.
 *
 * # Safety
 * `model` must be a live handle; `out` must be a valid pointer.
 */
int32_t spinlat_model_num_qubits(const struct SpinlatModel *model, uintptr_t *out);

/**
 * Compile the Trotterized evolution circuit; `steps == 0` uses the model's
 * step count (default 64). Writes circuit text followed by a census line.
 *
 * # Safety
 * `model` must be a live handle; `out` must be a valid pointer.
 */
int32_t spinlat_compile(const struct SpinlatModel *model, uintptr_t steps, char **out);

/**
 * Build the initial-state preparation circuit, with post-selection
 * metadata appended as comment lines when applicable.
 *
 * # Safety
 * `model` must be a live handle; `out` must be a valid pointer.
 */
int32_t spinlat_prep(const struct SpinlatModel *model, char **out);

/**
 * Measure G(t) over the model's time grid; writes CSV `t,re,im`.
 *
 * # Safety
 * `model` must be a live handle; `out` must be a valid pointer.
 */
int32_t spinlat_correlate(const struct SpinlatModel *model, char **out);

/**
 * Extract spectral peaks of the Hamiltonian; writes CSV `lambda,weight`.
 *
 * # Safety
 * `model` must be a live handle; `out` must be a valid pointer.
 */
int32_t spinlat_spectrum(const struct SpinlatModel *model, char **out);

/**
 * Run the algebra validation suite for the model's statistics. Writes a
 * pass/fail report; returns `SPINLAT_ERR_VALIDATION` if any relation fails.
 *
 * # Safety
 * `model` must be a live handle; `out` must be a valid pointer.
 */
int32_t spinlat_validate(const struct SpinlatModel *model, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPINLAT_H */
