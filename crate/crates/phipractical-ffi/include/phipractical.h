#ifndef PHIPRACTICAL_H
#define PHIPRACTICAL_H

/* Generated by cbindgen from the phipractical-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every FFI call.
//
// The numbering matches the command-line binary's exit codes: `0` success,
// `1` a well-posed question whose answer is "no" (no witness exists, or a
// lemma verification found counterexamples), `2` malformed input, `3` an
// input of zero where positives are required, `4` a limit outside the
// supported range.
typedef enum {
  // The call succeeded and all out-parameters are populated.
  PP_STATUS_OK = 0,
  // The computation ran to completion and answered in the negative
  // (no witness subset exists, or verification found counterexamples).
  PP_STATUS_FAILED = 1,
  // A pointer was null, a name did not parse, or an argument was
  // structurally invalid.
  PP_STATUS_INVALID_ARGUMENT = 2,
  // An input was zero where a positive integer is required.
  PP_STATUS_ZERO_INPUT = 3,
  // A requested limit or index exceeds the supported range.
  PP_STATUS_LIMIT_EXCEEDED = 4,
  // An internal invariant failed; the out-parameters are untouched.
  PP_STATUS_INTERNAL = 5,
} PpStatus;

// Opaque handle to a smallest-prime-factor sieve; create with
// [`pp_spf_new`], release with [`pp_spf_free`].
typedef struct PpSpfTable PpSpfTable;

// Membership flags for a single integer, one per classified family.
typedef struct {
  // The classified integer.
  uint64_t n;
  // Every `m <= n` is a sum of distinct divisors of `n`.
  bool practical;
  // Every `m <= n` is a sum of totients of distinct divisors of `n`.
  bool phi_practical;
  // The sorted totients of the divisors satisfy the gap-two chain
  // condition.
  bool weakly_phi_practical;
  // No squared prime divides `n`.
  bool squarefree;
  // Consecutive divisors never jump by more than a factor of two.
  bool two_dense;
  // Two-dense with the extreme divisor ratios exactly two and all
  // interior ratios strictly below two.
  bool strictly_two_dense;
  // `n` is even.
  bool even;
} PpClassification;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Classifies `n` by trial division and writes the flags to `*out`.
//
// # Safety
//
// `out` must be a valid pointer to writable memory for one
// `PpClassification`.
PpStatus pp_classify(uint64_t n, PpClassification *out);

// Builds a smallest-prime-factor sieve covering `2..=limit` and writes the
// new handle to `*out`. The handle is not thread-safe to free while in
// use, but concurrent reads through it are safe.
//
// # Safety
//
// `out` must be a valid pointer to writable memory for one pointer.
PpStatus pp_spf_new(uint64_t limit, PpSpfTable **out);

// Releases a sieve handle. Passing null is a no-op.
//
// # Safety
//
// `table` must be null or a handle obtained from [`pp_spf_new`] that has
// not already been freed.
void pp_spf_free(PpSpfTable *table);

// Classifies `n` using a prebuilt sieve (constant-time factor lookups) and
// writes the flags to `*out`. `n` must not exceed the sieve's limit.
//
// # Safety
//
// `table` must be a live handle from [`pp_spf_new`]; `out` must be a valid
// pointer to writable memory for one `PpClassification`.
PpStatus pp_classify_with_table(const PpSpfTable *table, uint64_t n, PpClassification *out);

// Finds divisors of `n` whose totients sum to exactly `m` and copies them,
// ascending, into `out_divisors`.
//
// `*out_len` is always set to the size of the witness when one exists.
// The copy happens only when `capacity` is large enough; calling first
// with `capacity == 0` (and `out_divisors` null) sizes the buffer. Returns
// `PP_STATUS_FAILED` when no subset of divisor totients sums to `m`.
//
// # Safety
//
// `out_len` must be a valid pointer to writable memory for one `size_t`;
// `out_divisors` must point to at least `capacity` writable `uint64_t`
// slots (it may be null when `capacity` is zero).
PpStatus pp_witness_subset(uint64_t n,
                           uint64_t m,
                           uint64_t *out_divisors,
                           size_t capacity,
                           size_t *out_len);

// Renders a witness for `(n, m)` as text: the divisor subset and, when
// `include_polynomial` is set, the monic degree-`m` divisor of `t^n - 1`
// it certifies. The string must be released with [`pp_string_free`].
//
// # Safety
//
// `out` must be a valid pointer to writable memory for one pointer.
PpStatus pp_witness_text(uint64_t n, uint64_t m, bool include_polynomial, char **out);

// Runs the census up to `limit` at the default checkpoints (powers of ten,
// then `limit`) and writes the CSV document to `*out`. The string must be
// released with [`pp_string_free`].
//
// # Safety
//
// `out` must be a valid pointer to writable memory for one pointer.
PpStatus pp_census_csv(uint64_t limit, char **out);

// Verifies the named lemma up to `limit` (`0` selects the lemma's default
// range) and writes the JSON report to `*out`; the string must be released
// with [`pp_string_free`].
//
// Returns `PP_STATUS_OK` when the lemma holds and `PP_STATUS_FAILED` when
// counterexamples were found; in both cases the report is written. Lemma
// names match the command-line `verify` subcommand.
//
// # Safety
//
// `lemma_name` must be a NUL-terminated string; `out` must be a valid
// pointer to writable memory for one pointer.
PpStatus pp_verify_json(const char *lemma_name, uint64_t limit, char **out);

// Releases a string returned by this library. Passing null is a no-op.
//
// # Safety
//
// `s` must be null or a string obtained from this library that has not
// already been freed.
void pp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PHIPRACTICAL_H */
