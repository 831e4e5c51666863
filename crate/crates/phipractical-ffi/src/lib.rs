//! C ABI for the `phipractical` library.
//!
//! Every entry point returns a [`PpStatus`] code and writes its result
//! through out-pointers, so the surface is usable from C, C++, and any
//! language with a C FFI. Strings handed out by this library are
//! NUL-terminated, heap-allocated, and must be released with
//! [`pp_string_free`]; sieve handles must be released with
//! [`pp_spf_free`]. No call keeps internal references to caller memory.
//!
//! Status codes use the same numbering as the `phipractical` binary's exit
//! codes, so a C caller and a shell caller observe identical failure
//! classes.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use phipractical::census::{default_checkpoints, rows_to_csv, run_census};
use phipractical::classify::classify;
use phipractical::cyclotomic::witness_polynomial;
use phipractical::verify::{verify, LemmaId};
use phipractical::{factorize, witness_subset, Error, SpfTable};

/// Result code of every FFI call.
///
/// The numbering matches the command-line binary's exit codes: `0` success,
/// `1` a well-posed question whose answer is "no" (no witness exists, or a
/// lemma verification found counterexamples), `2` malformed input, `3` an
/// input of zero where positives are required, `4` a limit outside the
/// supported range.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PpStatus {
    /// The call succeeded and all out-parameters are populated.
    Ok = 0,
    /// The computation ran to completion and answered in the negative
    /// (no witness subset exists, or verification found counterexamples).
    Failed = 1,
    /// A pointer was null, a name did not parse, or an argument was
    /// structurally invalid.
    InvalidArgument = 2,
    /// An input was zero where a positive integer is required.
    ZeroInput = 3,
    /// A requested limit or index exceeds the supported range.
    LimitExceeded = 4,
    /// An internal invariant failed; the out-parameters are untouched.
    Internal = 5,
}

fn status_from(err: &Error) -> PpStatus {
    match err {
        Error::ZeroInput => PpStatus::ZeroInput,
        Error::LimitTooLarge { .. }
        | Error::LimitExceeded { .. }
        | Error::OracleLimitExceeded { .. } => PpStatus::LimitExceeded,
        Error::NoWitness { .. } => PpStatus::Failed,
        _ => PpStatus::InvalidArgument,
    }
}

/// Runs `body` with panics trapped at the ABI boundary, mapping a panic to
/// [`PpStatus::Internal`] instead of undefined behaviour.
fn guarded(body: impl FnOnce() -> PpStatus) -> PpStatus {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or(PpStatus::Internal)
}

/// Membership flags for a single integer, one per classified family.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PpClassification {
    /// The classified integer.
    pub n: u64,
    /// Every `m <= n` is a sum of distinct divisors of `n`.
    pub practical: bool,
    /// Every `m <= n` is a sum of totients of distinct divisors of `n`.
    pub phi_practical: bool,
    /// The sorted totients of the divisors satisfy the gap-two chain
    /// condition.
    pub weakly_phi_practical: bool,
    /// No squared prime divides `n`.
    pub squarefree: bool,
    /// Consecutive divisors never jump by more than a factor of two.
    pub two_dense: bool,
    /// Two-dense with the extreme divisor ratios exactly two and all
    /// interior ratios strictly below two.
    pub strictly_two_dense: bool,
    /// `n` is even.
    pub even: bool,
}

impl From<phipractical::ClassificationFlags> for PpClassification {
    fn from(flags: phipractical::ClassificationFlags) -> Self {
        PpClassification {
            n: flags.n,
            practical: flags.practical,
            phi_practical: flags.phi_practical,
            weakly_phi_practical: flags.weakly_phi_practical,
            squarefree: flags.squarefree,
            two_dense: flags.two_dense,
            strictly_two_dense: flags.strictly_two_dense,
            even: flags.even,
        }
    }
}

/// Opaque handle to a smallest-prime-factor sieve; create with
/// [`pp_spf_new`], release with [`pp_spf_free`].
pub struct PpSpfTable(SpfTable);

/// Classifies `n` by trial division and writes the flags to `*out`.
///
/// # Safety
///
/// `out` must be a valid pointer to writable memory for one
/// `PpClassification`.
#[no_mangle]
pub unsafe extern "C" fn pp_classify(n: u64, out: *mut PpClassification) -> PpStatus {
    guarded(|| {
        if out.is_null() {
            return PpStatus::InvalidArgument;
        }
        match factorize(n) {
            Ok(f) => {
                unsafe { out.write(classify(&f).into()) };
                PpStatus::Ok
            }
            Err(err) => status_from(&err),
        }
    })
}

/// Builds a smallest-prime-factor sieve covering `2..=limit` and writes the
/// new handle to `*out`. The handle is not thread-safe to free while in
/// use, but concurrent reads through it are safe.
///
/// # Safety
///
/// `out` must be a valid pointer to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn pp_spf_new(limit: u64, out: *mut *mut PpSpfTable) -> PpStatus {
    guarded(|| {
        if out.is_null() {
            return PpStatus::InvalidArgument;
        }
        match SpfTable::build(limit) {
            Ok(table) => {
                unsafe { out.write(Box::into_raw(Box::new(PpSpfTable(table)))) };
                PpStatus::Ok
            }
            Err(err) => status_from(&err),
        }
    })
}

/// Releases a sieve handle. Passing null is a no-op.
///
/// # Safety
///
/// `table` must be null or a handle obtained from [`pp_spf_new`] that has
/// not already been freed.
#[no_mangle]
pub unsafe extern "C" fn pp_spf_free(table: *mut PpSpfTable) {
    if !table.is_null() {
        drop(unsafe { Box::from_raw(table) });
    }
}

/// Classifies `n` using a prebuilt sieve (constant-time factor lookups) and
/// writes the flags to `*out`. `n` must not exceed the sieve's limit.
///
/// # Safety
///
/// `table` must be a live handle from [`pp_spf_new`]; `out` must be a valid
/// pointer to writable memory for one `PpClassification`.
#[no_mangle]
pub unsafe extern "C" fn pp_classify_with_table(
    table: *const PpSpfTable,
    n: u64,
    out: *mut PpClassification,
) -> PpStatus {
    guarded(|| {
        if table.is_null() || out.is_null() {
            return PpStatus::InvalidArgument;
        }
        let table = unsafe { &*table };
        match table.0.factorize(n) {
            Ok(f) => {
                unsafe { out.write(classify(&f).into()) };
                PpStatus::Ok
            }
            Err(err) => status_from(&err),
        }
    })
}

/// Finds divisors of `n` whose totients sum to exactly `m` and copies them,
/// ascending, into `out_divisors`.
///
/// `*out_len` is always set to the size of the witness when one exists.
/// The copy happens only when `capacity` is large enough; calling first
/// with `capacity == 0` (and `out_divisors` null) sizes the buffer. Returns
/// `PP_STATUS_FAILED` when no subset of divisor totients sums to `m`.
///
/// # Safety
///
/// `out_len` must be a valid pointer to writable memory for one `size_t`;
/// `out_divisors` must point to at least `capacity` writable `uint64_t`
/// slots (it may be null when `capacity` is zero).
#[no_mangle]
pub unsafe extern "C" fn pp_witness_subset(
    n: u64,
    m: u64,
    out_divisors: *mut u64,
    capacity: usize,
    out_len: *mut usize,
) -> PpStatus {
    guarded(|| {
        if out_len.is_null() || (out_divisors.is_null() && capacity > 0) {
            return PpStatus::InvalidArgument;
        }
        let f = match factorize(n) {
            Ok(f) => f,
            Err(err) => return status_from(&err),
        };
        match witness_subset(&f, m) {
            Ok(cert) => {
                unsafe { out_len.write(cert.divisors.len()) };
                if cert.divisors.len() <= capacity {
                    unsafe {
                        std::ptr::copy_nonoverlapping(
                            cert.divisors.as_ptr(),
                            out_divisors,
                            cert.divisors.len(),
                        );
                    }
                }
                PpStatus::Ok
            }
            Err(err) => status_from(&err),
        }
    })
}

fn string_out(text: String, out: *mut *mut c_char) -> PpStatus {
    match CString::new(text) {
        Ok(c) => {
            unsafe { out.write(c.into_raw()) };
            PpStatus::Ok
        }
        Err(_) => PpStatus::Internal,
    }
}

/// Renders a witness for `(n, m)` as text: the divisor subset and, when
/// `include_polynomial` is set, the monic degree-`m` divisor of `t^n - 1`
/// it certifies. The string must be released with [`pp_string_free`].
///
/// # Safety
///
/// `out` must be a valid pointer to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn pp_witness_text(
    n: u64,
    m: u64,
    include_polynomial: bool,
    out: *mut *mut c_char,
) -> PpStatus {
    guarded(|| {
        if out.is_null() {
            return PpStatus::InvalidArgument;
        }
        let f = match factorize(n) {
            Ok(f) => f,
            Err(err) => return status_from(&err),
        };
        let cert = match witness_subset(&f, m) {
            Ok(cert) => cert,
            Err(err) => return status_from(&err),
        };
        let mut text = cert.to_text();
        if include_polynomial {
            match witness_polynomial(&cert) {
                Ok(poly) => {
                    text.push_str("\npolynomial: ");
                    text.push_str(&poly.to_string());
                }
                Err(err) => return status_from(&err),
            }
        }
        string_out(text, out)
    })
}

/// Runs the census up to `limit` at the default checkpoints (powers of ten,
/// then `limit`) and writes the CSV document to `*out`. The string must be
/// released with [`pp_string_free`].
///
/// # Safety
///
/// `out` must be a valid pointer to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn pp_census_csv(limit: u64, out: *mut *mut c_char) -> PpStatus {
    guarded(|| {
        if out.is_null() {
            return PpStatus::InvalidArgument;
        }
        match run_census(limit, &default_checkpoints(limit)) {
            Ok(rows) => string_out(rows_to_csv(&rows), out),
            Err(err) => status_from(&err),
        }
    })
}

/// Verifies the named lemma up to `limit` (`0` selects the lemma's default
/// range) and writes the JSON report to `*out`; the string must be released
/// with [`pp_string_free`].
///
/// Returns `PP_STATUS_OK` when the lemma holds and `PP_STATUS_FAILED` when
/// counterexamples were found; in both cases the report is written. Lemma
/// names match the command-line `verify` subcommand.
///
/// # Safety
///
/// `lemma_name` must be a NUL-terminated string; `out` must be a valid
/// pointer to writable memory for one pointer.
#[no_mangle]
pub unsafe extern "C" fn pp_verify_json(
    lemma_name: *const c_char,
    limit: u64,
    out: *mut *mut c_char,
) -> PpStatus {
    guarded(|| {
        if lemma_name.is_null() || out.is_null() {
            return PpStatus::InvalidArgument;
        }
        let name = match unsafe { CStr::from_ptr(lemma_name) }.to_str() {
            Ok(name) => name,
            Err(_) => return PpStatus::InvalidArgument,
        };
        let lemma = match LemmaId::from_str(name) {
            Ok(lemma) => lemma,
            Err(err) => return status_from(&err),
        };
        let bound = if limit == 0 { None } else { Some(limit) };
        match verify(lemma, bound) {
            Ok(report) => {
                let passed = report.passed;
                let json = match serde_json::to_string_pretty(&report) {
                    Ok(json) => json,
                    Err(_) => return PpStatus::Internal,
                };
                let status = string_out(json, out);
                if status == PpStatus::Ok && !passed {
                    PpStatus::Failed
                } else {
                    status
                }
            }
            Err(err) => status_from(&err),
        }
    })
}

/// Releases a string returned by this library. Passing null is a no-op.
///
/// # Safety
///
/// `s` must be null or a string obtained from this library that has not
/// already been freed.
#[no_mangle]
pub unsafe extern "C" fn pp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
