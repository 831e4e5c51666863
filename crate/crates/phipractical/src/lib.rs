//! Practical and phi-practical numbers.
//!
//! A positive integer `n` is *practical* if every `m` with `1 <= m <= n` is a
//! sum of distinct divisors of `n`. It is *phi-practical* if the polynomial
//! `t^n - 1` has a divisor in `Z[t]` of every degree from `1` to `n`; because
//! `t^n - 1` factors as the product of the cyclotomic polynomials `Phi_d(t)`
//! over the divisors `d` of `n`, and `deg Phi_d = phi(d)`, this is the same as
//! asking that every `m <= n` be a subset sum of the multiset
//! `{phi(d) : d | n}`.
//!
//! This crate provides:
//!
//! - [`arith`]: checked `u64` factorization, divisors, `phi`, `sigma`, and a
//!   smallest-prime-factor sieve for bulk work;
//! - [`classify`]: fast predicates for the practical, phi-practical, weakly
//!   phi-practical, 2-dense, and strictly 2-dense families, together with
//!   independent brute-force subset-sum oracles;
//! - [`cyclotomic`]: exact integer polynomials, cyclotomic polynomials by
//!   memoized exact division, reachable divisor degrees of `t^n - 1`, and
//!   witness certificates (an explicit divisor of degree `m`);
//! - [`census`]: streaming block-parallel counts of all families up to a
//!   limit, with deterministic CSV/JSON output;
//! - [`verify`]: an executable suite of lemma checks (implications between
//!   families, product lemmas, recursion validity, degree identities) that
//!   reports counterexamples instead of assuming theorems hold.
//!
//! The `phipractical` binary exposes all of this as a CLI (`classify`,
//! `count`, `witness`, `verify`, `list`).

pub mod arith;
mod bits;
pub mod census;
pub mod classify;
pub mod cyclotomic;
pub mod verify;

use thiserror::Error as ThisError;

/// Errors shared across the crate.
///
/// Operations that can fail return `Result<_, Error>`; predicates that are
/// total over valid `Factorization`s return plain values.
#[derive(Debug, Clone, PartialEq, Eq, ThisError)]
pub enum Error {
    /// An input that must be a positive integer was zero.
    #[error("input must be a positive integer, got 0")]
    ZeroInput,

    /// A checked `u64` computation (for example `sigma`) overflowed.
    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    /// A requested limit exceeds the configured feasibility cap for the
    /// operation (sieve memory, census range, verifier range), or is below
    /// the operation's minimum.
    #[error("limit {requested} is outside the feasible range for {what} (max {max})")]
    LimitTooLarge {
        what: &'static str,
        requested: u64,
        max: u64,
    },

    /// A brute-force subset-sum oracle was asked about an `n` above its
    /// configured bound.
    #[error("oracle limit exceeded: n = {n} is above the bit-array DP bound {limit}")]
    OracleLimitExceeded { n: u64, limit: u64 },

    /// A cyclotomic-polynomial computation was asked for an index or degree
    /// above the configured polynomial limit.
    #[error("polynomial limit exceeded: {what} = {requested} is above the limit {limit}")]
    LimitExceeded {
        what: &'static str,
        requested: u64,
        limit: u64,
    },

    /// A recursive divisor-density evaluation was handed a non-squarefree
    /// input (the recursions are only valid on squarefree integers).
    #[error("{0} is not squarefree")]
    NotSquarefree(u64),

    /// Polynomial division left a nonzero remainder (or the divisor was
    /// zero): the dividend is not an exact multiple of the divisor.
    #[error("inexact polynomial division")]
    InexactDivision,

    /// No subset of divisor totients of `n` sums to the requested degree
    /// `m`, i.e. `t^n - 1` has no divisor of degree `m` of the product form.
    #[error("no witness: t^{n} - 1 has no divisor of degree {m} built from cyclotomic factors")]
    NoWitness { n: u64, m: u64 },

    /// A witness certificate failed validation (divisors not distinct
    /// divisors of `n`, or totients not summing to `m`).
    #[error("invalid witness certificate for n = {n}: {reason}")]
    InvalidCertificate { n: u64, reason: &'static str },

    /// An unknown lemma identifier was passed to the verification suite.
    #[error("unknown lemma id `{0}`")]
    UnknownLemma(String),

    /// An unknown family name was passed to the census member lister.
    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    /// A census checkpoint list was not strictly ascending or not contained
    /// in `[2, limit]`.
    #[error("invalid checkpoints: {0}")]
    InvalidCheckpoints(String),
}

pub use arith::{divisors, euler_phi, factorize, sigma, Factorization, SpfTable};
pub use classify::{classify, ClassificationFlags};
pub use cyclotomic::{cyclotomic_poly, witness_subset, IntPolynomial, WitnessCertificate};
