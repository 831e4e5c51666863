//! Executable verification suite: each identifier names one finite-range,
//! deterministic check of a classification fact. A run scans its whole
//! stated range, counts every case it examines, and reports counterexamples
//! (capped at [`COUNTEREXAMPLE_CAP`] with a truncation flag).
//!
//! Verifiers use the fast predicates throughout, except `oracle_agreement`,
//! whose entire purpose is to compare the fast predicates against the
//! brute-force subset-sum oracles.
//!
//! Scans parallelize over blocks of the input range; per-block results merge
//! sequentially in range order, so reports are byte-for-byte reproducible
//! regardless of worker count.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::SpfTable;
use crate::census::{run_census, CensusRow};
use crate::classify::{
    is_2_dense, is_2_dense_recursive, is_phi_practical, is_phi_practical_bruteforce_with_limit,
    is_practical, is_practical_bruteforce_with_limit, is_strictly_2_dense,
    is_strictly_2_dense_recursive, is_weakly_phi_practical, t_ratio,
};
use crate::cyclotomic::{cyclotomic_poly, IntPolynomial};
use crate::Error;

/// Maximum number of counterexamples retained per report.
pub const COUNTEREXAMPLE_CAP: usize = 100;

/// Integers per parallel work unit.
const BLOCK_SIZE: u64 = 1 << 20;

/// Identifier of one verifiable statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LemmaId {
    /// Every phi-practical number is weakly phi-practical.
    #[serde(rename = "necessary")]
    Necessary,
    /// If n is practical (resp. weakly phi-practical) and p <= P(n) is
    /// prime, then pn is practical (resp. weakly phi-practical).
    #[serde(rename = "pproduct")]
    Pproduct,
    /// Every even weakly phi-practical number is practical.
    #[serde(rename = "even_practical")]
    EvenPractical,
    /// F(x) <= PR(2x) at census checkpoints, plus the doubling step behind
    /// it: each odd n has a unique l >= 1 with 2^l * n in (x, 2x].
    #[serde(rename = "upper_chain")]
    UpperChain,
    /// For phi-practical M and a prime p coprime to M: pM is phi-practical
    /// iff p <= M + 2, and p^k M (k >= 2) is phi-practical iff p <= M + 1.
    #[serde(rename = "keylemma")]
    Keylemma,
    /// A squarefree integer is phi-practical iff it is weakly phi-practical.
    #[serde(rename = "squarefree_iff")]
    SquarefreeIff,
    /// Every strictly 2-dense number is phi-practical.
    #[serde(rename = "strict_implies_phi")]
    StrictImpliesPhi,
    /// The quotient recursions for T(n) <= 2 and for strict 2-density agree
    /// with the direct divisor scans (the strict form only for n > 6).
    #[serde(rename = "t_recursion")]
    TRecursion,
    /// Every phi-practical n satisfies n <= 2^tau(n).
    #[serde(rename = "tau_bound")]
    TauBound,
    /// The fast predicates agree with the brute-force subset-sum oracles.
    #[serde(rename = "oracle_agreement")]
    OracleAgreement,
    /// t^n - 1 equals the product of the d-th cyclotomic polynomials over
    /// all divisors d of n.
    #[serde(rename = "cyclotomic_identity")]
    CyclotomicIdentity,
    /// Every 2-dense number is a squarefree practical number (and the
    /// containment is proper once the range admits a witness).
    #[serde(rename = "containment_2dense")]
    Containment2Dense,
}

impl LemmaId {
    pub const ALL: [LemmaId; 12] = [
        LemmaId::Necessary,
        LemmaId::Pproduct,
        LemmaId::EvenPractical,
        LemmaId::UpperChain,
        LemmaId::Keylemma,
        LemmaId::SquarefreeIff,
        LemmaId::StrictImpliesPhi,
        LemmaId::TRecursion,
        LemmaId::TauBound,
        LemmaId::OracleAgreement,
        LemmaId::CyclotomicIdentity,
        LemmaId::Containment2Dense,
    ];

    /// Stable identifier used on the command line and in JSON reports.
    pub fn name(self) -> &'static str {
        match self {
            LemmaId::Necessary => "necessary",
            LemmaId::Pproduct => "pproduct",
            LemmaId::EvenPractical => "even_practical",
            LemmaId::UpperChain => "upper_chain",
            LemmaId::Keylemma => "keylemma",
            LemmaId::SquarefreeIff => "squarefree_iff",
            LemmaId::StrictImpliesPhi => "strict_implies_phi",
            LemmaId::TRecursion => "t_recursion",
            LemmaId::TauBound => "tau_bound",
            LemmaId::OracleAgreement => "oracle_agreement",
            LemmaId::CyclotomicIdentity => "cyclotomic_identity",
            LemmaId::Containment2Dense => "containment_2dense",
        }
    }

    /// Scan limit used when the caller does not supply one.
    pub fn default_limit(self) -> u64 {
        match self {
            LemmaId::Necessary
            | LemmaId::EvenPractical
            | LemmaId::UpperChain
            | LemmaId::SquarefreeIff
            | LemmaId::StrictImpliesPhi
            | LemmaId::TRecursion
            | LemmaId::TauBound => 1_000_000,
            LemmaId::Pproduct => 100_000,
            LemmaId::Keylemma => 3_000,
            LemmaId::OracleAgreement => 20_000,
            LemmaId::CyclotomicIdentity => 500,
            LemmaId::Containment2Dense => 10_000,
        }
    }

    /// Largest accepted scan limit; chosen so a run stays desk-scale and all
    /// intermediate products fit in 64 bits (`keylemma` forms `M * p^3` with
    /// `p <= M + 3`, so its cap keeps that below 2^64).
    pub fn max_limit(self) -> u64 {
        match self {
            LemmaId::Necessary
            | LemmaId::EvenPractical
            | LemmaId::UpperChain
            | LemmaId::SquarefreeIff
            | LemmaId::StrictImpliesPhi
            | LemmaId::TRecursion
            | LemmaId::TauBound
            | LemmaId::Containment2Dense => 100_000_000,
            LemmaId::Pproduct => 10_000_000,
            LemmaId::Keylemma => 10_000,
            LemmaId::OracleAgreement => 100_000,
            LemmaId::CyclotomicIdentity => 1_000,
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        LemmaId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::UnknownLemma(s.to_string()))
    }
}

/// One failing input with the expected and observed outcomes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of one verification run.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    /// Which statement was checked.
    pub lemma_id: LemmaId,
    /// Exact description of the range scanned.
    pub range: String,
    /// Number of individual cases examined.
    pub cases: u64,
    /// True iff no counterexamples were found.
    pub passed: bool,
    /// Failing inputs, at most [`COUNTEREXAMPLE_CAP`].
    pub counterexamples: Vec<Counterexample>,
    /// True when counterexamples beyond the cap were dropped.
    pub truncated: bool,
    /// Boundary observations and witnesses that are part of the check but
    /// are not failures.
    pub notes: Vec<String>,
}

impl VerificationReport {
    /// Human-readable multi-line summary.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = format!(
            "{}: {} ({} cases over {})",
            self.lemma_id.name(),
            if self.passed { "PASSED" } else { "FAILED" },
            self.cases,
            self.range
        );
        for note in &self.notes {
            write!(out, "\n  note: {note}").expect("writing to a String cannot fail");
        }
        for ce in &self.counterexamples {
            write!(
                out,
                "\n  counterexample: {} (expected {}; got {})",
                ce.input, ce.expected, ce.actual
            )
            .expect("writing to a String cannot fail");
        }
        if self.truncated {
            write!(
                out,
                "\n  counterexample list truncated at {COUNTEREXAMPLE_CAP}"
            )
            .expect("writing to a String cannot fail");
        }
        out
    }
}

/// Case and counterexample accumulator with deterministic ordered merge.
#[derive(Debug, Default)]
struct Collector {
    cases: u64,
    counterexamples: Vec<Counterexample>,
    truncated: bool,
}

impl Collector {
    fn case(&mut self) {
        self.cases += 1;
    }

    fn fail(&mut self, input: String, expected: String, actual: String) {
        if self.counterexamples.len() < COUNTEREXAMPLE_CAP {
            self.counterexamples.push(Counterexample {
                input,
                expected,
                actual,
            });
        } else {
            self.truncated = true;
        }
    }

    fn merged(mut self, other: Collector) -> Collector {
        self.cases += other.cases;
        for ce in other.counterexamples {
            if self.counterexamples.len() < COUNTEREXAMPLE_CAP {
                self.counterexamples.push(ce);
            } else {
                self.truncated = true;
            }
        }
        self.truncated |= other.truncated;
        self
    }
}

/// Scan `lo..=hi` in parallel blocks, applying `per_n` to every integer, and
/// merge per-block collectors in range order.
fn scan_blocks<F>(lo: u64, hi: u64, per_n: F) -> Collector
where
    F: Fn(u64, &mut Collector) + Sync,
{
    if lo > hi {
        return Collector::default();
    }
    let mut blocks = Vec::new();
    let mut start = lo;
    while start <= hi {
        let end = hi.min(start.saturating_add(BLOCK_SIZE - 1));
        blocks.push((start, end));
        start = end + 1;
    }
    blocks
        .par_iter()
        .map(|&(a, b)| {
            let mut col = Collector::default();
            for n in a..=b {
                per_n(n, &mut col);
            }
            col
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Collector::default(), Collector::merged)
}

/// Run one verifier over `1..=limit` (default limit when `None`).
///
/// Errors with [`Error::LimitTooLarge`] when the requested limit exceeds the
/// verifier's documented cap.
pub fn verify(lemma: LemmaId, limit: Option<u64>) -> Result<VerificationReport, Error> {
    let limit = limit.unwrap_or_else(|| lemma.default_limit());
    if limit > lemma.max_limit() {
        return Err(Error::LimitTooLarge {
            what: "verification limit",
            requested: limit,
            max: lemma.max_limit(),
        });
    }
    let (range, collector, notes) = match lemma {
        LemmaId::Necessary => verify_necessary(limit)?,
        LemmaId::Pproduct => verify_pproduct(limit)?,
        LemmaId::EvenPractical => verify_even_practical(limit)?,
        LemmaId::UpperChain => verify_upper_chain(limit)?,
        LemmaId::Keylemma => verify_keylemma(limit)?,
        LemmaId::SquarefreeIff => verify_squarefree_iff(limit)?,
        LemmaId::StrictImpliesPhi => verify_strict_implies_phi(limit)?,
        LemmaId::TRecursion => verify_t_recursion(limit)?,
        LemmaId::TauBound => verify_tau_bound(limit)?,
        LemmaId::OracleAgreement => verify_oracle_agreement(limit)?,
        LemmaId::CyclotomicIdentity => verify_cyclotomic_identity(limit)?,
        LemmaId::Containment2Dense => verify_containment_2dense(limit)?,
    };
    Ok(VerificationReport {
        lemma_id: lemma,
        range,
        cases: collector.cases,
        passed: collector.counterexamples.is_empty(),
        counterexamples: collector.counterexamples,
        truncated: collector.truncated,
        notes,
    })
}

type VerifierOutput = (String, Collector, Vec<String>);

fn verify_necessary(limit: u64) -> Result<VerifierOutput, Error> {
    let table = SpfTable::build(limit.max(2))?;
    let col = scan_blocks(1, limit, |n, c| {
        let f = table.factorize(n).expect("n is within the table limit");
        c.case();
        if is_phi_practical(&f) && !is_weakly_phi_practical(&f) {
            c.fail(
                format!("n={n}"),
                "weakly phi-practical (n is phi-practical)".into(),
                "not weakly phi-practical".into(),
            );
        }
    });
    Ok((format!("n in [1, {limit}]"), col, Vec::new()))
}

fn verify_pproduct(limit: u64) -> Result<VerifierOutput, Error> {
    let table = SpfTable::build(limit.max(2))?;
    let primes = table.primes_up_to(limit);
    let col = scan_blocks(1, limit, |n, c| {
        let f = table.factorize(n).expect("n is within the table limit");
        let practical = is_practical(&f);
        let weakly = is_weakly_phi_practical(&f);
        if !practical && !weakly {
            return;
        }
        // P(1) = 1, so n = 1 contributes no primes and is vacuous.
        let cutoff = primes.partition_point(|&q| q <= f.largest_prime());
        for &p in &primes[..cutoff] {
            let fp = f
                .times_prime_power(p, 1)
                .expect("p <= P(n) <= n, so pn <= n^2 fits in u64 at the cap");
            if practical {
                c.case();
                if !is_practical(&fp) {
                    c.fail(
                        format!("n={n}, p={p}"),
                        format!("{} practical", fp.n()),
                        "not practical".into(),
                    );
                }
            }
            if weakly {
                c.case();
                if !is_weakly_phi_practical(&fp) {
                    c.fail(
                        format!("n={n}, p={p}"),
                        format!("{} weakly phi-practical", fp.n()),
                        "not weakly phi-practical".into(),
                    );
                }
            }
        }
    });
    Ok((
        format!("n in [1, {limit}], primes p <= P(n); clauses: practical and weakly phi-practical"),
        col,
        Vec::new(),
    ))
}

fn verify_even_practical(limit: u64) -> Result<VerifierOutput, Error> {
    let table = SpfTable::build(limit.max(2))?;
    let col = scan_blocks(1, limit, |n, c| {
        let f = table.factorize(n).expect("n is within the table limit");
        c.case();
        if n % 2 == 0 && is_weakly_phi_practical(&f) && !is_practical(&f) {
            c.fail(
                format!("n={n}"),
                "practical (n is even and weakly phi-practical)".into(),
                "not practical".into(),
            );
        }
    });
    Ok((format!("n in [1, {limit}]"), col, Vec::new()))
}

fn verify_upper_chain(limit: u64) -> Result<VerifierOutput, Error> {
    // Comparison points: powers of 10 with 2x <= limit, plus floor(limit/2).
    let mut xs: Vec<u64> = Vec::new();
    let mut p: u64 = 10;
    while 2 * p <= limit {
        xs.push(p);
        p *= 10;
    }
    if limit / 2 >= 2 && !xs.contains(&(limit / 2)) {
        xs.push(limit / 2);
        xs.sort_unstable();
    }
    let mut col = Collector::default();
    let mut notes = Vec::new();
    if !xs.is_empty() {
        let mut checkpoints: Vec<u64> = xs.iter().flat_map(|&x| [x, 2 * x]).collect();
        checkpoints.sort_unstable();
        checkpoints.dedup();
        let rows = run_census(limit.max(2), &checkpoints)?;
        let row_at = |x: u64| -> &CensusRow {
            rows.iter()
                .find(|r| r.x == x)
                .expect("every comparison point is a checkpoint")
        };
        for &x in &xs {
            col.case();
            let f_x = row_at(x).f;
            let pr_2x = row_at(2 * x).pr;
            if f_x > pr_2x {
                col.fail(
                    format!("x={x}"),
                    format!("F({x}) <= PR({})", 2 * x),
                    format!("F({x}) = {f_x} > {pr_2x} = PR({})", 2 * x),
                );
            }
        }
        notes.push(format!(
            "F(x) <= PR(2x) compared at x in {{{}}}",
            xs.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ));
    } else {
        notes.push(format!(
            "limit {limit} leaves no x with 2x <= limit; no census comparisons"
        ));
    }

    // Doubling step: each odd n <= x0 has exactly one l >= 1 with
    // 2^l * n in (x0, 2*x0].
    const X0: u64 = 10_000;
    for n in (1..=X0).step_by(2) {
        col.case();
        let mut hits = 0u32;
        let mut v = n;
        loop {
            v *= 2;
            if v > 2 * X0 {
                break;
            }
            if v > X0 {
                hits += 1;
            }
        }
        if hits != 1 {
            col.fail(
                format!("odd n={n}"),
                format!("exactly one l >= 1 with 2^l*n in ({X0}, {}]", 2 * X0),
                format!("{hits} such l"),
            );
        }
    }
    notes.push(format!(
        "doubling step checked for all odd n <= {X0} with x = {X0}"
    ));
    Ok((
        format!("census to {limit} plus doubling step at x = {X0}"),
        col,
        notes,
    ))
}

fn verify_keylemma(limit: u64) -> Result<VerifierOutput, Error> {
    let table = SpfTable::build((limit + 3).max(2))?;
    let primes = table.primes_up_to(limit + 3);
    let col = scan_blocks(1, limit, |m, c| {
        let fm = table.factorize(m).expect("m is within the table limit");
        if !is_phi_practical(&fm) {
            return;
        }
        // Primes up to M + 3: one beyond the M + 2 boundary, so both sides
        // of each iff are exercised.
        let cutoff = primes.partition_point(|&q| q <= m + 3);
        for &p in &primes[..cutoff] {
            if m % p == 0 {
                continue; // the statement requires gcd(p, M) = 1
            }
            for k in 1..=3u32 {
                let fmp = fm
                    .times_prime_power(p, k)
                    .expect("M * p^3 fits in u64 at the cap");
                let expected = if k == 1 { p <= m + 2 } else { p <= m + 1 };
                c.case();
                if is_phi_practical(&fmp) != expected {
                    c.fail(
                        format!("M={m}, p={p}, k={k}"),
                        format!("{} phi-practical: {expected}", fmp.n()),
                        format!("{}", !expected),
                    );
                }
            }
        }
    });
    Ok((
        format!(
            "phi-practical M in [1, {limit}], primes p <= M+3 with gcd(p, M) = 1, k in {{1, 2, 3}}"
        ),
        col,
        Vec::new(),
    ))
}

fn verify_squarefree_iff(limit: u64) -> Result<VerifierOutput, Error> {
    let table = SpfTable::build(limit.max(2))?;
    let mut col = scan_blocks(1, limit, |n, c| {
        let f = table.factorize(n).expect("n is within the table limit");
        if !f.is_squarefree() {
            return;
        }
        c.case();
        let phi = is_phi_practical(&f);
        let weak = is_weakly_phi_practical(&f);
        if phi != weak {
            c.fail(
                format!("n={n} (squarefree)"),
                format!("phi-practical ({phi}) iff weakly phi-practical"),
                format!("weakly phi-practical = {weak}"),
            );
        }
    });
    let mut notes = Vec::new();
    if limit >= 45 {
        // The squarefree hypothesis is necessary: 45 = 3^2 * 5 separates the
        // two notions. Assert that here so a regression cannot hide it.
        col.case();
        let f45 = table.factorize(45).expect("45 is within the table limit");
        if is_weakly_phi_practical(&f45) && !is_phi_practical(&f45) {
            notes.push(
                "non-squarefree 45 is weakly phi-practical but not phi-practical, \
                 so the squarefree hypothesis is necessary"
                    .into(),
            );
        } else {
            col.fail(
                "n=45".into(),
                "weakly phi-practical and not phi-practical".into(),
                format!(
                    "weakly = {}, phi-practical = {}",
                    is_weakly_phi_practical(&f45),
                    is_phi_practical(&f45)
                ),
            );
        }
    }
    Ok((
        format!("squarefree n in [1, {limit}], plus the non-squarefree boundary case 45"),
        col,
        notes,
    ))
}

fn verify_strict_implies_phi(limit: u64) -> Result<VerifierOutput, Error> {
    let table = SpfTable::build(limit.max(2))?;
    let col = scan_blocks(1, limit, |n, c| {
        let f = table.factorize(n).expect("n is within the table limit");
        c.case();
        if is_strictly_2_dense(&f) && !is_phi_practical(&f) {
            c.fail(
                format!("n={n}"),
                "phi-practical (n is strictly 2-dense)".into(),
                "not phi-practical".into(),
            );
        }
    });
    Ok((format!("n in [1, {limit}]"), col, Vec::new()))
}

fn verify_t_recursion(limit: u64) -> Result<VerifierOutput, Error> {
    let table = SpfTable::build(limit.max(2))?;
    let ratio_at_most_2 = |(num, den): (u64, u64)| u128::from(num) <= 2 * u128::from(den);
    let mut col = scan_blocks(1, limit, |n, c| {
        let f = table.factorize(n).expect("n is within the table limit");
        // Quotient recursion for T(n) <= 2, stated for every n >= 1.
        c.case();
        let direct = ratio_at_most_2(t_ratio(&f));
        let p = f.largest_prime();
        let quotient = table
            .factorize(n / p)
            .expect("n / P(n) is within the table limit");
        let recursed =
            ratio_at_most_2(t_ratio(&quotient)) && u128::from(p) * u128::from(p) <= 2 * u128::from(n);
        if direct != recursed {
            c.fail(
                format!("n={n}"),
                format!("T(n) <= 2 is {direct} by direct scan"),
                format!("recursion gives {recursed}"),
            );
        }
        if f.is_squarefree() {
            c.case();
            let rec_dense = is_2_dense_recursive(&f).expect("n is squarefree");
            if rec_dense != is_2_dense(&f) {
                c.fail(
                    format!("n={n}"),
                    format!("2-dense = {}", is_2_dense(&f)),
                    format!("recursive route gives {rec_dense}"),
                );
            }
            if n > 6 {
                c.case();
                let rec_strict = is_strictly_2_dense_recursive(&f).expect("n is squarefree");
                if rec_strict != is_strictly_2_dense(&f) {
                    c.fail(
                        format!("n={n}"),
                        format!("strictly 2-dense = {}", is_strictly_2_dense(&f)),
                        format!("recursive route gives {rec_strict}"),
                    );
                }
            }
        }
    });
    let mut notes = Vec::new();
    if limit >= 6 {
        // The strict recursion's n > 6 guard is load-bearing: 6 is strictly
        // 2-dense yet fails the prime condition P(n)^2 < n.
        col.case();
        let f6 = table.factorize(6).expect("6 is within the table limit");
        let p6 = f6.largest_prime();
        if is_strictly_2_dense(&f6) && p6 * p6 >= 6 {
            notes.push(
                "n = 6 is strictly 2-dense yet P(6)^2 = 9 >= 6, so the strict recursion \
                 holds only for n > 6 and 6 must sit in the base set"
                    .into(),
            );
        } else {
            col.fail(
                "n=6".into(),
                "strictly 2-dense with P(6)^2 >= 6".into(),
                format!(
                    "strictly 2-dense = {}, P(6)^2 = {}",
                    is_strictly_2_dense(&f6),
                    p6 * p6
                ),
            );
        }
    }
    Ok((
        format!(
            "n in [1, {limit}]: T-recursion for all n, 2-dense recursion for squarefree n, \
             strict recursion for squarefree n > 6"
        ),
        col,
        notes,
    ))
}

fn verify_tau_bound(limit: u64) -> Result<VerifierOutput, Error> {
    let table = SpfTable::build(limit.max(2))?;
    let col = scan_blocks(1, limit, |n, c| {
        let f = table.factorize(n).expect("n is within the table limit");
        c.case();
        if !is_phi_practical(&f) {
            return;
        }
        let tau = f.tau();
        // For tau >= 64 the bound holds for every u64 input.
        let holds = tau >= 64 || n <= 1u64 << tau;
        if !holds {
            c.fail(
                format!("n={n}"),
                format!("n <= 2^tau(n) = 2^{tau}"),
                format!("{n} > {}", 1u64 << tau),
            );
        }
    });
    Ok((
        format!("phi-practical n in [1, {limit}]"),
        col,
        Vec::new(),
    ))
}

fn verify_oracle_agreement(limit: u64) -> Result<VerifierOutput, Error> {
    let table = SpfTable::build(limit.max(2))?;
    let col = scan_blocks(1, limit, |n, c| {
        let f = table.factorize(n).expect("n is within the table limit");
        c.case();
        let fast_phi = is_phi_practical(&f);
        let brute_phi = is_phi_practical_bruteforce_with_limit(&f, limit)
            .expect("n <= limit, so the oracle cap cannot trip");
        if fast_phi != brute_phi {
            c.fail(
                format!("n={n}"),
                format!("phi-practical = {brute_phi} (subset-sum oracle)"),
                format!("sorted-totient criterion gives {fast_phi}"),
            );
        }
        c.case();
        let fast_pr = is_practical(&f);
        let brute_pr = is_practical_bruteforce_with_limit(&f, limit)
            .expect("n <= limit, so the oracle cap cannot trip");
        if fast_pr != brute_pr {
            c.fail(
                format!("n={n}"),
                format!("practical = {brute_pr} (subset-sum oracle)"),
                format!("prefix-sigma criterion gives {fast_pr}"),
            );
        }
    });
    Ok((
        format!("n in [1, {limit}], two comparisons per n (phi-practical and practical)"),
        col,
        Vec::new(),
    ))
}

fn verify_cyclotomic_identity(limit: u64) -> Result<VerifierOutput, Error> {
    let col = scan_blocks(1, limit, |n, c| {
        c.case();
        let f = crate::arith::factorize(n).expect("n >= 1");
        let mut product = IntPolynomial::one();
        for d in crate::arith::divisors(&f) {
            let phi_d = cyclotomic_poly(d).expect("d <= limit <= the polynomial cap");
            product = crate::cyclotomic::poly_mul(&product, &phi_d);
        }
        let target = IntPolynomial::t_power_minus_one(n);
        if product != target {
            c.fail(
                format!("n={n}"),
                format!("product of cyclotomics over divisors = t^{n} - 1"),
                "product differs".into(),
            );
        }
    });
    Ok((format!("n in [1, {limit}]"), col, Vec::new()))
}

fn verify_containment_2dense(limit: u64) -> Result<VerifierOutput, Error> {
    let table = SpfTable::build(limit.max(2))?;
    let mut col = scan_blocks(1, limit, |n, c| {
        let f = table.factorize(n).expect("n is within the table limit");
        c.case();
        if is_2_dense(&f) && !(f.is_squarefree() && is_practical(&f)) {
            c.fail(
                format!("n={n}"),
                "squarefree and practical (n is 2-dense)".into(),
                format!(
                    "squarefree = {}, practical = {}",
                    f.is_squarefree(),
                    is_practical(&f)
                ),
            );
        }
    });
    // Properness: look for a squarefree practical number that is not
    // 2-dense (the smallest is 78 = 2 * 3 * 13).
    let mut notes = Vec::new();
    col.case();
    let witness = (1..=limit).find(|&n| {
        let f = table.factorize(n).expect("n is within the table limit");
        f.is_squarefree() && is_practical(&f) && !is_2_dense(&f)
    });
    match witness {
        Some(n) => notes.push(format!(
            "containment is proper: {n} is squarefree and practical but not 2-dense"
        )),
        None => notes.push(format!(
            "no properness witness up to {limit}; every squarefree practical number \
             in range is 2-dense"
        )),
    }
    Ok((
        format!("n in [1, {limit}], plus a properness witness search"),
        col,
        notes,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;

    #[test]
    fn lemma_ids_round_trip() {
        for id in LemmaId::ALL {
            assert_eq!(id.name().parse::<LemmaId>().unwrap(), id);
            assert!(id.default_limit() <= id.max_limit());
        }
        assert!(matches!(
            "bogus".parse::<LemmaId>(),
            Err(Error::UnknownLemma(_))
        ));
    }

    #[test]
    fn limit_cap_is_enforced() {
        let err = verify(LemmaId::Keylemma, Some(1_000_000)).unwrap_err();
        assert!(matches!(err, Error::LimitTooLarge { .. }));
    }

    #[test]
    fn necessary_tiny_range_counts_every_case() {
        let report = verify(LemmaId::Necessary, Some(10)).unwrap();
        assert!(report.passed);
        assert_eq!(report.cases, 10);
        assert!(report.range.contains("[1, 10]"));
        assert!(report.counterexamples.is_empty());
        assert!(!report.truncated);
    }

    #[test]
    fn necessary_passes_at_scale() {
        assert!(verify(LemmaId::Necessary, Some(20_000)).unwrap().passed);
    }

    #[test]
    fn pproduct_passes() {
        let report = verify(LemmaId::Pproduct, Some(2_000)).unwrap();
        assert!(report.passed);
        assert!(report.cases > 0);
    }

    #[test]
    fn even_practical_passes() {
        assert!(verify(LemmaId::EvenPractical, Some(20_000)).unwrap().passed);
    }

    #[test]
    fn upper_chain_passes_and_documents_both_parts() {
        let report = verify(LemmaId::UpperChain, Some(10_000)).unwrap();
        assert!(report.passed);
        // 4 census comparisons (x = 10, 100, 1000, 5000) + 5000 odd n.
        assert_eq!(report.cases, 4 + 5_000);
        assert!(report.notes.iter().any(|n| n.contains("doubling step")));
    }

    #[test]
    fn keylemma_passes_and_brackets_the_boundary() {
        let report = verify(LemmaId::Keylemma, Some(300)).unwrap();
        assert!(report.passed);
        assert!(report.cases > 0);
        // The boundary pair the scan must cover: 15 = 3 * 5 with p = M + 2
        // is phi-practical; 75 = 3 * 5^2 with p > M + 1 is not.
        assert!(is_phi_practical(&factorize(15).unwrap()));
        assert!(!is_phi_practical(&factorize(75).unwrap()));
    }

    #[test]
    fn squarefree_iff_reports_the_45_note() {
        let report = verify(LemmaId::SquarefreeIff, Some(100)).unwrap();
        assert!(report.passed);
        assert!(report.notes.iter().any(|n| n.contains("45")));
        let small = verify(LemmaId::SquarefreeIff, Some(40)).unwrap();
        assert!(small.passed);
        assert!(small.notes.is_empty());
    }

    #[test]
    fn strict_implies_phi_passes() {
        assert!(
            verify(LemmaId::StrictImpliesPhi, Some(20_000))
                .unwrap()
                .passed
        );
    }

    #[test]
    fn t_recursion_passes_with_base_case_note() {
        let report = verify(LemmaId::TRecursion, Some(10_000)).unwrap();
        assert!(report.passed);
        assert!(report.notes.iter().any(|n| n.contains("P(6)^2")));
    }

    #[test]
    fn tau_bound_passes() {
        assert!(verify(LemmaId::TauBound, Some(20_000)).unwrap().passed);
    }

    #[test]
    fn oracle_agreement_passes() {
        let report = verify(LemmaId::OracleAgreement, Some(2_000)).unwrap();
        assert!(report.passed);
        assert_eq!(report.cases, 4_000);
    }

    #[test]
    fn cyclotomic_identity_passes() {
        let report = verify(LemmaId::CyclotomicIdentity, Some(60)).unwrap();
        assert!(report.passed);
        assert_eq!(report.cases, 60);
    }

    #[test]
    fn containment_passes_with_witness_note() {
        let report = verify(LemmaId::Containment2Dense, Some(1_000)).unwrap();
        assert!(report.passed);
        assert!(report
            .notes
            .iter()
            .any(|n| n.contains("proper") && n.contains("78")));
        // Below 78 there is no witness yet; the note must say so instead.
        let small = verify(LemmaId::Containment2Dense, Some(77)).unwrap();
        assert!(small.passed);
        assert!(small.notes.iter().any(|n| n.contains("no properness witness")));
    }

    #[test]
    fn report_serializes_with_stable_names() {
        let report = verify(LemmaId::SquarefreeIff, Some(50)).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        assert!(json.contains("\"lemma_id\":\"squarefree_iff\""));
        assert!(json.contains("\"passed\":true"));
        let text = report.to_text();
        assert!(text.starts_with("squarefree_iff: PASSED"));
    }

    #[test]
    fn collector_caps_and_merges_in_order() {
        let mut a = Collector::default();
        for i in 0..60 {
            a.case();
            a.fail(format!("n={i}"), "x".into(), "y".into());
        }
        let mut b = Collector::default();
        for i in 60..160 {
            b.case();
            b.fail(format!("n={i}"), "x".into(), "y".into());
        }
        let merged = a.merged(b);
        assert_eq!(merged.cases, 160);
        assert_eq!(merged.counterexamples.len(), COUNTEREXAMPLE_CAP);
        assert!(merged.truncated);
        assert_eq!(merged.counterexamples[0].input, "n=0");
        assert_eq!(merged.counterexamples[99].input, "n=99");
    }
}
