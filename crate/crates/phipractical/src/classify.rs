//! Predicates for the divisor-density families.
//!
//! Five related families of positive integers, all decidable from the
//! factorization alone:
//!
//! - **practical**: every `1 <= m <= n` is a sum of distinct divisors of
//!   `n`. Decided by Stewart's chain condition on the prime factorization.
//! - **phi-practical**: `t^n - 1` has a divisor in `Z[t]` of every degree
//!   `1..=n`; equivalently every `m <= n` is a subset sum of the multiset
//!   `{phi(d) : d | n}`. Decided by the sorted-totient chain condition.
//! - **weakly phi-practical**: the cheap necessary condition
//!   `p_{i+1} <= m_i + 2` on prefix products `m_i` of the factorization;
//!   agrees with phi-practical exactly on squarefree integers.
//! - **2-dense**: squarefree with consecutive divisor ratios all `<= 2`.
//! - **strictly 2-dense**: squarefree with first and last divisor ratio
//!   exactly 2 and all interior ratios strictly below 2 (forces `n` even;
//!   every strictly 2-dense integer is phi-practical).
//!
//! Each fast predicate is paired (where meaningful) with an independent
//! brute-force subset-sum oracle so the two routes can be checked against
//! each other; the recursive 2-dense evaluations likewise mirror the direct
//! divisor-list scans. Ratio comparisons use exact `u128` cross
//! multiplication, never floating point.

use serde::Serialize;

use crate::arith::{divisors, Factorization};
use crate::bits::subset_sums;
use crate::Error;

/// Default bound for the brute-force subset-sum oracles: the bit-array DP
/// costs `O(n * tau(n) / 64)` per call, comfortable up to here.
pub const DEFAULT_ORACLE_LIMIT: u64 = 100_000;

/// Membership of one integer in every family this crate studies.
///
/// Invariants the fields always satisfy (exercised by tests and the
/// `verify` suite rather than assumed):
/// `phi_practical` implies `weakly_phi_practical`; `even &&
/// weakly_phi_practical` implies `practical`; on squarefree `n`,
/// `phi_practical == weakly_phi_practical`; `strictly_two_dense` implies
/// `two_dense && phi_practical && even`; `two_dense` implies `squarefree`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassificationFlags {
    pub n: u64,
    pub practical: bool,
    pub phi_practical: bool,
    pub weakly_phi_practical: bool,
    pub squarefree: bool,
    pub two_dense: bool,
    pub strictly_two_dense: bool,
    pub even: bool,
}

/// Stewart's condition: `n` is practical iff `n = 1` or, writing
/// `n = p_1^{e_1} ... p_k^{e_k}` with `p_1 < ... < p_k`, every
/// `p_i <= sigma(p_1^{e_1} ... p_{i-1}^{e_{i-1}}) + 1` (the empty prefix has
/// `sigma = 1`, so the first test reads `p_1 <= 2`).
///
/// # Examples
///
/// ```
/// use phipractical::{classify::is_practical, factorize};
/// assert!(is_practical(&factorize(12).unwrap()));
/// assert!(!is_practical(&factorize(10).unwrap())); // 5 > sigma(2) + 1 = 4
/// ```
pub fn is_practical(f: &Factorization) -> bool {
    // sigma of the prefix product, in u128 so the scan itself cannot
    // overflow (sigma(m) < 2^70 for every m < 2^64).
    let mut sigma_prefix: u128 = 1;
    for &(p, e) in f.factors() {
        if u128::from(p) > sigma_prefix + 1 {
            return false;
        }
        sigma_prefix *= sigma_prime_power(p, e);
    }
    true
}

/// `sigma(p^e) = 1 + p + ... + p^e` in `u128`.
fn sigma_prime_power(p: u64, e: u32) -> u128 {
    let mut s: u128 = 1;
    let mut pk: u128 = 1;
    for _ in 0..e {
        pk *= u128::from(p);
        s += pk;
    }
    s
}

/// Brute-force practical test: bit-array DP over subset sums of the
/// divisors, checking every `1 <= m <= n` is reachable. Independent of
/// [`is_practical`] so the two can serve as oracles for each other.
pub fn is_practical_bruteforce(f: &Factorization) -> Result<bool, Error> {
    is_practical_bruteforce_with_limit(f, DEFAULT_ORACLE_LIMIT)
}

/// [`is_practical_bruteforce`] with an explicit DP bound.
pub fn is_practical_bruteforce_with_limit(f: &Factorization, limit: u64) -> Result<bool, Error> {
    if f.n() > limit {
        return Err(Error::OracleLimitExceeded { n: f.n(), limit });
    }
    Ok(subset_sums(&divisors(f), f.n()).all_set())
}

/// Weak phi-practicality: with `m_0 = 1` and `m_i = p_1^{e_1}...p_i^{e_i}`,
/// require `p_{i+1} <= m_i + 2` for every `i`. A cheap `O(omega(n))`
/// necessary condition for phi-practicality that is also sufficient on
/// squarefree integers.
pub fn is_weakly_phi_practical(f: &Factorization) -> bool {
    let mut prefix: u128 = 1;
    for &(p, e) in f.factors() {
        if u128::from(p) > prefix + 2 {
            return false;
        }
        prefix *= u128::from(p).pow(e);
    }
    true
}

/// The multiset `{phi(d) : d | n}`, unsorted, built by expanding the
/// factorization (no per-divisor refactorization).
pub(crate) fn divisor_totients(f: &Factorization) -> Vec<u64> {
    let mut tots = Vec::with_capacity(f.tau() as usize);
    tots.push(1u64);
    for &(p, e) in f.factors() {
        let base = tots.len();
        let mut phi_pk = p - 1; // phi(p^1)
        for j in 1..=e {
            for i in 0..base {
                tots.push(tots[i] * phi_pk);
            }
            if j < e {
                phi_pk *= p;
            }
        }
    }
    tots
}

/// `(d, phi(d))` for every divisor `d` of `n`, unsorted.
pub(crate) fn divisor_totient_pairs(f: &Factorization) -> Vec<(u64, u64)> {
    let mut pairs = Vec::with_capacity(f.tau() as usize);
    pairs.push((1u64, 1u64));
    for &(p, e) in f.factors() {
        let base = pairs.len();
        let mut pk = p;
        let mut phi_pk = p - 1;
        for j in 1..=e {
            for i in 0..base {
                let (d, t) = pairs[i];
                pairs.push((d * pk, t * phi_pk));
            }
            if j < e {
                pk *= p;
                phi_pk *= p;
            }
        }
    }
    pairs
}

/// Phi-practicality by the sorted-totient chain condition: sort the multiset
/// `{phi(d) : d | n}` ascending as `w_1 <= ... <= w_k`; `n` is phi-practical
/// iff `w_1 = 1` and `w_{i+1} <= 1 + w_1 + ... + w_i` for every `i < k`.
/// (Since the totients of divisors sum to `n`, the chain condition makes
/// every `1 <= m <= n` a subset sum, i.e. every degree `1..=n` appears among
/// divisors of `t^n - 1`.)
///
/// # Examples
///
/// ```
/// use phipractical::{classify::is_phi_practical, factorize};
/// assert!(is_phi_practical(&factorize(315).unwrap()));
/// assert!(!is_phi_practical(&factorize(45).unwrap()));
/// ```
pub fn is_phi_practical(f: &Factorization) -> bool {
    let mut tots = divisor_totients(f);
    tots.sort_unstable();
    // reach = w_1 + ... + w_i; the next totient must be <= reach + 1.
    let mut reach: u128 = 0;
    for &w in &tots {
        if u128::from(w) > reach + 1 {
            return false;
        }
        reach += u128::from(w);
    }
    true
}

/// Brute-force phi-practical test: bit-array DP over subset sums of the
/// totient multiset `{phi(d) : d | n}`, checking all of `1..=n` reachable.
pub fn is_phi_practical_bruteforce(f: &Factorization) -> Result<bool, Error> {
    is_phi_practical_bruteforce_with_limit(f, DEFAULT_ORACLE_LIMIT)
}

/// [`is_phi_practical_bruteforce`] with an explicit DP bound.
pub fn is_phi_practical_bruteforce_with_limit(
    f: &Factorization,
    limit: u64,
) -> Result<bool, Error> {
    if f.n() > limit {
        return Err(Error::OracleLimitExceeded { n: f.n(), limit });
    }
    Ok(subset_sums(&divisor_totients(f), f.n()).all_set())
}

/// The maximal ratio of consecutive divisors `T(n) = max d_{i+1}/d_i`, as an
/// exact reduced fraction `(numerator, denominator)`. By convention
/// `T(1) = 1/1` (a single divisor has no consecutive pair).
///
/// Comparisons between candidate ratios use `u128` cross multiplication;
/// no floating point is involved.
pub fn t_ratio(f: &Factorization) -> (u64, u64) {
    let divs = divisors(f);
    let mut best: (u64, u64) = (1, 1);
    for w in divs.windows(2) {
        let (num, den) = (w[1], w[0]);
        if u128::from(num) * u128::from(best.1) > u128::from(best.0) * u128::from(den) {
            best = (num, den);
        }
    }
    let g = num_integer::gcd(best.0, best.1);
    (best.0 / g, best.1 / g)
}

/// 2-dense: squarefree with every consecutive divisor ratio at most 2
/// (`T(n) <= 2`). `n = 1` is 2-dense.
pub fn is_2_dense(f: &Factorization) -> bool {
    if !f.is_squarefree() {
        return false;
    }
    let divs = divisors(f);
    divs.windows(2)
        .all(|w| u128::from(w[1]) <= 2 * u128::from(w[0]))
}

/// Strictly 2-dense: squarefree, with divisors `d_1 < ... < d_tau`
/// satisfying `d_2/d_1 = 2 = d_tau/d_{tau-1}` and `d_{i+1}/d_i < 2` for all
/// interior `i` (those with `1 < i < tau - 1`).
///
/// The boundary conditions force `d_2 = 2` (so `n` is even) and collapse for
/// `tau = 2` to `n = 2` itself; `n = 1` has no ratios at all and is not
/// strictly 2-dense.
pub fn is_strictly_2_dense(f: &Factorization) -> bool {
    if !f.is_squarefree() {
        return false;
    }
    let divs = divisors(f);
    let k = divs.len();
    if k < 2 {
        return false; // n = 1
    }
    // Ratio r_i = d_{i+1}/d_i at 0-based window index i-1; first is window
    // 0, last is window k-2, interior windows are 1..k-3 inclusive.
    if u128::from(divs[1]) != 2 * u128::from(divs[0]) {
        return false;
    }
    if u128::from(divs[k - 1]) != 2 * u128::from(divs[k - 2]) {
        return false;
    }
    divs[1..k - 1]
        .windows(2)
        .all(|w| u128::from(w[1]) < 2 * u128::from(w[0]))
}

/// 2-density by the quotient recursion: `T(n) <= 2` iff `T(n / P(n)) <= 2`
/// and `P(n)^2 <= 2n`, grounding out at `T(1) = 1`. Only valid on squarefree
/// input (errors with [`Error::NotSquarefree`] otherwise); mirrors
/// [`is_2_dense`] so the two routes can be cross-checked.
pub fn is_2_dense_recursive(f: &Factorization) -> Result<bool, Error> {
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree(f.n()));
    }
    fn step(f: &Factorization) -> bool {
        match f.without_largest_prime() {
            None => true, // n = 1
            Some(rest) => {
                let p = f.largest_prime();
                u128::from(p) * u128::from(p) <= 2 * u128::from(f.n()) && step(&rest)
            }
        }
    }
    Ok(step(f))
}

/// Strict 2-density by the quotient recursion: for squarefree `n > 6`, `n`
/// is strictly 2-dense iff `n / P(n)` is strictly 2-dense and
/// `P(n) < sqrt(n)`; for `n <= 6` membership in the base set `{2, 6}` is
/// decided by the direct divisor scan. The base set is load-bearing: `n = 6`
/// is strictly 2-dense yet fails the prime condition (`P(6)^2 = 9 >= 6`), so
/// the recursion cannot reach below 6. Errors with
/// [`Error::NotSquarefree`] on non-squarefree input.
pub fn is_strictly_2_dense_recursive(f: &Factorization) -> Result<bool, Error> {
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree(f.n()));
    }
    fn step(f: &Factorization) -> bool {
        if f.n() <= 6 {
            return is_strictly_2_dense(f);
        }
        let p = f.largest_prime();
        if u128::from(p) * u128::from(p) >= u128::from(f.n()) {
            return false;
        }
        match f.without_largest_prime() {
            None => false, // unreachable: n > 6 has a largest prime
            Some(rest) => step(&rest),
        }
    }
    Ok(step(f))
}

/// Plus-practical: `n` odd and phi-practical (the odd members are exactly
/// those `n` for which `t^n + 1` also has divisors of every degree up to its
/// own, by pairing factors across `t^{2n} - 1 = (t^n - 1)(t^n + 1)`).
pub fn is_plus_practical(f: &Factorization) -> bool {
    f.n() % 2 == 1 && is_phi_practical(f)
}

/// Evaluate every fast predicate at once.
pub fn classify(f: &Factorization) -> ClassificationFlags {
    ClassificationFlags {
        n: f.n(),
        practical: is_practical(f),
        phi_practical: is_phi_practical(f),
        weakly_phi_practical: is_weakly_phi_practical(f),
        squarefree: f.is_squarefree(),
        two_dense: is_2_dense(f),
        strictly_two_dense: is_strictly_2_dense(f),
        even: f.n().is_multiple_of(2),
    }
}
