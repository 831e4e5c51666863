//! Exact integer polynomial arithmetic, cyclotomic polynomials, and
//! divisor-of-every-degree witnesses for `t^n - 1`.
//!
//! The engine behind the phi-practical family: `t^n - 1` factors over `Z[t]`
//! as the product of the cyclotomic polynomials `Phi_d(t)` for `d | n`, with
//! `deg Phi_d = phi(d)`. A divisor of `t^n - 1` of degree `m` therefore
//! exists exactly when some subset of `{phi(d) : d | n}` sums to `m`, and an
//! explicit one can be produced as the product of the selected `Phi_d`
//! ([`witness_polynomial`]).
//!
//! Coefficients are arbitrary-precision [`BigInt`]s: cyclotomic coefficient
//! growth is famously irregular (the first coefficient of magnitude 2
//! appears at `Phi_105`), so no fixed-width type is trusted. All divisions
//! are exact or an error.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{divisors, factorize, Factorization};
use crate::bits::{subset_sums, BitArray};
use crate::classify::{divisor_totient_pairs, divisor_totients};
use crate::Error;

/// Default polynomial limit: the largest index `d` accepted by
/// [`cyclotomic_poly`] and the largest `n` whose `t^n - 1` the witness
/// machinery will divide. Bounds both runtime and the memoization cache.
pub const DEFAULT_POLY_LIMIT: u64 = 10_000;

/// Bound on the witness DP fallback (table of `m + 1` entries); greedy
/// search, which suffices for every phi-practical `n`, has no bound.
pub const WITNESS_DP_LIMIT: u64 = 10_000_000;

/// A polynomial in `Z[t]`, dense, with `coeffs[i]` the coefficient of
/// `t^i`. Canonical form: no trailing zero coefficients; the zero
/// polynomial has an empty coefficient vector and degree `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// The zero polynomial.
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    /// Build from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// Convenience constructor from machine integers (ascending degree).
    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `t^n - 1`.
    pub fn t_power_minus_one(n: u64) -> Self {
        assert!(n >= 1, "t^0 - 1 is the zero polynomial; use zero()");
        let n = usize::try_from(n).expect("degree exceeds address space");
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n] = BigInt::one();
        IntPolynomial { coeffs }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Ascending coefficients, trailing-zero free.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Largest absolute value among the coefficients (the polynomial's
    /// height); zero for the zero polynomial.
    pub fn height(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Coefficients as decimal strings, ascending degree (stable form for
    /// JSON output, immune to integer-width concerns).
    pub fn coefficient_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(BigInt::to_string).collect()
    }
}

impl fmt::Display for IntPolynomial {
    /// Human-readable form, highest degree first: `t^4 - 2t^2 + 1`.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(out, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(out, " - ")?;
            } else {
                write!(out, " + ")?;
            }
            let unit_coeff = mag.is_one() && i > 0;
            if !unit_coeff {
                write!(out, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(out, "t")?,
                _ => write!(out, "t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Schoolbook product of two polynomials (exact, no truncation).
pub fn poly_mul(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    if a.is_zero() || b.is_zero() {
        return IntPolynomial::zero();
    }
    let mut coeffs = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, ai) in a.coeffs.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs.iter().enumerate() {
            if !bj.is_zero() {
                coeffs[i + j] += ai * bj;
            }
        }
    }
    IntPolynomial::from_coeffs(coeffs)
}

/// Exact division: the quotient `num / den` when the remainder is zero and
/// every intermediate leading division is exact, [`Error::InexactDivision`]
/// otherwise (including division by the zero polynomial).
pub fn poly_divexact(num: &IntPolynomial, den: &IntPolynomial) -> Result<IntPolynomial, Error> {
    if den.is_zero() {
        return Err(Error::InexactDivision);
    }
    if num.is_zero() {
        return Ok(IntPolynomial::zero());
    }
    let dn = num.degree().unwrap();
    let dd = den.degree().unwrap();
    if dn < dd {
        return Err(Error::InexactDivision);
    }
    let lead = &den.coeffs[dd];
    let mut rem = num.coeffs.clone();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for k in (0..=dn - dd).rev() {
        let c = &rem[k + dd];
        if c.is_zero() {
            continue;
        }
        let (q, r) = c.div_rem(lead);
        if !r.is_zero() {
            return Err(Error::InexactDivision);
        }
        for (j, dj) in den.coeffs.iter().enumerate() {
            if !dj.is_zero() {
                let prod = &q * dj;
                rem[k + j] -= prod;
            }
        }
        quot[k] = q;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return Err(Error::InexactDivision);
    }
    Ok(IntPolynomial::from_coeffs(quot))
}

/// Memoization cache for cyclotomic polynomials, keyed by index. Only
/// indices up to [`DEFAULT_POLY_LIMIT`] are admitted, bounding the cache's
/// memory independently of caller-supplied limits. Guarded by a mutex that
/// is never held across a recursive computation, so concurrent callers are
/// safe (at worst they duplicate a computation; insertion is exclusive).
static CYCLOTOMIC_CACHE: LazyLock<Mutex<HashMap<u64, Arc<IntPolynomial>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// The `d`-th cyclotomic polynomial `Phi_d(t)`, for `d` up to the default
/// polynomial limit.
///
/// Computed by memoized exact division,
/// `Phi_d = (t^d - 1) / prod_{e | d, e < d} Phi_e`,
/// which mirrors the product identity `t^d - 1 = prod_{e | d} Phi_e`.
///
/// # Examples
///
/// ```
/// use phipractical::cyclotomic_poly;
/// assert_eq!(cyclotomic_poly(6).unwrap().to_string(), "t^2 - t + 1");
/// ```
pub fn cyclotomic_poly(d: u64) -> Result<IntPolynomial, Error> {
    cyclotomic_poly_with_limit(d, DEFAULT_POLY_LIMIT)
}

/// [`cyclotomic_poly`] with an explicit limit (indices above
/// [`DEFAULT_POLY_LIMIT`] are computed but not cached).
pub fn cyclotomic_poly_with_limit(d: u64, limit: u64) -> Result<IntPolynomial, Error> {
    Ok(cyclotomic_arc(d, limit)?.as_ref().clone())
}

fn cyclotomic_arc(d: u64, limit: u64) -> Result<Arc<IntPolynomial>, Error> {
    if d == 0 {
        return Err(Error::ZeroInput);
    }
    if d > limit {
        return Err(Error::LimitExceeded {
            what: "cyclotomic index d",
            requested: d,
            limit,
        });
    }
    if let Some(hit) = CYCLOTOMIC_CACHE.lock().unwrap().get(&d) {
        return Ok(Arc::clone(hit));
    }
    // Proper divisors ascending keeps partial products small-degree-first.
    let divs = divisors(&factorize(d).expect("d >= 1"));
    let mut den = IntPolynomial::one();
    for &e in divs.iter().filter(|&&e| e < d) {
        den = poly_mul(&den, cyclotomic_arc(e, limit)?.as_ref());
    }
    let phi_d = poly_divexact(&IntPolynomial::t_power_minus_one(d), &den)
        .expect("t^d - 1 is divisible by the product of proper cyclotomics");
    let arc = Arc::new(phi_d);
    if d <= DEFAULT_POLY_LIMIT {
        CYCLOTOMIC_CACHE
            .lock()
            .unwrap()
            .entry(d)
            .or_insert_with(|| Arc::clone(&arc));
    }
    Ok(arc)
}

/// The set of degrees `0..=n` realized by divisors of `t^n - 1` of the form
/// `prod Phi_d`, i.e. the subset sums of `{phi(d) : d | n}`.
#[derive(Debug, Clone)]
pub struct DegreeSet {
    n: u64,
    reach: BitArray,
}

impl DegreeSet {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// Is there a divisor of `t^n - 1` of degree `m`?
    pub fn contains(&self, m: u64) -> bool {
        usize::try_from(m).is_ok_and(|m| self.reach.get(m))
    }

    /// Degrees in `0..=n` with no divisor, ascending. Empty exactly when
    /// `n` is phi-practical (degree 0 and `n` are always realized).
    pub fn missing_degrees(&self) -> Vec<u64> {
        self.reach
            .unset_indices()
            .into_iter()
            .map(|i| i as u64)
            .collect()
    }

    /// True iff every degree `0..=n` is realized.
    pub fn all_present(&self) -> bool {
        self.reach.all_set()
    }
}

/// Reachable divisor degrees of `t^n - 1` as a bit array of length `n + 1`
/// (bit-array DP over the totient multiset; default oracle bound).
pub fn divisor_degrees(f: &Factorization) -> Result<DegreeSet, Error> {
    divisor_degrees_with_limit(f, crate::classify::DEFAULT_ORACLE_LIMIT)
}

/// [`divisor_degrees`] with an explicit bound on `n`.
pub fn divisor_degrees_with_limit(f: &Factorization, limit: u64) -> Result<DegreeSet, Error> {
    if f.n() > limit {
        return Err(Error::OracleLimitExceeded { n: f.n(), limit });
    }
    Ok(DegreeSet {
        n: f.n(),
        reach: subset_sums(&divisor_totients(f), f.n()),
    })
}

/// An explicit certificate that `t^n - 1` has a divisor of degree `m`: a
/// set of divisors of `n` whose totients sum to `m`. The corresponding
/// polynomial is `prod_{d in divisors} Phi_d(t)` ([`witness_polynomial`]).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessCertificate {
    pub n: u64,
    pub m: u64,
    /// Distinct divisors of `n`, ascending.
    pub divisors: Vec<u64>,
}

impl WitnessCertificate {
    /// Canonical single-line text form: `n=6 m=3 divisors=2,6`.
    pub fn to_text(&self) -> String {
        let list = self
            .divisors
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",");
        format!("n={} m={} divisors={}", self.n, self.m, list)
    }

    /// Check the certificate against the factorization of `n`: divisors
    /// strictly ascending, each dividing `n`, totients summing to `m`.
    pub fn validate(&self, f: &Factorization) -> Result<(), Error> {
        if f.n() != self.n {
            return Err(Error::InvalidCertificate {
                n: self.n,
                reason: "factorization is for a different n",
            });
        }
        if !self.divisors.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidCertificate {
                n: self.n,
                reason: "divisors not strictly ascending",
            });
        }
        let phi_by_divisor: HashMap<u64, u64> = divisor_totient_pairs(f).into_iter().collect();
        let mut total: u128 = 0;
        for &d in &self.divisors {
            match phi_by_divisor.get(&d) {
                Some(&t) => total += u128::from(t),
                None => {
                    return Err(Error::InvalidCertificate {
                        n: self.n,
                        reason: "listed divisor does not divide n",
                    })
                }
            }
        }
        if total != u128::from(self.m) {
            return Err(Error::InvalidCertificate {
                n: self.n,
                reason: "totients do not sum to m",
            });
        }
        Ok(())
    }
}

/// Find a set of divisors of `n` whose totients sum to `m`, witnessing a
/// degree-`m` divisor of `t^n - 1`.
///
/// Strategy: greedy descent over divisors sorted by descending totient
/// (ties prefer the larger divisor), which succeeds for every `m` whenever
/// `n` is phi-practical; on greedy failure, an exact subset-sum DP with
/// reconstruction decides the general case, so a certificate is returned
/// whenever one exists and [`Error::NoWitness`] is definitive. Output is
/// deterministic for fixed `(n, m)`.
///
/// # Examples
///
/// ```
/// use phipractical::{factorize, witness_subset};
/// let cert = witness_subset(&factorize(6).unwrap(), 3).unwrap();
/// assert_eq!(cert.divisors, vec![2, 6]); // phi(2) + phi(6) = 1 + 2 = 3
/// ```
pub fn witness_subset(f: &Factorization, m: u64) -> Result<WitnessCertificate, Error> {
    if m > f.n() {
        // Totients of all divisors sum to exactly n; nothing reaches past it.
        return Err(Error::NoWitness { n: f.n(), m });
    }
    let mut pairs = divisor_totient_pairs(f);
    pairs.sort_unstable_by(|a, b| b.1.cmp(&a.1).then(b.0.cmp(&a.0)));

    // Greedy: take any divisor whose totient still fits.
    let mut taken: Vec<u64> = Vec::new();
    let mut remaining = m;
    for &(d, t) in &pairs {
        if t <= remaining {
            taken.push(d);
            remaining -= t;
            if remaining == 0 {
                break;
            }
        }
    }
    if remaining == 0 {
        taken.sort_unstable();
        return Ok(WitnessCertificate {
            n: f.n(),
            m,
            divisors: taken,
        });
    }

    // Exact DP with reconstruction. maker[s] = index (into `pairs`) of the
    // item that first made sum s reachable; reconstruction always steps to
    // a sum made reachable by an earlier item, so divisors stay distinct.
    if m > WITNESS_DP_LIMIT {
        return Err(Error::OracleLimitExceeded {
            n: m,
            limit: WITNESS_DP_LIMIT,
        });
    }
    const UNSET: u32 = u32::MAX;
    const BASE: u32 = u32::MAX - 1;
    let msize = m as usize;
    let mut maker = vec![UNSET; msize + 1];
    maker[0] = BASE;
    for (idx, &(_, t)) in pairs.iter().enumerate() {
        let t = t as usize;
        if t == 0 || t > msize {
            continue;
        }
        // Reverse sweep: each item extends only sums reachable before it.
        for s in (t..=msize).rev() {
            if maker[s] == UNSET && maker[s - t] != UNSET {
                maker[s] = idx as u32;
            }
        }
    }
    if maker[msize] == UNSET {
        return Err(Error::NoWitness { n: f.n(), m });
    }
    let mut subset = Vec::new();
    let mut s = msize;
    while s > 0 {
        let idx = maker[s] as usize;
        let (d, t) = pairs[idx];
        subset.push(d);
        s -= t as usize;
    }
    subset.sort_unstable();
    Ok(WitnessCertificate {
        n: f.n(),
        m,
        divisors: subset,
    })
}

/// The witness polynomial `prod_{d in certificate} Phi_d(t)`: an explicit
/// degree-`m` divisor of `t^n - 1`. The certificate is validated, the
/// product's degree is checked to equal `m`, and divisibility is verified
/// by exact division of `t^n - 1` before returning.
///
/// Requires `n` within the polynomial limit (the divisibility check builds
/// `t^n - 1`); see [`witness_polynomial_with_limit`].
pub fn witness_polynomial(cert: &WitnessCertificate) -> Result<IntPolynomial, Error> {
    witness_polynomial_with_limit(cert, DEFAULT_POLY_LIMIT)
}

/// [`witness_polynomial`] with an explicit polynomial limit.
pub fn witness_polynomial_with_limit(
    cert: &WitnessCertificate,
    limit: u64,
) -> Result<IntPolynomial, Error> {
    if cert.n == 0 {
        return Err(Error::ZeroInput);
    }
    if cert.n > limit {
        return Err(Error::LimitExceeded {
            what: "witness polynomial n",
            requested: cert.n,
            limit,
        });
    }
    cert.validate(&factorize(cert.n)?)?;
    let mut product = IntPolynomial::one();
    for &d in &cert.divisors {
        product = poly_mul(&product, cyclotomic_arc(d, limit)?.as_ref());
    }
    if product.degree() != Some(cert.m as usize) {
        return Err(Error::InvalidCertificate {
            n: cert.n,
            reason: "product degree does not equal m",
        });
    }
    poly_divexact(&IntPolynomial::t_power_minus_one(cert.n), &product)?;
    Ok(product)
}
