//! Elementary multiplicative number theory on `u64`.
//!
//! Everything downstream (family predicates, witnesses, censuses) works from
//! a [`Factorization`]: the canonical list of `(prime, exponent)` pairs in
//! ascending prime order. One-off inputs are factored by trial division
//! ([`factorize`]); bulk scans build a smallest-prime-factor table once
//! ([`SpfTable`]) and factor each integer in `O(log n)`.
//!
//! All scalar arithmetic here is checked or provably in-range: `sigma` is the
//! only operation whose value can exceed `u64` for a valid input, and it
//! reports [`Error::Overflow`] instead of wrapping.

use crate::Error;

/// Default memory cap for [`SpfTable::build`]: 2 GiB of table entries,
/// enough for limits up to 5·10^8 at 4 bytes per entry.
pub const DEFAULT_SPF_MEMORY_CAP: u64 = 2 << 30;

/// A positive integer together with its prime factorization.
///
/// `factors()` lists `(p_i, e_i)` with `p_1 < p_2 < ... < p_k` and all
/// `e_i >= 1`; the list is empty exactly for `n = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// The factored integer.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs in ascending prime order; empty for `n = 1`.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of distinct prime factors (`omega`).
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    /// Number of prime factors with multiplicity (`Omega`).
    pub fn big_omega(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| u64::from(e)).sum()
    }

    /// Number of divisors `tau(n) = prod (e_i + 1)`.
    ///
    /// Never overflows: `tau(n) <= 103680` for every `n < 2^64`.
    pub fn tau(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(_, e)| u64::from(e) + 1)
            .product()
    }

    /// True iff every exponent is 1 (vacuously true for `n = 1`).
    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Largest prime factor `P(n)`, with the classical convention `P(1) = 1`.
    pub fn largest_prime(&self) -> u64 {
        self.factors.last().map_or(1, |&(p, _)| p)
    }

    /// Smallest prime factor; `None` for `n = 1`, which has no prime factor.
    pub fn smallest_prime(&self) -> Option<u64> {
        self.factors.first().map(|&(p, _)| p)
    }

    /// The factorization of `n * p^k` for a prime `p`, merging `p` into the
    /// factor list (used to study how families behave under multiplication
    /// by a prime power). Fails with [`Error::Overflow`] if the product
    /// leaves `u64`.
    ///
    /// The caller is responsible for `p` actually being prime; compositeness
    /// would silently break the canonical-form invariant.
    pub fn times_prime_power(&self, p: u64, k: u32) -> Result<Factorization, Error> {
        assert!(p >= 2, "times_prime_power requires p >= 2");
        assert!(k >= 1, "times_prime_power requires k >= 1");
        let mut n = self.n;
        for _ in 0..k {
            n = n.checked_mul(p).ok_or(Error::Overflow("n * p^k"))?;
        }
        let mut factors = self.factors.clone();
        match factors.binary_search_by_key(&p, |&(q, _)| q) {
            Ok(i) => factors[i].1 += k,
            Err(i) => factors.insert(i, (p, k)),
        }
        Ok(Factorization { n, factors })
    }

    /// The factorization of `n / P(n)` where `P(n)` is the largest prime
    /// factor, valid only when `P(n)` appears to the first power (always the
    /// case for squarefree `n > 1`). `None` for `n = 1`.
    pub(crate) fn without_largest_prime(&self) -> Option<Factorization> {
        let &(p, e) = self.factors.last()?;
        debug_assert_eq!(e, 1, "without_largest_prime needs exponent 1");
        Some(Factorization {
            n: self.n / p,
            factors: self.factors[..self.factors.len() - 1].to_vec(),
        })
    }
}

/// Factor `n` by trial division (2, 3, then 6k±1 candidates).
///
/// Suitable for one-off inputs; worst case (n a prime near 2^64) takes a few
/// seconds. Bulk callers should use [`SpfTable::factorize`].
///
/// # Examples
///
/// ```
/// let f = phipractical::factorize(45).unwrap();
/// assert_eq!(f.factors(), &[(3, 2), (5, 1)]);
/// assert!(phipractical::factorize(0).is_err());
/// ```
pub fn factorize(n: u64) -> Result<Factorization, Error> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut push = |p: u64, rest: &mut u64| {
        let mut e = 0u32;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut rest);
    push(3, &mut rest);
    let mut d: u64 = 5;
    // Candidates 5, 7, 11, 13, ... (6k±1); step alternates 2, 4.
    let mut step: u64 = 2;
    while d as u128 * d as u128 <= rest as u128 {
        push(d, &mut rest);
        d += step;
        step = 6 - step;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { n, factors })
}

/// All divisors of `n`, sorted ascending. `divisors(1) = [1]`.
pub fn divisors(f: &Factorization) -> Vec<u64> {
    let mut divs = Vec::with_capacity(f.tau() as usize);
    divs.push(1u64);
    for &(p, e) in f.factors() {
        let base = divs.len();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            for i in 0..base {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// Euler's totient `phi(n) = prod p^(e-1) (p - 1)`. Always fits in `u64`
/// since `phi(n) <= n`.
pub fn euler_phi(f: &Factorization) -> u64 {
    f.factors()
        .iter()
        .map(|&(p, e)| p.pow(e - 1) * (p - 1))
        .product()
}

/// Sum of divisors `sigma(n) = prod (p^(e+1) - 1)/(p - 1)`, checked.
///
/// `sigma(n)` can exceed `u64` even when `n` does not; such inputs report
/// [`Error::Overflow`] rather than wrapping.
pub fn sigma(f: &Factorization) -> Result<u64, Error> {
    let mut total: u64 = 1;
    for &(p, e) in f.factors() {
        let mut s: u64 = 1;
        let mut pk: u64 = 1;
        for _ in 0..e {
            pk = pk.checked_mul(p).ok_or(Error::Overflow("sigma"))?;
            s = s.checked_add(pk).ok_or(Error::Overflow("sigma"))?;
        }
        total = total.checked_mul(s).ok_or(Error::Overflow("sigma"))?;
    }
    Ok(total)
}

/// Smallest-prime-factor table over `2..=limit` for `O(log n)` bulk
/// factorization.
///
/// Entries are 32-bit: the stored value is a prime `<= limit`, so 32 bits
/// suffice whenever `limit < 2^32`, halving memory versus `u64` entries.
/// Limits at or beyond `2^32` would need over 16 GiB of table and are
/// rejected as [`Error::LimitTooLarge`] regardless of the configured cap.
#[derive(Debug)]
pub struct SpfTable {
    limit: u64,
    spf: Vec<u32>,
}

impl SpfTable {
    /// Build the table for `2..=limit` under the default 2 GiB memory cap.
    pub fn build(limit: u64) -> Result<SpfTable, Error> {
        Self::build_with_memory_cap(limit, DEFAULT_SPF_MEMORY_CAP)
    }

    /// Build with an explicit memory cap in bytes (4 bytes per entry).
    pub fn build_with_memory_cap(limit: u64, cap_bytes: u64) -> Result<SpfTable, Error> {
        if limit < 2 {
            return Err(Error::LimitTooLarge {
                what: "SPF table (limit must be >= 2)",
                requested: limit,
                max: u32::MAX as u64,
            });
        }
        let max_by_cap = (cap_bytes / 4).saturating_sub(1).min(u32::MAX as u64 - 1);
        if limit > max_by_cap {
            return Err(Error::LimitTooLarge {
                what: "SPF table",
                requested: limit,
                max: max_by_cap,
            });
        }
        let size = limit as usize + 1;
        let mut spf = vec![0u32; size];
        let mut i: usize = 2;
        // Sieve primes up to sqrt(limit); every composite gets its smallest
        // prime from these. Remaining zeros are primes > sqrt(limit).
        while (i * i) as u64 <= limit {
            if spf[i] == 0 {
                for j in (i * i..size).step_by(i) {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                }
                spf[i] = i as u32;
            }
            i += 1;
        }
        for (j, slot) in spf.iter_mut().enumerate().skip(2) {
            if *slot == 0 {
                *slot = j as u32;
            }
        }
        Ok(SpfTable { limit, spf })
    }

    /// Largest `n` this table can factor.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Smallest prime factor of `n`; `None` for `n < 2`.
    ///
    /// # Panics
    ///
    /// Panics if `n > limit`.
    pub fn spf(&self, n: u64) -> Option<u64> {
        assert!(n <= self.limit, "spf query {n} above table limit {}", self.limit);
        if n < 2 {
            return None;
        }
        Some(u64::from(self.spf[n as usize]))
    }

    /// True iff `n` is prime (table lookup; false for `n < 2`).
    ///
    /// # Panics
    ///
    /// Panics if `n > limit`.
    pub fn is_prime(&self, n: u64) -> bool {
        self.spf(n) == Some(n)
    }

    /// Factor `n <= limit` by repeated SPF division.
    pub fn factorize(&self, n: u64) -> Result<Factorization, Error> {
        if n == 0 {
            return Err(Error::ZeroInput);
        }
        if n > self.limit {
            return Err(Error::LimitTooLarge {
                what: "SPF factorization (n above table limit)",
                requested: n,
                max: self.limit,
            });
        }
        let mut rest = n as usize;
        let mut factors: Vec<(u64, u32)> = Vec::new();
        while rest > 1 {
            let p = self.spf[rest] as usize;
            let mut e = 0u32;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p as u64, e));
        }
        // SPF division yields primes in ascending order already.
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        Ok(Factorization { n, factors })
    }

    /// All primes in `[2, bound]`, ascending, by table scan.
    pub fn primes_up_to(&self, bound: u64) -> Vec<u64> {
        assert!(bound <= self.limit);
        (2..=bound).filter(|&n| self.is_prime(n)).collect()
    }
}
