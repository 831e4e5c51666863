//! A fixed-width packed bit array with the one operation subset-sum DP
//! needs: `self |= self << k`, truncated to the array width.
//!
//! Reachability DP over a value multiset `{v_1, ..., v_k}` is then just
//! `set(0)` followed by one `or_shifted(v_i)` per value; bit `m` ends up set
//! exactly when `m` is a subset sum. Each value participates at most once:
//! `or_shifted` iterates destination words from high to low, so every source
//! word it reads still holds pre-call content and a value cannot chain with
//! itself within one call. This is 0/1-knapsack semantics, one word op per
//! 64 sums.

const WORD_BITS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitArray {
    /// Number of addressable bits; bits at index >= `len` are kept zero.
    len: usize,
    words: Vec<u64>,
}

impl BitArray {
    pub fn new(len: usize) -> Self {
        let n_words = len.div_ceil(WORD_BITS);
        BitArray {
            len,
            words: vec![0; n_words],
        }
    }

    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD_BITS] |= 1u64 << (i % WORD_BITS);
    }

    pub fn get(&self, i: usize) -> bool {
        if i >= self.len {
            return false;
        }
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    /// In-place `self |= self << shift`, dropping bits shifted past `len`.
    ///
    /// A shift of 0 would OR the array with itself (a no-op but a breeding
    /// ground for off-by-ones), so it is rejected.
    pub fn or_shifted(&mut self, shift: usize) {
        assert!(shift > 0, "or_shifted requires a positive shift");
        if shift >= self.len {
            return;
        }
        let word_shift = shift / WORD_BITS;
        let bit_shift = shift % WORD_BITS;
        // High-to-low so that every source word read is pre-call content.
        for dst in (word_shift..self.words.len()).rev() {
            let src = dst - word_shift;
            let mut v = self.words[src] << bit_shift;
            if bit_shift > 0 && src > 0 {
                v |= self.words[src - 1] >> (WORD_BITS - bit_shift);
            }
            self.words[dst] |= v;
        }
        self.mask_tail();
    }

    /// Zero any bits in the last word beyond `len`, preserving the invariant
    /// that out-of-range bits never leak into `all_set`/`count_ones`.
    fn mask_tail(&mut self) {
        let tail = self.len % WORD_BITS;
        if tail != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
    }

    /// True iff every bit in `0..len` is set.
    pub fn all_set(&self) -> bool {
        if self.len == 0 {
            return true;
        }
        let full_words = self.len / WORD_BITS;
        if self.words[..full_words].iter().any(|&w| w != u64::MAX) {
            return false;
        }
        let tail = self.len % WORD_BITS;
        tail == 0 || self.words[full_words] == (1u64 << tail) - 1
    }

    /// Indices in `0..len` whose bit is clear, ascending.
    pub fn unset_indices(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| !self.get(i)).collect()
    }
}

/// Reachable subset sums of `values`, as a bit array over `0..=max_sum`.
///
/// Values larger than `max_sum` cannot take part in any sum of interest and
/// are skipped.
pub(crate) fn subset_sums(values: &[u64], max_sum: u64) -> BitArray {
    let max_sum = usize::try_from(max_sum).expect("subset-sum bound exceeds address space");
    let mut reach = BitArray::new(max_sum + 1);
    reach.set(0);
    for &v in values {
        if v as u128 <= max_sum as u128 && v > 0 {
            reach.or_shifted(v as usize);
        }
    }
    reach
}
