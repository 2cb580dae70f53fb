//! Bit-parallel truth-table columns.
//!
//! A [`SignalVector`] holds one Boolean value per fitness case, packed 64
//! cases to a machine word, so a gate application over all `2^k` cases is
//! a handful of word operations. Case index `t` encodes an input
//! assignment: bit `j` of `t` is the value of input `d_j`.

use std::fmt;

/// Largest supported problem arity. `2^k` truth-table bits must stay
/// materializable per column.
pub const MAX_ARITY: u32 = 16;

const WORD_BITS: usize = 64;

/// A truth table over all `2^k` fitness cases, one bit per case.
///
/// Immutable once constructed; operations return new vectors, so values
/// can be shared freely across concurrent runs. Unused high bits of the
/// last word are kept zero, which makes equality, hashing, and popcounts
/// plain word-wise operations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignalVector {
    k: u32,
    words: Vec<u64>,
}

fn word_count(k: u32) -> usize {
    let cases = 1usize << k;
    cases.div_ceil(WORD_BITS)
}

impl SignalVector {
    /// All-zeros column (the always-OFF rail).
    pub fn zeros(k: u32) -> Self {
        assert!(k <= MAX_ARITY, "arity {k} exceeds the supported maximum {MAX_ARITY}");
        SignalVector { k, words: vec![0; word_count(k)] }
    }

    /// All-ones column (the always-ON rail).
    pub fn ones(k: u32) -> Self {
        let mut v = Self::zeros(k);
        for w in &mut v.words {
            *w = u64::MAX;
        }
        v.mask_tail();
        v
    }

    /// Build a column by evaluating `f` on every case index in order.
    pub fn from_fn(k: u32, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut v = Self::zeros(k);
        for case in 0..v.case_count() {
            if f(case) {
                v.words[case / WORD_BITS] |= 1u64 << (case % WORD_BITS);
            }
        }
        v
    }

    /// Build from an explicit per-case bit slice; the length must be a
    /// power of two.
    pub fn from_bits(bits: &[bool]) -> Self {
        assert!(
            !bits.is_empty() && bits.len().is_power_of_two(),
            "signal length must be a nonzero power of two, got {}",
            bits.len()
        );
        let k = bits.len().trailing_zeros();
        Self::from_fn(k, |case| bits[case])
    }

    pub(crate) fn from_words(k: u32, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), word_count(k));
        let v = SignalVector { k, words };
        debug_assert!(v.tail_is_masked());
        v
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }

    /// Arity of the underlying problem; the column has `2^k` cases.
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of fitness cases (`2^k`).
    pub fn case_count(&self) -> usize {
        1usize << self.k
    }

    /// Value at one fitness case.
    pub fn bit(&self, case: usize) -> bool {
        assert!(case < self.case_count(), "case {case} out of range");
        (self.words[case / WORD_BITS] >> (case % WORD_BITS)) & 1 == 1
    }

    /// Number of cases where the column is 1.
    pub fn count_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// Number of cases where the two columns differ.
    pub fn hamming_distance(&self, other: &Self) -> u32 {
        assert_eq!(self.k, other.k, "signal arity mismatch: {} vs {}", self.k, other.k);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones())
            .sum()
    }

    /// Per-case values in case-index order.
    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.case_count()).map(|case| self.bit(case))
    }

    fn tail_mask(&self) -> u64 {
        let used = self.case_count() % WORD_BITS;
        if used == 0 {
            u64::MAX
        } else {
            (1u64 << used) - 1
        }
    }

    fn mask_tail(&mut self) {
        let mask = self.tail_mask();
        if let Some(last) = self.words.last_mut() {
            *last &= mask;
        }
    }

    fn tail_is_masked(&self) -> bool {
        self.words.last().is_none_or(|last| last & !self.tail_mask() == 0)
    }
}

impl fmt::Debug for SignalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignalVector(k={}, ", self.k)?;
        if self.case_count() <= 64 {
            for bit in self.iter() {
                write!(f, "{}", u8::from(bit))?;
            }
        } else {
            write!(f, "{} cases, {} ones", self.case_count(), self.count_ones())?;
        }
        write!(f, ")")
    }
}
