//! The even-k-parity benchmark.
//!
//! The terminal set has `k + 2` entries: the inputs `d_0 .. d_{k-1}`
//! followed by the constant rails `c0` (always-OFF) and `c1` (always-ON).
//! The rails are what let a conservative gate express non-conservative
//! functions: on the all-ones case an even-parity circuit for odd `k`
//! must output 0, which no Fredkin combination of the bare inputs can do.

use thiserror::Error;

use crate::signal::{SignalVector, MAX_ARITY};

/// Even-parity instance over `k` Boolean arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityProblem {
    k: u32,
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("problem arity must lie in 2..=16, got {0}")]
pub struct ArityError(pub u32);

impl ParityProblem {
    pub fn new(k: u32) -> Result<Self, ArityError> {
        if (2..=MAX_ARITY).contains(&k) {
            Ok(ParityProblem { k })
        } else {
            Err(ArityError(k))
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of fitness cases (`2^k`).
    pub fn case_count(&self) -> usize {
        1usize << self.k
    }

    /// Size of the terminal set: `k` inputs plus the two constant rails.
    pub fn terminal_count(&self) -> usize {
        self.k as usize + 2
    }

    /// Truth-table columns of the terminals, in canonical order
    /// `d_0, .., d_{k-1}, c0, c1`. Column `j < k` has bit `t` equal to
    /// bit `j` of the case index `t`.
    pub fn terminal_signals(&self) -> Vec<SignalVector> {
        let mut columns = Vec::with_capacity(self.terminal_count());
        for j in 0..self.k {
            columns.push(SignalVector::from_fn(self.k, |t| (t >> j) & 1 == 1));
        }
        columns.push(SignalVector::zeros(self.k));
        columns.push(SignalVector::ones(self.k));
        columns
    }

    /// Target column: 1 exactly where an even number of the `k` inputs
    /// (including zero of them) are 1.
    pub fn parity_target(&self) -> SignalVector {
        SignalVector::from_fn(self.k, |t| t.count_ones() % 2 == 0)
    }
}
