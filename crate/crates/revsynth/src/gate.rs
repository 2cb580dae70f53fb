//! Fredkin-gate semantics at single-bit and whole-truth-table granularity.
//!
//! The gate passes its control line through unchanged and swaps the two
//! data lines iff the control is 1. It is conservative (the number of set
//! bits in the triple never changes) and is its own inverse.

use crate::signal::SignalVector;

/// Output triple of a single Fredkin application: control pass-through
/// `p`, then the two (possibly swapped) data lines `q` and `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FredkinTriple {
    pub p: bool,
    pub q: bool,
    pub r: bool,
}

/// Apply the Fredkin gate to one input triple `(a, b, c)`.
pub fn fredkin_apply(a: bool, b: bool, c: bool) -> FredkinTriple {
    if a {
        FredkinTriple { p: a, q: c, r: b }
    } else {
        FredkinTriple { p: a, q: b, r: c }
    }
}

/// Apply the Fredkin gate to whole truth-table columns at once.
///
/// Case `t` of the output triple equals `fredkin_apply(a[t], b[t], c[t])`.
/// Swapping under a control mask is `q = b ^ s`, `r = c ^ s` with
/// `s = a & (b ^ c)`. All three columns must have equal arity.
pub fn fredkin_apply_vec(
    a: &SignalVector,
    b: &SignalVector,
    c: &SignalVector,
) -> (SignalVector, SignalVector, SignalVector) {
    assert_eq!(a.k(), b.k(), "signal arity mismatch: {} vs {}", a.k(), b.k());
    assert_eq!(a.k(), c.k(), "signal arity mismatch: {} vs {}", a.k(), c.k());

    let mut q = Vec::with_capacity(a.words().len());
    let mut r = Vec::with_capacity(a.words().len());
    for ((&aw, &bw), &cw) in a.words().iter().zip(b.words()).zip(c.words()) {
        let swap = aw & (bw ^ cw);
        q.push(bw ^ swap);
        r.push(cw ^ swap);
    }
    (a.clone(), SignalVector::from_words(a.k(), q), SignalVector::from_words(a.k(), r))
}

/// One row of the gate's truth table.
pub type BitTriple = (bool, bool, bool);

/// Enumerate the gate over all 8 input triples, in lexicographic order of
/// `(a, b, c)`.
pub fn fredkin_permutation_table() -> Vec<(BitTriple, BitTriple)> {
    let mut table = Vec::with_capacity(8);
    for bits in 0u8..8 {
        let a = bits & 4 != 0;
        let b = bits & 2 != 0;
        let c = bits & 1 != 0;
        let out = fredkin_apply(a, b, c);
        table.push(((a, b, c), (out.p, out.q, out.r)));
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from_seed;
    use proptest::prelude::*;
    use rand::Rng;

    #[test]
    fn control_low_passes_through() {
        assert_eq!(fredkin_apply(false, true, false), FredkinTriple { p: false, q: true, r: false });
    }

    #[test]
    fn control_high_swaps_data_lines() {
        assert_eq!(fredkin_apply(true, false, true), FredkinTriple { p: true, q: true, r: false });
    }

    #[test]
    fn all_ones_is_fixed() {
        // A swap of equal values changes nothing; the gate can never
        // produce a 0 from an all-ones triple.
        assert_eq!(fredkin_apply(true, true, true), FredkinTriple { p: true, q: true, r: true });
    }

    #[test]
    fn permutation_table_is_a_bijection() {
        let table = fredkin_permutation_table();
        assert_eq!(table.len(), 8);
        assert_eq!(table[0], ((false, false, false), (false, false, false)));
        assert_eq!(table[5], ((true, false, true), (true, true, false)));

        let mut outputs: Vec<_> = table.iter().map(|&(_, out)| out).collect();
        outputs.sort();
        outputs.dedup();
        assert_eq!(outputs.len(), 8, "outputs must be pairwise distinct");
    }

    #[test]
    fn double_application_is_identity() {
        for &((a, b, c), (p, q, r)) in &fredkin_permutation_table() {
            let back = fredkin_apply(p, q, r);
            assert_eq!((back.p, back.q, back.r), (a, b, c));
        }
    }

    #[test]
    fn gate_is_conservative_and_preserves_control() {
        for &((a, b, c), (p, q, r)) in &fredkin_permutation_table() {
            let ones_in = u8::from(a) + u8::from(b) + u8::from(c);
            let ones_out = u8::from(p) + u8::from(q) + u8::from(r);
            assert_eq!(ones_in, ones_out);
            assert_eq!(p, a);
        }
    }

    #[test]
    fn vec_control_low_everywhere_is_identity() {
        let x = SignalVector::from_fn(3, |t| t & 1 == 1);
        let y = SignalVector::from_fn(3, |t| t & 4 == 4);
        let (p, q, r) = fredkin_apply_vec(&SignalVector::zeros(3), &x, &y);
        assert_eq!(p, SignalVector::zeros(3));
        assert_eq!(q, x);
        assert_eq!(r, y);
    }

    #[test]
    fn vec_control_high_everywhere_swaps() {
        let x = SignalVector::from_fn(3, |t| t & 1 == 1);
        let y = SignalVector::from_fn(3, |t| t & 4 == 4);
        let (p, q, r) = fredkin_apply_vec(&SignalVector::ones(3), &x, &y);
        assert_eq!(p, SignalVector::ones(3));
        assert_eq!(q, y);
        assert_eq!(r, x);
    }

    #[test]
    fn vec_agrees_with_scalar_on_random_triples() {
        let mut rng = rng_from_seed(0x5eed_0001);
        for _ in 0..100 {
            let a = SignalVector::from_fn(4, |_| rng.gen());
            let b = SignalVector::from_fn(4, |_| rng.gen());
            let c = SignalVector::from_fn(4, |_| rng.gen());
            let (p, q, r) = fredkin_apply_vec(&a, &b, &c);
            for t in 0..16 {
                let out = fredkin_apply(a.bit(t), b.bit(t), c.bit(t));
                assert_eq!((p.bit(t), q.bit(t), r.bit(t)), (out.p, out.q, out.r), "case {t}");
            }
        }
    }

    #[test]
    #[should_panic(expected = "signal arity mismatch")]
    fn vec_rejects_mismatched_lengths() {
        let _ = fredkin_apply_vec(
            &SignalVector::zeros(2),
            &SignalVector::zeros(3),
            &SignalVector::zeros(3),
        );
    }

    proptest! {
        #[test]
        fn vec_scalar_coherence(a in prop::collection::vec(any::<bool>(), 32),
                                b in prop::collection::vec(any::<bool>(), 32),
                                c in prop::collection::vec(any::<bool>(), 32)) {
            let av = SignalVector::from_bits(&a);
            let bv = SignalVector::from_bits(&b);
            let cv = SignalVector::from_bits(&c);
            let (p, q, r) = fredkin_apply_vec(&av, &bv, &cv);
            for t in 0..32 {
                let out = fredkin_apply(a[t], b[t], c[t]);
                prop_assert_eq!((p.bit(t), q.bit(t), r.bit(t)), (out.p, out.q, out.r));
            }
        }
    }
}
