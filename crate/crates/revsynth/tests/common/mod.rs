//! Shared test oracles, kept deliberately independent of the library's
//! bit-parallel decoding path: plain per-case recursion with the gate
//! rule written out inline.

use revsynth::genome::{Chromosome, Gene, GeneRef};
use revsynth::signal::SignalVector;

/// Unmemoized recursive evaluation of one channel on one fitness case.
/// Re-walks the reference chains on every call.
pub fn naive_channel_bit(
    ch: &Chromosome,
    r: GeneRef,
    terminals: &[SignalVector],
    case: usize,
) -> bool {
    match ch.genes()[r.gene] {
        Gene::Terminal(t) => terminals[t].bit(case),
        Gene::Fredkin { a, b, c } => {
            let control = naive_channel_bit(ch, a, terminals, case);
            match r.channel {
                0 => control,
                1 => {
                    if control {
                        naive_channel_bit(ch, c, terminals, case)
                    } else {
                        naive_channel_bit(ch, b, terminals, case)
                    }
                }
                _ => {
                    if control {
                        naive_channel_bit(ch, b, terminals, case)
                    } else {
                        naive_channel_bit(ch, c, terminals, case)
                    }
                }
            }
        }
    }
}

/// All channel references of a chromosome in canonical order.
pub fn all_channel_refs(ch: &Chromosome) -> Vec<GeneRef> {
    ch.genes()
        .iter()
        .enumerate()
        .flat_map(|(gene, g)| (0..g.channel_count()).map(move |channel| GeneRef::new(gene, channel)))
        .collect()
}

/// Input assignment encoded by a fitness-case index.
pub fn assignment_for_case(k: u32, case: usize) -> Vec<bool> {
    (0..k).map(|j| (case >> j) & 1 == 1).collect()
}
