//! Top-down genome decoding and error-count fitness.
//!
//! Decoding walks the chromosome once; each gene's output columns are
//! stored as they are produced, so later genes resolve their arguments by
//! lookup instead of re-walking the reference chains. Every channel of
//! every gene is a candidate solution: chromosome fitness is the minimum
//! expression fitness over all of them.

use crate::gate::fredkin_apply_vec;
use crate::genome::{Chromosome, Gene, GeneRef};
use crate::signal::SignalVector;

/// Output columns of one decoded gene.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneOutput {
    Terminal(SignalVector),
    Gate([SignalVector; 3]),
}

impl GeneOutput {
    pub fn channel_count(&self) -> u8 {
        match self {
            GeneOutput::Terminal(_) => 1,
            GeneOutput::Gate(_) => 3,
        }
    }

    pub fn channel(&self, channel: u8) -> &SignalVector {
        match self {
            GeneOutput::Terminal(v) => {
                assert_eq!(channel, 0, "terminal genes have a single channel");
                v
            }
            GeneOutput::Gate(vs) => &vs[channel as usize],
        }
    }
}

/// All per-gene output columns of one chromosome, in gene order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    outputs: Vec<GeneOutput>,
}

impl Evaluation {
    pub fn gene_count(&self) -> usize {
        self.outputs.len()
    }

    pub fn gene_output(&self, gene: usize) -> &GeneOutput {
        &self.outputs[gene]
    }

    /// Column at one channel reference.
    pub fn channel(&self, r: GeneRef) -> &SignalVector {
        self.outputs[r.gene].channel(r.channel)
    }

    /// Every channel reference in canonical order: gene ascending, then
    /// channel ascending.
    pub fn channel_refs(&self) -> impl Iterator<Item = GeneRef> + '_ {
        self.outputs.iter().enumerate().flat_map(|(gene, out)| {
            (0..out.channel_count()).map(move |channel| GeneRef::new(gene, channel))
        })
    }
}

/// Decode a chromosome top-down over the given terminal columns.
///
/// `terminal_signals` must hold one column per terminal, all of equal
/// arity; gene `i`'s output depends only on outputs of genes `j < i`.
pub fn evaluate(ch: &Chromosome, terminal_signals: &[SignalVector]) -> Evaluation {
    let mut outputs: Vec<GeneOutput> = Vec::with_capacity(ch.len());
    for gene in ch.genes() {
        let out = match *gene {
            Gene::Terminal(t) => GeneOutput::Terminal(terminal_signals[t].clone()),
            Gene::Fredkin { a, b, c } => {
                let (p, q, r) = fredkin_apply_vec(
                    outputs[a.gene].channel(a.channel),
                    outputs[b.gene].channel(b.channel),
                    outputs[c.gene].channel(c.channel),
                );
                GeneOutput::Gate([p, q, r])
            }
        };
        outputs.push(out);
    }
    Evaluation { outputs }
}

/// Error count of one expression: the number of fitness cases where its
/// output differs from the target. Zero means an exact solution.
pub fn expression_fitness(output: &SignalVector, target: &SignalVector) -> u32 {
    output.hamming_distance(target)
}

/// Minimum expression fitness over every channel of every gene, with the
/// winning reference. Ties break toward the lowest gene index, then the
/// lowest channel.
pub fn chromosome_fitness(eval: &Evaluation, target: &SignalVector) -> (u32, GeneRef) {
    let mut best: Option<(u32, GeneRef)> = None;
    for r in eval.channel_refs() {
        let fitness = expression_fitness(eval.channel(r), target);
        if best.is_none_or(|(b, _)| fitness < b) {
            best = Some((fitness, r));
        }
    }
    best.expect("chromosome has at least one gene")
}
