//! Extracted reversible circuits.
//!
//! [`extract`] walks a chromosome backward from a winning channel and
//! keeps exactly the reachable Fredkin genes, renumbered topologically.
//! [`simulate`] re-evaluates the result gate by gate with the scalar gate
//! rule; it shares nothing with the bit-parallel decoding path, so
//! [`verify_parity`] is an independent, exhaustive check on every
//! reported success.
//!
//! The `revsynth-netlist v1` text format is line-oriented and bit-exact:
//!
//! ```text
//! revsynth-netlist v1 k=3
//! G0 = FG(d1, c0, c1)
//! G1 = FG(d0, d1, G0.r)
//! OUT = G1.q
//! ```
//!
//! Sources are `d<j>` (problem input), `c0`/`c1` (constant rails), or
//! `G<i>.p|q|r` (an earlier gate's output channel). Gates appear in
//! topological order with sequential ids; the final line designates the
//! circuit output.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::gate::fredkin_apply;
use crate::genome::{Chromosome, Gene, GeneRef};
use crate::signal::MAX_ARITY;

/// One argument source: a problem input, a constant rail, or an output
/// channel of an earlier gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    Input(u32),
    Const0,
    Const1,
    Gate { id: usize, channel: u8 },
}

/// One Fredkin gate; its id is its position in [`Netlist::gates`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NetGate {
    pub a: Source,
    pub b: Source,
    pub c: Source,
}

impl NetGate {
    pub fn sources(&self) -> [Source; 3] {
        [self.a, self.b, self.c]
    }
}

/// A reachable subcircuit with a designated output channel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Netlist {
    k: u32,
    gates: Vec<NetGate>,
    output: Source,
}

/// Argument-slot consumer counts per source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanoutReport {
    /// Number of gate argument slots fed by each source (the output
    /// designation is not counted).
    pub counts: BTreeMap<Source, usize>,
    pub max_fanout: usize,
}

impl Netlist {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn gates(&self) -> &[NetGate] {
        &self.gates
    }

    pub fn output(&self) -> Source {
        self.output
    }

    /// Number of Fredkin gates (terminals and rails are not counted).
    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    /// Number of input assignments (`2^k`).
    pub fn case_count(&self) -> usize {
        1usize << self.k
    }

    /// Reinterpret the circuit at a different arity; every input
    /// reference must stay in range.
    pub fn with_arity(&self, k: u32) -> Result<Netlist, ArityOverrideError> {
        if k == 0 || k > MAX_ARITY {
            return Err(ArityOverrideError::OutOfRange(k));
        }
        let sources = self
            .gates
            .iter()
            .flat_map(|g| g.sources())
            .chain(std::iter::once(self.output));
        for source in sources {
            if let Source::Input(j) = source {
                if j >= k {
                    return Err(ArityOverrideError::InputOutOfRange { input: j, arity: k });
                }
            }
        }
        Ok(Netlist { k, gates: self.gates.clone(), output: self.output })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArityOverrideError {
    #[error("arity must lie in 1..={MAX_ARITY}, got {0}")]
    OutOfRange(u32),
    #[error("input d{input} out of range for arity {arity}")]
    InputOutOfRange { input: u32, arity: u32 },
}

/// Extract the subcircuit realizing `best_ref`: exactly the Fredkin genes
/// transitively reachable from it, renumbered in topological order, with
/// terminal references turned into input/constant sources.
///
/// Panics if `best_ref` does not address a valid channel of `ch`, or if
/// the chromosome's terminal prefix is not a parity terminal set
/// (`k` inputs plus the two rails).
pub fn extract(ch: &Chromosome, best_ref: GeneRef) -> Netlist {
    let genes = ch.genes();
    assert!(best_ref.gene < genes.len(), "reference to gene {} out of range", best_ref.gene);
    assert!(
        best_ref.channel < genes[best_ref.gene].channel_count(),
        "channel {} out of range for gene {}",
        best_ref.channel,
        best_ref.gene
    );
    let prefix_len = ch.prefix_len();
    assert!(prefix_len >= 3, "terminal prefix must hold at least one input plus both rails");
    let k = (prefix_len - 2) as u32;

    // Mark the Fredkin genes reachable from the winning reference.
    let mut reachable = vec![false; genes.len()];
    let mut stack = Vec::new();
    if matches!(genes[best_ref.gene], Gene::Fredkin { .. }) {
        stack.push(best_ref.gene);
        reachable[best_ref.gene] = true;
    }
    while let Some(idx) = stack.pop() {
        for r in genes[idx].refs().expect("only Fredkin genes are pushed") {
            if matches!(genes[r.gene], Gene::Fredkin { .. }) && !reachable[r.gene] {
                reachable[r.gene] = true;
                stack.push(r.gene);
            }
        }
    }

    // Ascending gene index is already a topological order.
    let mut new_id = vec![usize::MAX; genes.len()];
    let mut kept = Vec::new();
    for (idx, &keep) in reachable.iter().enumerate() {
        if keep {
            new_id[idx] = kept.len();
            kept.push(idx);
        }
    }

    let resolve = |r: GeneRef| -> Source {
        match genes[r.gene] {
            Gene::Terminal(t) => {
                if t < k as usize {
                    Source::Input(t as u32)
                } else if t == k as usize {
                    Source::Const0
                } else {
                    Source::Const1
                }
            }
            Gene::Fredkin { .. } => Source::Gate { id: new_id[r.gene], channel: r.channel },
        }
    };

    let gates = kept
        .iter()
        .map(|&idx| {
            let [a, b, c] = genes[idx].refs().expect("kept genes are Fredkin");
            NetGate { a: resolve(a), b: resolve(b), c: resolve(c) }
        })
        .collect();

    Netlist { k, gates, output: resolve(best_ref) }
}

/// Evaluate the netlist on one input assignment with the scalar gate
/// rule, returning the value at the designated output.
pub fn simulate(n: &Netlist, assignment: &[bool]) -> bool {
    assert_eq!(assignment.len(), n.k as usize, "assignment length must equal the arity");
    let mut values: Vec<(bool, bool, bool)> = Vec::with_capacity(n.gates.len());
    let read = |values: &[(bool, bool, bool)], s: Source| -> bool {
        match s {
            Source::Input(j) => assignment[j as usize],
            Source::Const0 => false,
            Source::Const1 => true,
            Source::Gate { id, channel } => match channel {
                0 => values[id].0,
                1 => values[id].1,
                _ => values[id].2,
            },
        }
    };
    for gate in &n.gates {
        let out = fredkin_apply(
            read(&values, gate.a),
            read(&values, gate.b),
            read(&values, gate.c),
        );
        values.push((out.p, out.q, out.r));
    }
    read(&values, n.output)
}

/// Exhaustively check the netlist against even-k-parity on all `2^k`
/// assignments.
pub fn verify_parity(n: &Netlist) -> bool {
    parity_mismatches(n) == 0
}

/// Number of assignments on which the netlist disagrees with
/// even-k-parity.
pub fn parity_mismatches(n: &Netlist) -> usize {
    let k = n.k as usize;
    let mut assignment = vec![false; k];
    let mut mismatches = 0;
    for case in 0usize..1 << k {
        for (j, slot) in assignment.iter_mut().enumerate() {
            *slot = (case >> j) & 1 == 1;
        }
        let expected = case.count_ones() % 2 == 0;
        if simulate(n, &assignment) != expected {
            mismatches += 1;
        }
    }
    mismatches
}

/// Count, per source, how many gate argument slots consume it.
pub fn fanout_analysis(n: &Netlist) -> FanoutReport {
    let mut counts: BTreeMap<Source, usize> = BTreeMap::new();
    for gate in &n.gates {
        for source in gate.sources() {
            *counts.entry(source).or_insert(0) += 1;
        }
    }
    let max_fanout = counts.values().copied().max().unwrap_or(0);
    FanoutReport { counts, max_fanout }
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

const HEADER_PREFIX: &str = "revsynth-netlist v1 k=";

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Source::Input(j) => write!(f, "d{j}"),
            Source::Const0 => write!(f, "c0"),
            Source::Const1 => write!(f, "c1"),
            Source::Gate { id, channel } => {
                let name = ['p', 'q', 'r'][channel as usize];
                write!(f, "G{id}.{name}")
            }
        }
    }
}

impl fmt::Display for Netlist {
    /// The bit-exact `revsynth-netlist v1` serialization: ASCII,
    /// newline-terminated lines, no trailing whitespace.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{HEADER_PREFIX}{}", self.k)?;
        for (id, gate) in self.gates.iter().enumerate() {
            writeln!(f, "G{id} = FG({}, {}, {})", gate.a, gate.b, gate.c)?;
        }
        writeln!(f, "OUT = {}", self.output)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("expected header `revsynth-netlist v1 k=<k>`")]
    BadHeader,
    #[error("arity must lie in 1..={MAX_ARITY}, got {0}")]
    BadArity(String),
    #[error("expected `G<i> = FG(<src>, <src>, <src>)` or `OUT = <src>`")]
    MalformedLine,
    #[error("gate ids must be sequential: expected G{expected}, found G{found}")]
    GateIdOutOfOrder { expected: usize, found: usize },
    #[error("unknown source `{0}`")]
    UnknownSource(String),
    #[error("source references gate {referenced}, which is not an earlier gate")]
    ForwardReference { referenced: usize },
    #[error("input d{input} out of range for arity {arity}")]
    InputOutOfRange { input: u32, arity: u32 },
    #[error("missing OUT line")]
    MissingOutput,
    #[error("unexpected content after the OUT line")]
    TrailingContent,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Parse a source token; `gates_so_far` bounds legal gate references.
fn parse_source(
    token: &str,
    k: u32,
    gates_so_far: usize,
    line: usize,
) -> Result<Source, ParseError> {
    if token == "c0" {
        return Ok(Source::Const0);
    }
    if token == "c1" {
        return Ok(Source::Const1);
    }
    if let Some(rest) = token.strip_prefix('d') {
        let j: u32 = rest
            .parse()
            .map_err(|_| err(line, ParseErrorKind::UnknownSource(token.to_string())))?;
        if j >= k {
            return Err(err(line, ParseErrorKind::InputOutOfRange { input: j, arity: k }));
        }
        return Ok(Source::Input(j));
    }
    if let Some(rest) = token.strip_prefix('G') {
        let (id_str, channel_str) = rest
            .split_once('.')
            .ok_or_else(|| err(line, ParseErrorKind::UnknownSource(token.to_string())))?;
        let id: usize = id_str
            .parse()
            .map_err(|_| err(line, ParseErrorKind::UnknownSource(token.to_string())))?;
        let channel = match channel_str {
            "p" => 0,
            "q" => 1,
            "r" => 2,
            _ => return Err(err(line, ParseErrorKind::UnknownSource(token.to_string()))),
        };
        if id >= gates_so_far {
            return Err(err(line, ParseErrorKind::ForwardReference { referenced: id }));
        }
        return Ok(Source::Gate { id, channel });
    }
    Err(err(line, ParseErrorKind::UnknownSource(token.to_string())))
}

/// Parse the `revsynth-netlist v1` text format. Errors carry the
/// 1-based line number.
pub fn parse(text: &str) -> Result<Netlist, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (header_line, header) = lines.next().ok_or_else(|| err(1, ParseErrorKind::BadHeader))?;
    let k_str = header
        .strip_prefix(HEADER_PREFIX)
        .ok_or_else(|| err(header_line, ParseErrorKind::BadHeader))?;
    let k: u32 = k_str
        .parse()
        .map_err(|_| err(header_line, ParseErrorKind::BadArity(k_str.to_string())))?;
    if k == 0 || k > MAX_ARITY {
        return Err(err(header_line, ParseErrorKind::BadArity(k_str.to_string())));
    }

    let mut gates: Vec<NetGate> = Vec::new();
    let mut output: Option<Source> = None;
    let mut last_line = header_line;
    for (line, raw) in lines {
        last_line = line;
        if output.is_some() {
            return Err(err(line, ParseErrorKind::TrailingContent));
        }
        if let Some(rhs) = raw.strip_prefix("OUT = ") {
            output = Some(parse_source(rhs, k, gates.len(), line)?);
            continue;
        }
        let rest = raw.strip_prefix('G').ok_or_else(|| err(line, ParseErrorKind::MalformedLine))?;
        let (id_str, rhs) =
            rest.split_once(" = FG(").ok_or_else(|| err(line, ParseErrorKind::MalformedLine))?;
        let found: usize =
            id_str.parse().map_err(|_| err(line, ParseErrorKind::MalformedLine))?;
        if found != gates.len() {
            return Err(err(line, ParseErrorKind::GateIdOutOfOrder { expected: gates.len(), found }));
        }
        let body = rhs.strip_suffix(')').ok_or_else(|| err(line, ParseErrorKind::MalformedLine))?;
        let tokens: Vec<&str> = body.split(", ").collect();
        if tokens.len() != 3 {
            return Err(err(line, ParseErrorKind::MalformedLine));
        }
        let a = parse_source(tokens[0], k, gates.len(), line)?;
        let b = parse_source(tokens[1], k, gates.len(), line)?;
        let c = parse_source(tokens[2], k, gates.len(), line)?;
        gates.push(NetGate { a, b, c });
    }

    let output = output.ok_or_else(|| err(last_line + 1, ParseErrorKind::MissingOutput))?;
    Ok(Netlist { k, gates, output })
}

impl FromStr for Netlist {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
