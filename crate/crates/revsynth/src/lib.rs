//! Evolutionary synthesis of reversible digital circuits.
//!
//! `revsynth` evolves circuits built entirely from Fredkin gates that
//! compute the even-k-parity function. Candidate circuits are encoded as
//! linear multi-expression genomes in which every gene is itself a
//! candidate output, searched with a steady-state evolutionary loop, and
//! every winning circuit is re-simulated gate by gate against an
//! exhaustive truth-table check before it is reported.
//!
//! The crate is organized around the pipeline:
//!
//! * [`gate`] / [`signal`] — Fredkin semantics, scalar and bit-parallel.
//! * [`parity`] — the benchmark: input columns, constant rails, target.
//! * [`genome`] — the linear genome and its variation operators.
//! * [`eval`] — memoized top-down decoding and error-count fitness.
//! * [`search`] — the steady-state loop with q-tournament selection.
//! * [`netlist`] — extraction of the reachable subcircuit, independent
//!   simulation, verification, fan-out analysis, and the text format.
//! * [`experiment`] — seeded batch runs with machine-readable reports.

pub mod eval;
pub mod experiment;
pub mod gate;
pub mod genome;
pub mod netlist;
pub mod parity;
pub mod rng;
pub mod search;
pub mod signal;

pub use eval::{chromosome_fitness, evaluate, expression_fitness, Evaluation};
pub use experiment::{run_experiment, ExperimentConfig, ExperimentReport};
pub use gate::{fredkin_apply, fredkin_apply_vec, fredkin_permutation_table, FredkinTriple};
pub use genome::{mutate, random_chromosome, uniform_crossover, Chromosome, Gene, GeneRef};
pub use netlist::{extract, simulate, verify_parity, Netlist, Source};
pub use parity::ParityProblem;
pub use search::{steady_state_search, tournament_select, RunResult, SearchParams};
pub use signal::SignalVector;
