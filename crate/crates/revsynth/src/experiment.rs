//! Seeded experiment batches.
//!
//! A batch executes `runs` independent searches. Run `i` draws its seed
//! purely from `(base_seed, run_offset + i)`, so records are identical no
//! matter how many workers execute the batch or in which order. Every
//! recorded success has been extracted to a netlist and re-verified
//! exhaustively through the scalar simulation path; a success that fails
//! that check aborts the whole batch as an internal-consistency error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::netlist::{extract, verify_parity, Netlist};
use crate::parity::{ArityError, ParityProblem};
use crate::rng::{rng_from_seed, run_seed, GENERATOR_NAME, SEED_MIX_NAME};
use crate::search::{steady_state_search, ParamError, SearchParams};

/// Environment variable capping the worker count (0 or unset = auto).
pub const THREADS_ENV: &str = "REVSYNTH_THREADS";

/// Header of the per-run CSV emitted next to each JSON report.
pub const CSV_HEADER: &str = "run,seed,success,generations,gates";

/// Header of the per-problem summary CSV emitted by `stats`.
pub const STATS_CSV_HEADER: &str = "problem,popsize,generations,code_len,success_rate,min_gates";

/// One experiment batch: a parity instance, the search parameters, and
/// the seeding/reporting scheme.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Parity arity.
    pub k: u32,
    pub population_size: usize,
    pub generations: usize,
    /// Fredkin genes per chromosome after the fixed terminal prefix.
    pub code_len: usize,
    #[serde(default = "default_mutation_prob")]
    pub mutation_prob: f64,
    #[serde(default = "default_crossover_prob")]
    pub crossover_prob: f64,
    #[serde(default = "default_tournament_frac")]
    pub tournament_frac: f64,
    /// Number of independent runs in this batch.
    pub runs: usize,
    pub base_seed: u64,
    /// Global index of the first run; lets a batch be sharded into
    /// several reports that merge back to the unsharded seed set.
    #[serde(default)]
    pub run_offset: usize,
    /// Where to write `report.json`, `report.csv`, and netlists; nothing
    /// is written when unset.
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
    /// Also write one `run-<i>.netlist` file per successful run.
    #[serde(default)]
    pub emit_netlists: bool,
}

fn default_mutation_prob() -> f64 {
    0.2
}

fn default_crossover_prob() -> f64 {
    0.9
}

fn default_tournament_frac() -> f64 {
    0.01
}

impl ExperimentConfig {
    pub fn search_params(&self, seed: u64) -> SearchParams {
        SearchParams {
            population_size: self.population_size,
            generations: self.generations,
            code_len: self.code_len,
            mutation_prob: self.mutation_prob,
            crossover_prob: self.crossover_prob,
            tournament_frac: self.tournament_frac,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        ParityProblem::new(self.k)?;
        self.search_params(0).validate()?;
        if self.runs < 1 {
            return Err(ExperimentError::NoRuns);
        }
        Ok(())
    }

    /// Fields that must agree for two reports to be merged.
    fn shape(&self) -> (u32, usize, usize, usize, u64, u64, u64) {
        (
            self.k,
            self.population_size,
            self.generations,
            self.code_len,
            self.mutation_prob.to_bits(),
            self.crossover_prob.to_bits(),
            self.tournament_frac.to_bits(),
        )
    }
}

/// Outcome of one run within a batch.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunRecord {
    /// Global run index (`run_offset + i`).
    pub run: usize,
    pub seed: u64,
    pub success: bool,
    pub generations: usize,
    /// Extracted gate count; present exactly for successes.
    pub gates: Option<usize>,
}

/// Aggregates recomputable from the per-run records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Aggregate {
    pub runs: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub min_gates: Option<usize>,
    pub median_gates: Option<f64>,
}

impl Aggregate {
    pub fn from_records(records: &[RunRecord]) -> Self {
        let runs = records.len();
        let mut gates: Vec<usize> = records.iter().filter_map(|r| r.gates).collect();
        gates.sort_unstable();
        let successes = records.iter().filter(|r| r.success).count();
        let median_gates = match gates.len() {
            0 => None,
            n if n % 2 == 1 => Some(gates[n / 2] as f64),
            n => Some((gates[n / 2 - 1] + gates[n / 2]) as f64 / 2.0),
        };
        Aggregate {
            runs,
            successes,
            success_rate: if runs == 0 { 0.0 } else { successes as f64 / runs as f64 },
            min_gates: gates.first().copied(),
            median_gates,
        }
    }
}

/// Reproducibility metadata carried by every report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub generator: String,
    pub seed_mix: String,
    /// How `code_len` is counted relative to the genome.
    pub code_len_semantics: String,
    pub version: String,
}

impl ReportMetadata {
    fn current() -> Self {
        ReportMetadata {
            generator: GENERATOR_NAME.to_string(),
            seed_mix: SEED_MIX_NAME.to_string(),
            code_len_semantics: "fredkin-genes-after-terminal-prefix".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// Full batch report. Everything except `wall_time_secs` is a pure
/// function of the config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub metadata: ReportMetadata,
    pub runs: Vec<RunRecord>,
    pub aggregate: Aggregate,
    pub wall_time_secs: f64,
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Arity(#[from] ArityError),
    #[error("invalid search parameters: {0}")]
    Params(#[from] ParamError),
    #[error("runs must be at least 1")]
    NoRuns,
    #[error(
        "internal consistency failure: run {run} (seed {seed:#018x}) reported success but its \
         extracted netlist failed exhaustive parity verification"
    )]
    InternalConsistency { run: usize, seed: u64 },
    #[error("failed to write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("failed to build worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

fn run_one(cfg: &ExperimentConfig, index: usize) -> Result<(RunRecord, Option<Netlist>), ExperimentError> {
    let problem = ParityProblem::new(cfg.k)?;
    let run = cfg.run_offset + index;
    let seed = run_seed(cfg.base_seed, run as u64);
    let params = cfg.search_params(seed);
    let mut rng = rng_from_seed(seed);
    let result = steady_state_search(&params, &problem, &mut rng);

    let mut netlist = None;
    let mut gates = None;
    if result.success {
        let n = extract(&result.best_chromosome, result.best_ref);
        if !verify_parity(&n) {
            return Err(ExperimentError::InternalConsistency { run, seed });
        }
        gates = Some(n.gate_count());
        netlist = Some(n);
    }
    Ok((
        RunRecord { run, seed, success: result.success, generations: result.generations_used, gates },
        netlist,
    ))
}

fn worker_count() -> usize {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .unwrap_or(0)
}

/// Execute a batch: `runs` independent searches with derived seeds,
/// optionally in parallel, each success re-verified through the scalar
/// simulator. Writes report files and netlists when `out_dir` is set.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    cfg.validate()?;
    let started = Instant::now();

    let run_all = || -> Result<Vec<(RunRecord, Option<Netlist>)>, ExperimentError> {
        (0..cfg.runs).into_par_iter().map(|i| run_one(cfg, i)).collect()
    };
    let outcomes = match worker_count() {
        0 => run_all()?,
        n => rayon::ThreadPoolBuilder::new().num_threads(n).build()?.install(run_all)?,
    };

    let mut records = Vec::with_capacity(outcomes.len());
    let mut netlists = Vec::new();
    for (record, netlist) in outcomes {
        if let Some(n) = netlist {
            netlists.push((record.run, n));
        }
        records.push(record);
    }

    let aggregate = Aggregate::from_records(&records);
    let report = ExperimentReport {
        config: cfg.clone(),
        metadata: ReportMetadata::current(),
        runs: records,
        aggregate,
        wall_time_secs: started.elapsed().as_secs_f64(),
    };

    if let Some(dir) = &cfg.out_dir {
        write_report_files(&report, &netlists, dir)?;
    }
    Ok(report)
}

fn write_file(path: &Path, contents: &str) -> Result<(), ExperimentError> {
    fs::write(path, contents)
        .map_err(|source| ExperimentError::Io { path: path.to_path_buf(), source })
}

fn write_report_files(
    report: &ExperimentReport,
    netlists: &[(usize, Netlist)],
    dir: &Path,
) -> Result<(), ExperimentError> {
    fs::create_dir_all(dir)
        .map_err(|source| ExperimentError::Io { path: dir.to_path_buf(), source })?;
    let json = serde_json::to_string_pretty(report).expect("report serialization cannot fail");
    write_file(&dir.join("report.json"), &(json + "\n"))?;
    write_file(&dir.join("report.csv"), &report_csv(report))?;
    if report.config.emit_netlists {
        for (run, netlist) in netlists {
            write_file(&dir.join(format!("run-{run}.netlist")), &netlist.to_string())?;
        }
    }
    Ok(())
}

/// Per-run CSV: `run,seed,success,generations,gates`, one row per run,
/// `gates` empty for failures. Wall time is deliberately absent, so two
/// equal-seeded batches produce byte-identical files.
pub fn report_csv(report: &ExperimentReport) -> String {
    let mut out = String::with_capacity(32 * (report.runs.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &report.runs {
        let _ = write!(out, "{},{},{},{},", r.run, r.seed, r.success, r.generations);
        if let Some(g) = r.gates {
            let _ = write!(out, "{g}");
        }
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Report merging (`stats`)
// ---------------------------------------------------------------------------

/// One merged summary row, shaped like a result-table line.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsRow {
    pub k: u32,
    pub population_size: usize,
    pub generations: usize,
    pub code_len: usize,
    pub aggregate: Aggregate,
}

impl StatsRow {
    pub fn problem_name(&self) -> String {
        format!("even-{}-parity", self.k)
    }
}

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("no reports given")]
    Empty,
    #[error("incompatible configs for even-{k}-parity: reports disagree on search parameters")]
    Incompatible { k: u32 },
}

/// Merge reports into one row per problem. Reports of the same arity
/// must share the full search-parameter shape; their records are
/// concatenated (ordered by global run index) and aggregates recomputed.
pub fn merge_reports(reports: &[ExperimentReport]) -> Result<Vec<StatsRow>, StatsError> {
    if reports.is_empty() {
        return Err(StatsError::Empty);
    }
    let mut groups: Vec<(&ExperimentReport, Vec<RunRecord>)> = Vec::new();
    for report in reports {
        match groups.iter_mut().find(|(first, _)| first.config.k == report.config.k) {
            Some((first, records)) => {
                if first.config.shape() != report.config.shape() {
                    return Err(StatsError::Incompatible { k: report.config.k });
                }
                records.extend(report.runs.iter().cloned());
            }
            None => groups.push((report, report.runs.clone())),
        }
    }
    groups.sort_by_key(|(first, _)| first.config.k);

    Ok(groups
        .into_iter()
        .map(|(first, mut records)| {
            records.sort_by_key(|r| r.run);
            StatsRow {
                k: first.config.k,
                population_size: first.config.population_size,
                generations: first.config.generations,
                code_len: first.config.code_len,
                aggregate: Aggregate::from_records(&records),
            }
        })
        .collect())
}

/// Summary CSV: `problem,popsize,generations,code_len,success_rate,min_gates`,
/// success rate as a percentage with one decimal, `min_gates` empty when
/// no run succeeded.
pub fn stats_csv(rows: &[StatsRow]) -> String {
    let mut out = String::new();
    out.push_str(STATS_CSV_HEADER);
    out.push('\n');
    for row in rows {
        let _ = write!(
            out,
            "{},{},{},{},{:.1},",
            row.problem_name(),
            row.population_size,
            row.generations,
            row.code_len,
            row.aggregate.success_rate * 100.0,
        );
        if let Some(g) = row.aggregate.min_gates {
            let _ = write!(out, "{g}");
        }
        out.push('\n');
    }
    out
}

/// Human-readable summary table for the same rows.
pub fn stats_table(rows: &[StatsRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<16} {:>8} {:>12} {:>9} {:>13} {:>9}",
        "problem", "popsize", "generations", "code_len", "success_rate", "min_gates"
    );
    for row in rows {
        let min_gates =
            row.aggregate.min_gates.map_or_else(|| "-".to_string(), |g| g.to_string());
        let _ = writeln!(
            out,
            "{:<16} {:>8} {:>12} {:>9} {:>12.1}% {:>9}",
            row.problem_name(),
            row.population_size,
            row.generations,
            row.code_len,
            row.aggregate.success_rate * 100.0,
            min_gates,
        );
    }
    out
}
