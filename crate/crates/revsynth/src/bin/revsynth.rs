//! Command-line front-end: seeded experiment batches, netlist
//! verification, and report aggregation.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use revsynth::experiment::{
    merge_reports, run_experiment, stats_csv, stats_table, ExperimentConfig, ExperimentError,
    ExperimentReport,
};
use revsynth::netlist::{fanout_analysis, parity_mismatches, Netlist};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "revsynth",
    version,
    about = "Evolve and verify reversible Fredkin-gate circuits for even-parity functions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded batch of evolutionary searches and report the results
    Evolve(EvolveArgs),
    /// Check a netlist file exhaustively against even-k-parity
    Verify(VerifyArgs),
    /// Merge experiment reports into per-problem summary rows
    Stats(StatsArgs),
}

#[derive(Args)]
struct EvolveArgs {
    /// JSON experiment config; the flags below override its values
    #[arg(long)]
    config: Option<PathBuf>,
    /// Parity arity (required unless --config is given)
    #[arg(long)]
    k: Option<u32>,
    /// Population size
    #[arg(long = "pop")]
    population_size: Option<usize>,
    /// Generation budget per run
    #[arg(long = "gens")]
    generations: Option<usize>,
    /// Fredkin genes per chromosome after the terminal prefix
    #[arg(long = "len")]
    code_len: Option<usize>,
    /// Number of independent runs
    #[arg(long)]
    runs: Option<usize>,
    /// Base seed of the batch
    #[arg(long)]
    seed: Option<u64>,
    /// Directory for report.json, report.csv, and netlists
    #[arg(long = "out")]
    out_dir: Option<PathBuf>,
    /// Per-gene mutation probability
    #[arg(long)]
    mutation: Option<f64>,
    /// Crossover probability per parent pair
    #[arg(long)]
    crossover: Option<f64>,
    /// Tournament size as a fraction of the population
    #[arg(long)]
    tournament: Option<f64>,
    /// Global index of the first run (for sharding a batch)
    #[arg(long)]
    run_offset: Option<usize>,
    /// Write one run-<i>.netlist file per successful run
    #[arg(long)]
    emit_netlists: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Netlist file in the revsynth-netlist v1 format
    path: PathBuf,
    /// Reinterpret the circuit at this arity instead of the header's
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Args)]
struct StatsArgs {
    /// Report JSON files produced by `evolve`
    #[arg(required = true)]
    reports: Vec<PathBuf>,
    /// Also write the summary rows as CSV to this path
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Evolve(args) => cmd_evolve(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Stats(args) => match cmd_stats(&args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(EXIT_USAGE)
            }
        },
    }
}

fn build_config(args: &EvolveArgs) -> Result<ExperimentConfig> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            serde_json::from_str::<ExperimentConfig>(&text)
                .with_context(|| format!("parsing config {}", path.display()))?
        }
        None => {
            let Some(k) = args.k else {
                bail!("either --config or --k is required");
            };
            ExperimentConfig {
                k,
                population_size: 1000,
                generations: 50,
                code_len: 10,
                mutation_prob: 0.2,
                crossover_prob: 0.9,
                tournament_frac: 0.01,
                runs: 100,
                base_seed: 1,
                run_offset: 0,
                out_dir: None,
                emit_netlists: false,
            }
        }
    };

    if let Some(k) = args.k {
        cfg.k = k;
    }
    if let Some(v) = args.population_size {
        cfg.population_size = v;
    }
    if let Some(v) = args.generations {
        cfg.generations = v;
    }
    if let Some(v) = args.code_len {
        cfg.code_len = v;
    }
    if let Some(v) = args.runs {
        cfg.runs = v;
    }
    if let Some(v) = args.seed {
        cfg.base_seed = v;
    }
    if let Some(v) = &args.out_dir {
        cfg.out_dir = Some(v.clone());
    }
    if let Some(v) = args.mutation {
        cfg.mutation_prob = v;
    }
    if let Some(v) = args.crossover {
        cfg.crossover_prob = v;
    }
    if let Some(v) = args.tournament {
        cfg.tournament_frac = v;
    }
    if let Some(v) = args.run_offset {
        cfg.run_offset = v;
    }
    if args.emit_netlists {
        cfg.emit_netlists = true;
    }
    Ok(cfg)
}

fn cmd_evolve(args: &EvolveArgs) -> ExitCode {
    let cfg = match build_config(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    match run_experiment(&cfg) {
        Ok(report) => {
            print_report_summary(&report);
            ExitCode::SUCCESS
        }
        Err(e @ ExperimentError::InternalConsistency { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_FAIL)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn print_report_summary(report: &ExperimentReport) {
    let agg = &report.aggregate;
    println!(
        "even-{}-parity: {}/{} runs succeeded ({:.1}%) in {:.1}s",
        report.config.k,
        agg.successes,
        agg.runs,
        agg.success_rate * 100.0,
        report.wall_time_secs,
    );
    match (agg.min_gates, agg.median_gates) {
        (Some(min), Some(median)) => {
            println!("circuit size: min {min} gates, median {median} gates");
        }
        _ => println!("circuit size: no successful runs"),
    }
    if let Ok(rows) = merge_reports(std::slice::from_ref(report)) {
        print!("{}", stats_table(&rows));
    }
    if let Some(dir) = &report.config.out_dir {
        println!("report written to {}", dir.join("report.json").display());
    }
}

fn cmd_verify(args: &VerifyArgs) -> ExitCode {
    let text = match fs::read_to_string(&args.path) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.path.display());
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let netlist = match text.parse::<Netlist>() {
        Ok(n) => n,
        Err(e) => {
            eprintln!("parse error in {}: {e}", args.path.display());
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let netlist = match args.k {
        Some(k) => match netlist.with_arity(k) {
            Ok(n) => n,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(EXIT_USAGE);
            }
        },
        None => netlist,
    };

    let mismatches = parity_mismatches(&netlist);
    if mismatches == 0 {
        println!(
            "PASS: circuit computes even-{}-parity on all {} cases",
            netlist.k(),
            netlist.case_count()
        );
    } else {
        println!(
            "FAIL: {mismatches} of {} cases disagree with even-{}-parity",
            netlist.case_count(),
            netlist.k()
        );
    }
    println!("gates: {}", netlist.gate_count());
    let fanout = fanout_analysis(&netlist);
    println!("max fanout: {}", fanout.max_fanout);
    for (source, count) in &fanout.counts {
        println!("  {source} -> {count}");
    }
    if mismatches == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn cmd_stats(args: &StatsArgs) -> Result<()> {
    let mut reports = Vec::with_capacity(args.reports.len());
    for path in &args.reports {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading report {}", path.display()))?;
        let report: ExperimentReport = serde_json::from_str(&text)
            .with_context(|| format!("parsing report {}", path.display()))?;
        reports.push(report);
    }
    let rows = merge_reports(&reports)?;
    print!("{}", stats_table(&rows));
    if let Some(path) = &args.csv {
        fs::write(path, stats_csv(&rows))
            .with_context(|| format!("writing {}", path.display()))?;
        println!("summary CSV written to {}", path.display());
    }
    Ok(())
}
