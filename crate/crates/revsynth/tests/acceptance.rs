//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with the measured numbers (run with `-- --nocapture` to see
//! them). The batch criteria reuse one shared run per problem so the
//! suite stays fast; every threshold is asserted in code.

mod common;

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use once_cell::sync::Lazy;

use revsynth::eval::evaluate;
use revsynth::experiment::{run_experiment, ExperimentConfig, ExperimentReport};
use revsynth::gate::{fredkin_apply, fredkin_permutation_table};
use revsynth::genome::random_chromosome;
use revsynth::netlist::{extract, simulate, verify_parity, Netlist};
use revsynth::parity::ParityProblem;
use revsynth::rng::rng_from_seed;

use common::{all_channel_refs, assignment_for_case, naive_channel_bit};

fn table3_config(k: u32, population_size: usize, generations: usize, code_len: usize, runs: usize) -> ExperimentConfig {
    ExperimentConfig {
        k,
        population_size,
        generations,
        code_len,
        mutation_prob: 0.2,
        crossover_prob: 0.9,
        tournament_frac: 0.01,
        runs,
        base_seed: 1,
        run_offset: 0,
        out_dir: None,
        emit_netlists: false,
    }
}

static EVEN3_REPORT: Lazy<ExperimentReport> =
    Lazy::new(|| run_experiment(&table3_config(3, 1000, 50, 10, 100)).expect("even-3 batch"));

static EVEN4_REPORT: Lazy<ExperimentReport> =
    Lazy::new(|| run_experiment(&table3_config(4, 1000, 50, 15, 100)).expect("even-4 batch"));

static EVEN5_REPORT: Lazy<ExperimentReport> =
    Lazy::new(|| run_experiment(&table3_config(5, 1000, 100, 20, 20)).expect("even-5 batch"));

#[test]
fn criterion_1_fredkin_gate_properties() {
    let started = Instant::now();
    let table = fredkin_permutation_table();
    assert_eq!(table.len(), 8);

    let mut outputs: Vec<_> = table.iter().map(|&(_, out)| out).collect();
    outputs.sort();
    outputs.dedup();
    assert_eq!(outputs.len(), 8, "the 8 output triples must be pairwise distinct");

    for &((a, b, c), (p, q, r)) in &table {
        let twice = fredkin_apply(p, q, r);
        assert_eq!((twice.p, twice.q, twice.r), (a, b, c), "double application must be identity");
        let ones_in = u8::from(a) + u8::from(b) + u8::from(c);
        let ones_out = u8::from(p) + u8::from(q) + u8::from(r);
        assert_eq!(ones_in, ones_out, "popcount must be conserved");
    }

    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed < 1.0, "criterion 1 took {elapsed:.3}s, limit 1s");
    println!("criterion 1: PASS - Fredkin bijectivity/involution/conservativity in {elapsed:.3}s");
}

#[test]
fn criterion_2_evaluation_oracle_equivalence() {
    let started = Instant::now();
    let mut rng = rng_from_seed(0xACCE_0002);
    let mut checked = 0usize;

    for &k in &[2u32, 3, 4] {
        let problem = ParityProblem::new(k).unwrap();
        let terminals = problem.terminal_signals();
        for _ in 0..170 {
            let code_len = 1 + (rand::Rng::gen_range(&mut rng, 0..15usize));
            let ch = random_chromosome(problem.terminal_count(), code_len, &mut rng);
            let ev = evaluate(&ch, &terminals);

            for r in all_channel_refs(&ch) {
                let column = ev.channel(r);
                let netlist = extract(&ch, r);
                for case in 0..problem.case_count() {
                    let expected = naive_channel_bit(&ch, r, &terminals, case);
                    assert_eq!(
                        column.bit(case),
                        expected,
                        "DP evaluation diverged from the naive oracle at {r:?}, case {case}"
                    );
                    let assignment = assignment_for_case(k, case);
                    assert_eq!(
                        simulate(&netlist, &assignment),
                        expected,
                        "extracted netlist diverged at {r:?}, case {case}"
                    );
                }
            }
            checked += 1;
        }
    }

    let elapsed = started.elapsed().as_secs_f64();
    assert!(checked >= 500, "need at least 500 chromosomes, got {checked}");
    assert!(elapsed < 30.0, "criterion 2 took {elapsed:.1}s, limit 30s");
    println!(
        "criterion 2: PASS - DP/naive/extraction agree on {checked} chromosomes in {elapsed:.1}s"
    );
}

#[test]
fn criterion_3_even3_success_rate() {
    let report = &*EVEN3_REPORT;
    let rate = report.aggregate.success_rate;
    assert!(rate >= 0.70, "even-3 success rate {rate:.2} below 0.70");
    assert!(
        report.wall_time_secs < 120.0,
        "even-3 batch took {:.1}s, limit 120s",
        report.wall_time_secs
    );
    println!(
        "criterion 3: PASS - even-3 success rate {:.2} over {} runs in {:.1}s",
        rate, report.aggregate.runs, report.wall_time_secs
    );
}

#[test]
fn criterion_4_even4_success_rate() {
    let report = &*EVEN4_REPORT;
    let rate = report.aggregate.success_rate;
    assert!(rate >= 0.10, "even-4 success rate {rate:.2} below 0.10");
    assert!(
        report.wall_time_secs < 300.0,
        "even-4 batch took {:.1}s, limit 300s",
        report.wall_time_secs
    );
    println!(
        "criterion 4: PASS - even-4 success rate {:.2} over {} runs in {:.1}s (min size {:?})",
        rate, report.aggregate.runs, report.wall_time_secs, report.aggregate.min_gates
    );
}

#[test]
fn criterion_5_even5_finds_a_solution() {
    let report = &*EVEN5_REPORT;
    let successes = report.aggregate.successes;
    assert!(successes >= 1, "even-5 found no solution in 20 runs");
    assert!(
        report.wall_time_secs < 600.0,
        "even-5 batch took {:.1}s, limit 600s",
        report.wall_time_secs
    );
    println!(
        "criterion 5: PASS - even-5 {}/{} successes in {:.1}s (min size {:?})",
        successes, report.aggregate.runs, report.wall_time_secs, report.aggregate.min_gates
    );
}

#[test]
fn criterion_6_even3_minimum_circuit_size() {
    let report = &*EVEN3_REPORT;
    let min = report
        .aggregate
        .min_gates
        .expect("criterion 3 guarantees successes to measure");
    assert!(min <= 4, "even-3 minimum extracted size {min} exceeds 4 gates");
    println!(
        "criterion 6: PASS - even-3 minimum extracted circuit size {min} gates (median {:?})",
        report.aggregate.median_gates
    );
}

#[test]
fn criterion_7_all_successes_verify() {
    // The runner itself aborts a batch if any reported success fails the
    // scalar re-verification, so the shared reports existing at all is
    // the primary evidence; re-check record consistency here.
    for report in [&*EVEN3_REPORT, &*EVEN4_REPORT, &*EVEN5_REPORT] {
        for record in &report.runs {
            assert_eq!(
                record.success,
                record.gates.is_some(),
                "run {} has a success/gate-count mismatch",
                record.run
            );
        }
    }

    // End to end on a fresh batch: every emitted netlist file re-parses
    // and passes exhaustive verification.
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = table3_config(3, 1000, 50, 10, 30);
    cfg.base_seed = 0xC7;
    cfg.out_dir = Some(dir.path().to_path_buf());
    cfg.emit_netlists = true;
    let report = run_experiment(&cfg).expect("verification batch");
    let successes: Vec<_> = report.runs.iter().filter(|r| r.success).collect();
    assert!(!successes.is_empty());
    for record in &successes {
        let text = std::fs::read_to_string(dir.path().join(format!("run-{}.netlist", record.run)))
            .expect("netlist file for success");
        let netlist: Netlist = text.parse().expect("emitted netlist must parse");
        assert!(verify_parity(&netlist), "emitted netlist for run {} fails", record.run);
        assert_eq!(netlist.gate_count(), record.gates.unwrap());
    }
    println!(
        "criterion 7: PASS - {}/{} successes verified exhaustively (plus {} emitted netlists re-checked)",
        successes.len(),
        report.aggregate.runs,
        successes.len()
    );
}

fn run_preset_evolve(out_dir: &Path, threads: &str) -> PathBuf {
    let preset = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../table3/even3.json");
    let status = Command::new(env!("CARGO_BIN_EXE_revsynth"))
        .arg("evolve")
        .arg("--config")
        .arg(&preset)
        .arg("--out")
        .arg(out_dir)
        .env("REVSYNTH_THREADS", threads)
        .status()
        .expect("spawn revsynth evolve");
    assert!(status.success(), "evolve exited with {status}");
    out_dir.join("report.csv")
}

#[test]
fn criterion_8_determinism_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let csv_one = run_preset_evolve(&dir.path().join("one"), "1");
    let csv_four = run_preset_evolve(&dir.path().join("four"), "4");
    let bytes_one = std::fs::read(&csv_one).unwrap();
    let bytes_four = std::fs::read(&csv_four).unwrap();
    assert_eq!(
        bytes_one, bytes_four,
        "per-run CSV must be byte-identical across REVSYNTH_THREADS settings"
    );

    // The JSON reports agree on everything except wall time.
    let load = |p: &Path| -> ExperimentReport {
        serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
    };
    let mut a = load(&dir.path().join("one/report.json"));
    let mut b = load(&dir.path().join("four/report.json"));
    a.wall_time_secs = 0.0;
    b.wall_time_secs = 0.0;
    a.config.out_dir = None;
    b.config.out_dir = None;
    assert_eq!(a, b);
    println!(
        "criterion 8: PASS - identical records for {} preset runs at 1 and 4 workers",
        a.aggregate.runs
    );
}
