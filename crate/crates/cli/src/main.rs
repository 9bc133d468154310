//! Command line front-end: solve instances, evaluate the search cost model,
//! cross-check it by simulation, batch-run directories, and render reports.
//!
//! Exit codes: 0 success, 1 partial or empty output, 2 usage or parse error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qmaxflow::harness::{run_directory, summarize, Aggregation, HarnessError, RunConfig};
use qmaxflow::maxflow::dinic_max_flow;
use qmaxflow::qsearch::mc_expected_iterations;
use qmaxflow::quantum_cost::{
    cycles_per_iteration, expected_iterations_all, expected_iterations_one, gate_count,
    DEFAULT_EPSILON, DEFAULT_GATE_TIME_THRESHOLD_SECONDS,
};
use qmaxflow::report::svg::{emit_svg_scatter_series, ScatterSeries, SvgError};
use qmaxflow::report::{parse_jsonl, render_csv, render_jsonl, write_atomic};
use qmaxflow::MonotonicClock;

#[derive(Parser)]
#[command(
    name = "qmaxflow",
    version,
    about = "Max-flow benchmarking with a quantum-search BFS cost model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AggregationArg {
    PerPhase,
    PerInstance,
    Both,
}

impl From<AggregationArg> for Aggregation {
    fn from(a: AggregationArg) -> Aggregation {
        match a {
            AggregationArg::PerPhase => Aggregation::PerPhase,
            AggregationArg::PerInstance => Aggregation::PerInstance,
            AggregationArg::Both => Aggregation::Both,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve a DIMACS max-flow file and print the flow value and phase table
    Solve { file: PathBuf },
    /// Evaluate the closed-form search cost model for one (list, marked) pair
    Estimate {
        #[arg(long)]
        list_size: u64,
        #[arg(long)]
        marked: u64,
        /// Emit machine-readable JSON instead of the table
        #[arg(long)]
        json: bool,
    },
    /// Monte Carlo estimate of the expected search iterations, compared
    /// against the closed form
    Simulate {
        #[arg(long)]
        list_size: u64,
        #[arg(long)]
        marked: u64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
    },
    /// Run every matching DIMACS file in a directory and write results.csv,
    /// results.jsonl, and a summary
    Bench {
        dir: PathBuf,
        /// File name pattern (supports `*` and `?`)
        #[arg(long, default_value = "*")]
        pattern: String,
        #[arg(long, env = "QMAXFLOW_WORKERS", default_value_t = 1)]
        workers: usize,
        /// Timed solve repetitions per instance
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, value_enum, default_value_t = AggregationArg::Both)]
        aggregation: AggregationArg,
        /// Also price the terminating BFS of each solve
        #[arg(long)]
        include_terminal_bfs: bool,
        /// Charge each priced phase one full failing search run
        #[arg(long)]
        strict_t0: bool,
        /// Reference gate time in seconds for feasibility verdicts
        #[arg(long, default_value_t = DEFAULT_GATE_TIME_THRESHOLD_SECONDS)]
        threshold: f64,
        #[arg(long, default_value_t = DEFAULT_EPSILON)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory for results.csv and results.jsonl
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Render an SVG scatter of required gate times from a results JSONL file
    Report {
        results: PathBuf,
        #[arg(long)]
        svg: PathBuf,
        #[arg(long, default_value_t = DEFAULT_GATE_TIME_THRESHOLD_SECONDS)]
        threshold: f64,
        /// Plot one point per priced phase instead of per instance
        #[arg(long)]
        per_phase: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve { file } => cmd_solve(&file),
        Command::Estimate {
            list_size,
            marked,
            json,
        } => cmd_estimate(list_size, marked, json),
        Command::Simulate {
            list_size,
            marked,
            trials,
            seed,
            epsilon,
        } => cmd_simulate(list_size, marked, trials, seed, epsilon),
        Command::Bench {
            dir,
            pattern,
            workers,
            reps,
            aggregation,
            include_terminal_bfs,
            strict_t0,
            threshold,
            epsilon,
            seed,
            out,
        } => {
            let config = RunConfig {
                timing_repetitions: reps,
                aggregation: aggregation.into(),
                include_terminal_bfs,
                strict_t0_cost: strict_t0,
                epsilon,
                threshold,
                parallel_workers: workers.max(1),
                seed,
            };
            cmd_bench(&dir, &pattern, &config, &out)
        }
        Command::Report {
            results,
            svg,
            threshold,
            per_phase,
        } => cmd_report(&results, &svg, threshold, per_phase),
    }
}

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {}", message);
    ExitCode::from(2)
}

fn cmd_solve(file: &Path) -> ExitCode {
    let text = match std::fs::read_to_string(file) {
        Ok(t) => t,
        Err(e) => return usage_error(format!("{}: {}", file.display(), e)),
    };
    let network = match qmaxflow::dimacs::parse_dimacs(&text) {
        Ok(n) => n,
        Err(e) => return usage_error(format!("{}: {}", file.display(), e)),
    };
    let clock = MonotonicClock::new();
    let (flow, phases, _) = dinic_max_flow(&network, &clock);
    println!("max flow = {}", flow);
    println!();
    println!("phase  |L|    layers  sink level  bfs time (ns)  layer sizes");
    for phase in &phases {
        let sink_level = phase
            .sink_level
            .map(|l| l.to_string())
            .unwrap_or_else(|| "-".to_string());
        let sizes = phase
            .layer_sizes
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        println!(
            "{:<6} {:<6} {:<7} {:<11} {:<14} {}",
            phase.phase_index,
            phase.total_vertices,
            phase.layer_sizes.len(),
            sink_level,
            phase.bfs_wall_time_ns,
            sizes
        );
    }
    ExitCode::SUCCESS
}

fn cmd_estimate(list_size: u64, marked: u64, json: bool) -> ExitCode {
    if list_size < 2 {
        return usage_error("--list-size must be at least 2");
    }
    if marked > list_size {
        return usage_error("--marked cannot exceed --list-size");
    }
    let n_q = if marked >= 1 {
        Some(expected_iterations_one(list_size, marked).expect("domain checked"))
    } else {
        None
    };
    let n_q_all = expected_iterations_all(list_size, marked).expect("domain checked");
    let gates = gate_count(list_size, marked).expect("domain checked");
    let cycles = cycles_per_iteration(list_size).expect("domain checked");
    if json {
        let value = serde_json::json!({
            "list_size": list_size,
            "marked": marked,
            "expected_iterations_one": n_q,
            "expected_iterations_all": n_q_all,
            "cycles_per_iteration": cycles,
            "gate_count": gates,
        });
        println!("{}", value);
    } else {
        println!("list size        {}", list_size);
        println!("marked           {}", marked);
        match n_q {
            Some(v) => println!("n_Q              {:.6}", v),
            None => println!("n_Q              -"),
        }
        println!("N_Q              {:.6}", n_q_all);
        println!("cycles/iteration {}", cycles);
        println!("G_Q              {:.6}", gates);
    }
    ExitCode::SUCCESS
}

fn cmd_simulate(list_size: u64, marked: u64, trials: u64, seed: u64, epsilon: f64) -> ExitCode {
    if trials < 1_000 {
        return usage_error("--trials must be at least 1000");
    }
    if marked < 1 {
        return usage_error("--marked must be at least 1 for simulation");
    }
    let closed = match expected_iterations_one(list_size, marked) {
        Ok(v) => v,
        Err(e) => return usage_error(e),
    };
    let (mean, stderr) = match mc_expected_iterations(list_size, marked, epsilon, trials, seed) {
        Ok(v) => v,
        Err(e) => return usage_error(e),
    };
    let deviation = (mean - closed).abs() / closed;
    println!("trials           {}", trials);
    println!("seed             {}", seed);
    println!("monte carlo      {:.6} +- {:.6}", mean, stderr);
    println!("closed form      {:.6}", closed);
    println!("deviation        {:.3}%", deviation * 100.0);
    ExitCode::SUCCESS
}

fn cmd_bench(dir: &Path, pattern: &str, config: &RunConfig, out: &Path) -> ExitCode {
    let clock = MonotonicClock::new();
    let report = match run_directory(dir, pattern, config, &clock) {
        Ok(r) => r,
        Err(e @ HarnessError::UnreadableDirectory { .. }) => return usage_error(e),
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(1);
        }
    };
    if let Err(e) = std::fs::create_dir_all(out) {
        return usage_error(format!("{}: {}", out.display(), e));
    }
    let csv = render_csv(&report.results, config.aggregation, config.threshold);
    let jsonl = render_jsonl(&report.results);
    let csv_path = out.join("results.csv");
    let jsonl_path = out.join("results.jsonl");
    if let Err(e) = write_atomic(&csv_path, &csv).and_then(|_| write_atomic(&jsonl_path, &jsonl)) {
        return usage_error(format!("writing results: {}", e));
    }

    for skip in &report.skipped {
        eprintln!("warning: skipped {}: {}", skip.file, skip.error);
    }
    println!("wrote {} and {}", csv_path.display(), jsonl_path.display());
    println!(
        "config: reps={} workers={} threshold={:e} epsilon={} seed={}",
        config.timing_repetitions,
        config.parallel_workers,
        config.threshold,
        config.epsilon,
        config.seed
    );
    match summarize(&report.results) {
        Ok(summary) => println!("{}", summary),
        Err(_) => eprintln!("warning: no instances processed"),
    }
    if report.results.is_empty() || !report.skipped.is_empty() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_report(results_path: &Path, svg_path: &Path, threshold: f64, per_phase: bool) -> ExitCode {
    let text = match std::fs::read_to_string(results_path) {
        Ok(t) => t,
        Err(e) => return usage_error(format!("{}: {}", results_path.display(), e)),
    };
    let results = match parse_jsonl(&text) {
        Ok(r) => r,
        Err(e) => return usage_error(format!("{}: {}", results_path.display(), e)),
    };
    let series = if per_phase {
        ScatterSeries::PerPhase
    } else {
        ScatterSeries::Aggregate
    };
    let svg = match emit_svg_scatter_series(&results, threshold, series) {
        Ok(s) => s,
        Err(e @ SvgError::NoPlottablePoints) => {
            eprintln!("error: {}", e);
            return ExitCode::from(1);
        }
    };
    if let Err(e) = write_atomic(svg_path, &svg) {
        return usage_error(format!("{}: {}", svg_path.display(), e));
    }
    println!("wrote {}", svg_path.display());
    ExitCode::SUCCESS
}
