//! End-to-end pipeline: solve instances with repeatable timing, price the
//! logged BFS phases with the cost model, and aggregate required gate
//! times.
//!
//! A solve is deterministic, so its phase structure is identical across
//! repetitions; only wall times vary. Each instance is therefore solved
//! once as a discarded warm-up and then `timing_repetitions` times, taking
//! the per-phase median BFS time. Any structural difference between
//! repetitions would mean the solver is nondeterministic and is a hard
//! error.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::clock::Clock;
use crate::dimacs::parse_dimacs;
use crate::graph::FlowNetwork;
use crate::maxflow::{dinic_max_flow, BfsPhaseRecord};
use crate::quantum_cost::{
    compare_threshold, cycles_per_iteration, failing_run_iterations, phase_gate_count,
    required_gate_time, ThresholdComparison, Verdict, DEFAULT_EPSILON,
    DEFAULT_GATE_TIME_THRESHOLD_SECONDS,
};

/// Which result series to emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Aggregation {
    PerPhase,
    PerInstance,
    Both,
}

impl Aggregation {
    pub fn includes_per_phase(self) -> bool {
        matches!(self, Aggregation::PerPhase | Aggregation::Both)
    }

    pub fn includes_per_instance(self) -> bool {
        matches!(self, Aggregation::PerInstance | Aggregation::Both)
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Timed solves per instance (after one discarded warm-up solve).
    pub timing_repetitions: usize,
    pub aggregation: Aggregation,
    /// Price the terminating BFS (sink unreached) too.
    pub include_terminal_bfs: bool,
    /// Additionally charge each priced phase one full failing schedule run
    /// — the search that certifies no further layer exists, which the
    /// default model prices at zero.
    pub strict_t0_cost: bool,
    pub epsilon: f64,
    /// Reference gate time in seconds for feasibility verdicts.
    pub threshold: f64,
    pub parallel_workers: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            timing_repetitions: 5,
            aggregation: Aggregation::Both,
            include_terminal_bfs: false,
            strict_t0_cost: false,
            epsilon: DEFAULT_EPSILON,
            threshold: DEFAULT_GATE_TIME_THRESHOLD_SECONDS,
            parallel_workers: 1,
            seed: 0,
        }
    }
}

/// Everything measured and derived for one instance. `per_phase_gates` and
/// `per_phase_tau` cover the priced phases only (all phases whose sink was
/// reached, plus the terminal phase when configured in).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceResult {
    pub instance_id: String,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub flow_value: u64,
    pub phases: Vec<BfsPhaseRecord>,
    pub per_phase_gates: Vec<f64>,
    pub per_phase_tau: Vec<Option<f64>>,
    pub total_bfs_time_ns: u64,
    pub total_gates: f64,
    pub aggregate_tau: Option<f64>,
    pub verdict: Option<ThresholdComparison>,
}

impl InstanceResult {
    /// Indices into `phases` of the priced phases, aligned with
    /// `per_phase_gates` / `per_phase_tau`.
    pub fn priced_phase_indices(&self) -> Vec<usize> {
        if self.per_phase_gates.len() == self.phases.len() {
            (0..self.phases.len()).collect()
        } else {
            self.phases
                .iter()
                .enumerate()
                .filter(|(_, p)| p.sink_reached)
                .map(|(i, _)| i)
                .collect()
        }
    }
}

#[derive(Debug)]
pub enum HarnessError {
    /// Repeated solves disagreed on flow value or phase structure.
    PhaseMisalignment {
        instance_id: String,
    },
    UnreadableDirectory {
        path: PathBuf,
        message: String,
    },
    AllInstancesFailed {
        attempted: usize,
    },
    EmptyResults,
}

impl fmt::Display for HarnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HarnessError::PhaseMisalignment { instance_id } => write!(
                f,
                "instance {}: phase structure differed between timing repetitions",
                instance_id
            ),
            HarnessError::UnreadableDirectory { path, message } => {
                write!(f, "cannot read directory {}: {}", path.display(), message)
            }
            HarnessError::AllInstancesFailed { attempted } => {
                write!(f, "all {} instances failed to parse or run", attempted)
            }
            HarnessError::EmptyResults => write!(f, "no results to summarize"),
        }
    }
}

impl std::error::Error for HarnessError {}

fn same_structure(a: &(u64, Vec<BfsPhaseRecord>), b: &(u64, Vec<BfsPhaseRecord>)) -> bool {
    a.0 == b.0
        && a.1.len() == b.1.len()
        && a.1.iter().zip(&b.1).all(|(x, y)| {
            x.phase_index == y.phase_index
                && x.total_vertices == y.total_vertices
                && x.layer_sizes == y.layer_sizes
                && x.sink_reached == y.sink_reached
                && x.sink_level == y.sink_level
        })
}

fn median_ns(samples: &mut [u64]) -> u64 {
    samples.sort_unstable();
    let n = samples.len();
    if n % 2 == 1 {
        samples[n / 2]
    } else {
        (samples[n / 2 - 1] + samples[n / 2]) / 2
    }
}

/// Solves one instance with repeated timing and prices its phases.
pub fn run_instance<C: Clock>(
    instance_id: &str,
    network: &FlowNetwork,
    config: &RunConfig,
    clock: &C,
) -> Result<InstanceResult, HarnessError> {
    let reps = config.timing_repetitions.max(1);
    let _ = dinic_max_flow(network, clock); // warm-up, discarded

    let mut runs = Vec::with_capacity(reps);
    for _ in 0..reps {
        let (flow, phases, _) = dinic_max_flow(network, clock);
        runs.push((flow, phases));
    }
    if !runs.iter().all(|r| same_structure(r, &runs[0])) {
        return Err(HarnessError::PhaseMisalignment {
            instance_id: instance_id.to_string(),
        });
    }

    let (flow_value, mut phases) = runs[0].clone();
    for (i, phase) in phases.iter_mut().enumerate() {
        let mut samples: Vec<u64> = runs.iter().map(|r| r.1[i].bfs_wall_time_ns).collect();
        phase.bfs_wall_time_ns = median_ns(&mut samples);
    }

    let strict_surcharge = if config.strict_t0_cost {
        let iterations = failing_run_iterations(network.vertex_count() as u64, config.epsilon)
            .expect("networks have at least 2 vertices");
        cycles_per_iteration(network.vertex_count() as u64).expect("vertex count >= 2") as f64
            * iterations
    } else {
        0.0
    };

    let mut per_phase_gates = Vec::new();
    let mut per_phase_tau = Vec::new();
    let mut total_bfs_time_ns = 0u64;
    for phase in &phases {
        if !phase.sink_reached && !config.include_terminal_bfs {
            continue;
        }
        let gates = phase_gate_count(phase) + strict_surcharge;
        per_phase_tau.push(required_gate_time(phase.bfs_wall_time_ns, gates));
        per_phase_gates.push(gates);
        total_bfs_time_ns += phase.bfs_wall_time_ns;
    }
    let total_gates: f64 = per_phase_gates.iter().sum();
    let aggregate_tau = required_gate_time(total_bfs_time_ns, total_gates);
    let verdict = aggregate_tau.map(|tau| compare_threshold(tau, config.threshold));

    Ok(InstanceResult {
        instance_id: instance_id.to_string(),
        vertex_count: network.vertex_count(),
        edge_count: network.edge_count(),
        flow_value,
        phases,
        per_phase_gates,
        per_phase_tau,
        total_bfs_time_ns,
        total_gates,
        aggregate_tau,
        verdict,
    })
}

/// Per-phase feasibility verdicts for the priced phases of a result.
pub fn per_phase_verdicts(
    result: &InstanceResult,
    threshold: f64,
) -> Vec<Option<ThresholdComparison>> {
    result
        .per_phase_tau
        .iter()
        .map(|tau| tau.map(|t| compare_threshold(t, threshold)))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SkippedInstance {
    pub file: String,
    pub error: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DirectoryReport {
    pub results: Vec<InstanceResult>,
    pub skipped: Vec<SkippedInstance>,
}

/// Minimal `*` / `?` glob matcher over file names.
pub fn glob_match(pattern: &str, name: &str) -> bool {
    fn rec(p: &[u8], n: &[u8]) -> bool {
        match p.split_first() {
            None => n.is_empty(),
            Some((b'*', rest)) => (0..=n.len()).any(|skip| rec(rest, &n[skip..])),
            Some((b'?', rest)) => !n.is_empty() && rec(rest, &n[1..]),
            Some((c, rest)) => n.first() == Some(c) && rec(rest, &n[1..]),
        }
    }
    rec(pattern.as_bytes(), name.as_bytes())
}

/// Runs every DIMACS file in `dir` whose name matches `pattern`.
///
/// Files are processed in lexicographic name order and distributed
/// round-robin over `parallel_workers` threads; results come back sorted by
/// instance id, so output is deterministic regardless of scheduling. Files
/// that fail to parse or run are skipped and reported.
pub fn run_directory<C: Clock + Sync>(
    dir: &Path,
    pattern: &str,
    config: &RunConfig,
    clock: &C,
) -> Result<DirectoryReport, HarnessError> {
    let entries = std::fs::read_dir(dir).map_err(|e| HarnessError::UnreadableDirectory {
        path: dir.to_path_buf(),
        message: e.to_string(),
    })?;
    let mut files: Vec<(String, PathBuf)> = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| HarnessError::UnreadableDirectory {
            path: dir.to_path_buf(),
            message: e.to_string(),
        })?;
        let path = entry.path();
        if !path.is_file() {
            continue;
        }
        let name = entry.file_name().to_string_lossy().into_owned();
        if glob_match(pattern, &name) {
            files.push((name, path));
        }
    }
    files.sort();

    let process = |name: &str, path: &Path| -> Result<InstanceResult, String> {
        let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
        let network = parse_dimacs(&text).map_err(|e| e.to_string())?;
        run_instance(name, &network, config, clock).map_err(|e| e.to_string())
    };

    let mut results = Vec::new();
    let mut skipped = Vec::new();
    if config.parallel_workers <= 1 {
        for (name, path) in &files {
            match process(name, path) {
                Ok(r) => results.push(r),
                Err(error) => skipped.push(SkippedInstance {
                    file: name.clone(),
                    error,
                }),
            }
        }
    } else {
        let workers = config.parallel_workers;
        let mut buckets: Vec<Vec<&(String, PathBuf)>> = vec![Vec::new(); workers];
        for (i, file) in files.iter().enumerate() {
            buckets[i % workers].push(file);
        }
        let outcomes = std::thread::scope(|scope| {
            let handles: Vec<_> = buckets
                .iter()
                .map(|bucket| {
                    scope.spawn(|| {
                        bucket
                            .iter()
                            .map(|(name, path)| (name.clone(), process(name, path)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("worker thread panicked"))
                .collect::<Vec<_>>()
        });
        for (name, outcome) in outcomes {
            match outcome {
                Ok(r) => results.push(r),
                Err(error) => skipped.push(SkippedInstance { file: name, error }),
            }
        }
    }
    results.sort_by(|a, b| a.instance_id.cmp(&b.instance_id));
    skipped.sort_by(|a, b| a.file.cmp(&b.file));

    if !files.is_empty() && results.is_empty() {
        return Err(HarnessError::AllInstancesFailed {
            attempted: files.len(),
        });
    }
    Ok(DirectoryReport { results, skipped })
}

/// Corpus-level digest: the numbers needed to restate a result set in one
/// paragraph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub instance_count: usize,
    /// Instances that produced an aggregate required gate time.
    pub measured_count: usize,
    pub min_tau: f64,
    pub max_tau: f64,
    pub median_tau: f64,
    pub infeasible_count: usize,
    pub feasible_count: usize,
    pub min_vertex_count: usize,
    pub max_vertex_count: usize,
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{} instances ({} with measurable gate time), {} to {} vertices",
            self.instance_count, self.measured_count, self.min_vertex_count, self.max_vertex_count
        )?;
        writeln!(
            f,
            "required gate time: min {:.3e} s, median {:.3e} s, max {:.3e} s",
            self.min_tau, self.median_tau, self.max_tau
        )?;
        write!(
            f,
            "verdicts: {} infeasible, {} feasible",
            self.infeasible_count, self.feasible_count
        )
    }
}

pub fn summarize(results: &[InstanceResult]) -> Result<Summary, HarnessError> {
    if results.is_empty() {
        return Err(HarnessError::EmptyResults);
    }
    let mut taus: Vec<f64> = results.iter().filter_map(|r| r.aggregate_tau).collect();
    taus.sort_by(|a, b| a.partial_cmp(b).expect("gate times are finite"));
    let (min_tau, max_tau, median_tau) = if taus.is_empty() {
        (f64::NAN, f64::NAN, f64::NAN)
    } else {
        let median = if taus.len() % 2 == 1 {
            taus[taus.len() / 2]
        } else {
            (taus[taus.len() / 2 - 1] + taus[taus.len() / 2]) / 2.0
        };
        (taus[0], *taus.last().expect("nonempty"), median)
    };
    let infeasible_count = results
        .iter()
        .filter(|r| matches!(r.verdict, Some(v) if v.verdict == Verdict::Infeasible))
        .count();
    let feasible_count = results
        .iter()
        .filter(|r| matches!(r.verdict, Some(v) if v.verdict == Verdict::Feasible))
        .count();
    Ok(Summary {
        instance_count: results.len(),
        measured_count: taus.len(),
        min_tau,
        max_tau,
        median_tau,
        infeasible_count,
        feasible_count,
        min_vertex_count: results
            .iter()
            .map(|r| r.vertex_count)
            .min()
            .expect("nonempty"),
        max_vertex_count: results
            .iter()
            .map(|r| r.vertex_count)
            .max()
            .expect("nonempty"),
    })
}
