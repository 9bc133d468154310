//! Closed-form cost model for Grover-search-based BFS.
//!
//! For a list of `|L|` items containing `t` marked ones, the exponential
//! search schedule draws the iteration count of attempt `k` uniformly from
//! `{0, ..., m_k}` with `m_k = floor(min(lambda^k, sqrt(|L|)))` and
//! `lambda = 6/5`. The expected number of Grover iterations to find one
//! marked item is
//!
//! ```text
//! n_q(|L|, t) = sum_{k=1}^{k_max} (m_k / 2) * prod_{l<k} fail(m_l, theta)
//! ```
//!
//! where `sin^2(theta) = t / |L|` and `fail(m, theta)` is one minus the
//! mean success probability of a uniformly drawn attempt. Finding all `t`
//! items removes each found item from the list, telescoping into
//! `n_q_all(|L|, t) = sum_i n_q(|L| - i, t - i)`. One Grover iteration
//! costs `2|L|` cycles, one cycle is priced as one gate, so the expected
//! gate count is `2|L| * n_q_all`.
//!
//! Everything here is pure 64-bit float arithmetic over exact integer
//! schedules; the Monte Carlo simulator in [`crate::qsearch`] is the
//! independent oracle for these formulas.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::maxflow::BfsPhaseRecord;

/// Growth factor of the search schedule.
pub const LAMBDA: f64 = 1.2;

/// Default failure-budget parameter for the schedule's outer rounds.
pub const DEFAULT_EPSILON: f64 = 0.1;

/// Fastest demonstrated quantum gate operation time, in seconds; the
/// feasibility reference for required gate times.
pub const DEFAULT_GATE_TIME_THRESHOLD_SECONDS: f64 = 6.5e-9;

/// Oscillatory corrections below this magnitude are indistinguishable from
/// f64 evaluation noise and are flushed to zero, so e.g. the half-marked
/// case returns exactly one half.
const CORRECTION_NOISE_FLOOR: f64 = 1e-12;

/// Threshold below which `sin(2 theta)` is treated as a removable
/// singularity and the direct per-term average is used instead.
const DEGENERATE_SIN_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum CostError {
    ListTooSmall { list_size: u64 },
    MarkedOutOfRange { marked: u64, list_size: u64 },
    MarkedZero,
    InvalidEpsilon { epsilon: f64 },
}

impl fmt::Display for CostError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CostError::ListTooSmall { list_size } => {
                write!(f, "list size {} is below the minimum of 2", list_size)
            }
            CostError::MarkedOutOfRange { marked, list_size } => {
                write!(f, "marked count {} exceeds list size {}", marked, list_size)
            }
            CostError::MarkedZero => write!(f, "marked count must be at least 1"),
            CostError::InvalidEpsilon { epsilon } => {
                write!(f, "epsilon {} is outside (0, 1)", epsilon)
            }
        }
    }
}

impl std::error::Error for CostError {}

/// Schedule parameters for one search instance.
#[derive(Debug, Clone, PartialEq)]
pub struct QSearchParams {
    pub lambda: f64,
    pub epsilon: f64,
    pub list_size: u64,
    pub marked: u64,
    /// Grover angle, `sin^2(theta) = marked / list_size`.
    pub theta: f64,
    pub s_max: u32,
    pub k_max: u32,
}

impl QSearchParams {
    pub fn new(list_size: u64, marked: u64, epsilon: f64) -> Result<Self, CostError> {
        if list_size < 2 {
            return Err(CostError::ListTooSmall { list_size });
        }
        if marked > list_size {
            return Err(CostError::MarkedOutOfRange { marked, list_size });
        }
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(CostError::InvalidEpsilon { epsilon });
        }
        Ok(QSearchParams {
            lambda: LAMBDA,
            epsilon,
            list_size,
            marked,
            theta: grover_angle(list_size, marked),
            s_max: s_max(epsilon),
            k_max: k_max(list_size)?,
        })
    }
}

/// `theta` with `sin^2(theta) = marked / list_size`.
pub fn grover_angle(list_size: u64, marked: u64) -> f64 {
    (marked as f64 / list_size as f64).sqrt().asin()
}

/// Number of outer schedule rounds, `ceil(log_3(1 / epsilon))`, at least 1.
pub fn s_max(epsilon: f64) -> u32 {
    (((1.0 / epsilon).ln() / 3f64.ln()).ceil() as u32).max(1)
}

/// Attempt budget of the schedule:
/// `ceil(log_lambda(|L| / (2 sqrt(|L| - 1)))) + 4`.
pub fn k_max(list_size: u64) -> Result<u32, CostError> {
    if list_size < 2 {
        return Err(CostError::ListTooSmall { list_size });
    }
    let l = list_size as f64;
    let arg = l / (2.0 * (l - 1.0).sqrt());
    let k_star = (arg.ln() / LAMBDA.ln()).ceil().max(0.0) as u32;
    Ok(k_star + 4)
}

/// Iteration cap of attempt `k`: `floor(min(lambda^k, sqrt(|L|)))`.
///
/// Evaluated in exact integer arithmetic (`6^k / 5^k`) for every `k` the
/// schedule can reach, so the simulator and the closed form share
/// bit-identical schedules.
pub fn m_k(list_size: u64, k: u32) -> u64 {
    debug_assert!(k >= 1);
    let root = list_size.isqrt();
    if k <= 45 {
        // 6^45 and 5^45 both fit u128.
        let pow = 6u128.pow(k) / 5u128.pow(k);
        (pow as u64).min(root)
    } else {
        // lambda^46 > 4400; beyond any sqrt cap this crate meets.
        let pow = LAMBDA.powi(k as i32);
        if pow >= root as f64 {
            root
        } else {
            pow.floor() as u64
        }
    }
}

/// Mean success probability of one attempt whose iteration count is drawn
/// uniformly from `{0, ..., m}`: the average of `sin^2((2j + 1) theta)`.
///
/// Uses the closed form `1/2 - sin(4(m+1) theta) / (4(m+1) sin(2 theta))`
/// away from the `sin(2 theta) = 0` singularity and the direct sum at it.
/// The result is clamped to `[0, 1]`.
pub fn avg_success_probability(m: u64, theta: f64) -> f64 {
    let sin_2t = (2.0 * theta).sin();
    if sin_2t.abs() < DEGENERATE_SIN_THRESHOLD {
        let terms = m + 1;
        let sum: f64 = (0..terms)
            .map(|j| {
                let s = ((2 * j + 1) as f64 * theta).sin();
                s * s
            })
            .sum();
        return (sum / terms as f64).clamp(0.0, 1.0);
    }
    let scale = 4.0 * (m + 1) as f64;
    let correction = (scale * theta).sin() / (scale * sin_2t);
    if correction.abs() < CORRECTION_NOISE_FLOOR {
        return 0.5;
    }
    (0.5 - correction).clamp(0.0, 1.0)
}

/// `n_q` with the attempt budget clamped to 4 when the list is too small
/// for the budget formula; returns the clamp flag alongside the value.
fn expected_iterations_one_inner(list_size: u64, marked: u64) -> (f64, bool) {
    let (budget, clamped) = match k_max(list_size) {
        Ok(k) => (k, false),
        Err(_) => (4, true),
    };
    let theta = grover_angle(list_size, marked);
    let mut total = 0.0;
    let mut survival = 1.0; // probability every earlier attempt failed
    for k in 1..=budget {
        let m = m_k(list_size, k);
        total += m as f64 / 2.0 * survival;
        survival *= 1.0 - avg_success_probability(m, theta);
    }
    (total, clamped)
}

/// Expected Grover iterations for one successful search over `list_size`
/// items of which `marked >= 1` are marked.
pub fn expected_iterations_one(list_size: u64, marked: u64) -> Result<f64, CostError> {
    if list_size < 2 {
        return Err(CostError::ListTooSmall { list_size });
    }
    if marked == 0 {
        return Err(CostError::MarkedZero);
    }
    if marked > list_size {
        return Err(CostError::MarkedOutOfRange { marked, list_size });
    }
    Ok(expected_iterations_one_inner(list_size, marked).0)
}

/// Detailed result of [`expected_iterations_all`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationsAll {
    pub value: f64,
    /// Number of telescoped summands whose list size fell below 2 and were
    /// evaluated with the attempt budget clamped to 4.
    pub clamped_summands: u32,
}

/// Expected Grover iterations to find all `marked` items: each find removes
/// the item, so the total telescopes over `(|L| - i, t - i)`.
pub fn expected_iterations_all_detailed(
    list_size: u64,
    marked: u64,
) -> Result<IterationsAll, CostError> {
    if list_size < 2 {
        return Err(CostError::ListTooSmall { list_size });
    }
    if marked > list_size {
        return Err(CostError::MarkedOutOfRange { marked, list_size });
    }
    let mut value = 0.0;
    let mut clamped_summands = 0;
    for i in 0..marked {
        let (term, clamped) = expected_iterations_one_inner(list_size - i, marked - i);
        value += term;
        if clamped {
            clamped_summands += 1;
        }
    }
    Ok(IterationsAll {
        value,
        clamped_summands,
    })
}

pub fn expected_iterations_all(list_size: u64, marked: u64) -> Result<f64, CostError> {
    expected_iterations_all_detailed(list_size, marked).map(|r| r.value)
}

/// Cycle breakdown of a single Grover iteration over `|L|` items, one qubit
/// per item: the phase oracle, a Hadamard layer on every qubit, the
/// multi-controlled Z decomposed into CNOT chains plus one CZ, and the
/// closing Hadamard layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CycleModel {
    pub oracle_cycles: u64,
    pub hadamard_cycles: u64,
    pub multicontrolled_z_cycles: u64,
}

impl CycleModel {
    pub fn new(list_size: u64) -> Result<Self, CostError> {
        if list_size < 2 {
            return Err(CostError::ListTooSmall { list_size });
        }
        Ok(CycleModel {
            oracle_cycles: 1,
            hadamard_cycles: 2,
            multicontrolled_z_cycles: 2 * list_size - 3,
        })
    }

    pub fn total(&self) -> u64 {
        self.oracle_cycles + self.hadamard_cycles + self.multicontrolled_z_cycles
    }
}

/// Cycles per Grover iteration: exactly `2 |L|`.
pub fn cycles_per_iteration(list_size: u64) -> Result<u64, CostError> {
    CycleModel::new(list_size).map(|m| m.total())
}

/// Expected gate count to find all `marked` items: cycles per iteration
/// times expected iterations, under the one-cycle-one-gate assumption.
/// That assumption is applied here and nowhere else.
pub fn gate_count(list_size: u64, marked: u64) -> Result<f64, CostError> {
    let cycles = cycles_per_iteration(list_size)? as f64;
    Ok(cycles * expected_iterations_all(list_size, marked)?)
}

/// Total expected gate count of one BFS phase: each layer of `t` vertices
/// is one find-all search over the phase's full vertex count.
pub fn phase_gate_count(record: &BfsPhaseRecord) -> f64 {
    debug_assert!(record.total_vertices >= 2);
    record
        .layer_sizes
        .iter()
        .map(|&t| {
            gate_count(record.total_vertices as u64, t as u64)
                .expect("layer sizes are within the phase's vertex count")
        })
        .sum()
}

/// Per-layer and aggregate cost breakdown of one BFS phase.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CostEstimate {
    pub n_q_per_layer: Vec<f64>,
    pub n_q_all_per_layer: Vec<f64>,
    pub gates_per_layer: Vec<f64>,
    pub total_gates: f64,
    pub has_clamped_summands: bool,
}

impl CostEstimate {
    pub fn for_phase(record: &BfsPhaseRecord) -> CostEstimate {
        let list = record.total_vertices as u64;
        let mut n_q_per_layer = Vec::with_capacity(record.layer_sizes.len());
        let mut n_q_all_per_layer = Vec::with_capacity(record.layer_sizes.len());
        let mut gates_per_layer = Vec::with_capacity(record.layer_sizes.len());
        let mut has_clamped_summands = false;
        let cycles = cycles_per_iteration(list).expect("phase has at least 2 vertices") as f64;
        for &t in &record.layer_sizes {
            let one = expected_iterations_one(list, t as u64).expect("layer size in range");
            let all =
                expected_iterations_all_detailed(list, t as u64).expect("layer size in range");
            n_q_per_layer.push(one);
            n_q_all_per_layer.push(all.value);
            gates_per_layer.push(cycles * all.value);
            has_clamped_summands |= all.clamped_summands > 0;
        }
        let total_gates = gates_per_layer.iter().sum();
        CostEstimate {
            n_q_per_layer,
            n_q_all_per_layer,
            gates_per_layer,
            total_gates,
            has_clamped_summands,
        }
    }
}

/// Expected iterations of one full failing schedule run, `s_max` outer
/// rounds of the complete attempt ladder at mean cost `m_k / 2` each. This
/// is the strict-mode price of a search that finds nothing; the default
/// model prices such searches at zero.
pub fn failing_run_iterations(list_size: u64, epsilon: f64) -> Result<f64, CostError> {
    let budget = k_max(list_size)?;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(CostError::InvalidEpsilon { epsilon });
    }
    let ladder: f64 = (1..=budget).map(|k| m_k(list_size, k) as f64 / 2.0).sum();
    Ok(s_max(epsilon) as f64 * ladder)
}

/// Required per-gate execution time for a search of `gates` gates to match
/// a classical runtime of `bfs_wall_time_ns`: wall time in seconds divided
/// by the gate count. `None` when there are no gates to divide by — such a
/// phase contributes no data point.
pub fn required_gate_time(bfs_wall_time_ns: u64, gates: f64) -> Option<f64> {
    if gates > 0.0 {
        Some(bfs_wall_time_ns as f64 * 1e-9 / gates)
    } else {
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Feasible,
    Infeasible,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Feasible => write!(f, "feasible"),
            Verdict::Infeasible => write!(f, "infeasible"),
        }
    }
}

/// Outcome of comparing a required gate time against a reference gate time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdComparison {
    pub verdict: Verdict,
    /// `reference / tau`: how many times faster than the reference a gate
    /// would have to be.
    pub margin: f64,
}

/// Infeasible when the required gate time is shorter than the reference
/// (gates would need to beat the demonstrated record), feasible otherwise.
pub fn compare_threshold(tau: f64, reference: f64) -> ThresholdComparison {
    ThresholdComparison {
        verdict: if tau < reference {
            Verdict::Infeasible
        } else {
            Verdict::Feasible
        },
        margin: reference / tau,
    }
}
