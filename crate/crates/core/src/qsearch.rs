//! Monte Carlo execution of the exponential search schedule and a
//! classical emulation of search-driven BFS levelling.
//!
//! The simulator draws measurement outcomes as Bernoulli trials with the
//! exact Grover success amplitude instead of evolving state vectors; the
//! cost model only depends on success probabilities, and this scales to
//! list sizes in the hundreds of thousands. Attempt caps come from the same
//! exact [`m_k`] schedule the closed form uses, so the two sides share
//! bit-identical schedules.
//!
//! All entry points are pure functions of their arguments and a seed.
//! Monte Carlo trials derive one ChaCha8 stream per trial index, so results
//! are identical however trials are batched.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::ResidualGraph;
use crate::maxflow::LevelAssignment;
use crate::quantum_cost::{grover_angle, k_max, m_k, CostError, QSearchParams};

/// Result of one simulated search run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialOutcome {
    /// Total Grover iterations consumed: the sum of the drawn `j` over all
    /// attempts, including the final failed ones.
    pub grover_iterations_used: u64,
    pub attempts: u32,
    pub succeeded: bool,
}

/// Probability that measuring after `iterations` Grover iterations yields a
/// marked item: `sin^2((2 j + 1) theta)`.
pub fn success_probability(iterations: u64, theta: f64) -> f64 {
    let amplitude = ((2 * iterations + 1) as f64 * theta).sin();
    amplitude * amplitude
}

/// One pass of the attempt ladder `k = 1..=budget`, the schedule a single
/// run executes. The printed schedule nests this in `s_max` outer rounds,
/// but neither the attempt counter nor the cap resets between rounds, so
/// rounds after the first never re-enter the ladder; a single pass is the
/// faithful execution.
fn simulate_pass(list_size: u64, marked: u64, rng: &mut impl Rng) -> TrialOutcome {
    let budget = k_max(list_size).unwrap_or(4);
    let theta = grover_angle(list_size.max(1), marked);
    let mut used = 0u64;
    for k in 1..=budget {
        let cap = m_k(list_size, k);
        let j = rng.random_range(0..=cap);
        used += j;
        if rng.random::<f64>() < success_probability(j, theta) {
            return TrialOutcome {
                grover_iterations_used: used,
                attempts: k,
                succeeded: true,
            };
        }
    }
    TrialOutcome {
        grover_iterations_used: used,
        attempts: budget,
        succeeded: false,
    }
}

/// Simulates one search run over `list_size` items with `marked` marked
/// ones: each attempt draws its iteration count uniformly from the
/// schedule's current cap and succeeds with the exact Grover amplitude.
/// With `marked = 0` every attempt fails and the full ladder's iterations
/// are consumed.
pub fn simulate_qsearch(
    list_size: u64,
    marked: u64,
    epsilon: f64,
    rng: &mut impl Rng,
) -> Result<TrialOutcome, CostError> {
    let params = QSearchParams::new(list_size, marked, epsilon)?;
    let outcome = simulate_pass(list_size, marked, rng);
    debug_assert!(outcome.attempts <= params.s_max * params.k_max);
    Ok(outcome)
}

/// Streaming mean/variance accumulator that merges associatively, so
/// partitioned trial batches aggregate to the same result as a single
/// sequential pass.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MeanAccumulator {
    count: u64,
    mean: f64,
    m2: f64,
}

impl MeanAccumulator {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&mut self, other: &MeanAccumulator) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let total = self.count + other.count;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / total as f64;
        self.m2 += other.m2 + delta * delta * self.count as f64 * other.count as f64 / total as f64;
        self.count = total;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn sample_variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn standard_error(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.sample_variance() / self.count as f64).sqrt()
        }
    }
}

/// Monte Carlo estimate of the expected Grover iterations of one search
/// run. Returns `(mean, standard_error)` over `trials` independent runs.
///
/// The mean is taken over every run, successful or not: a failed pass
/// consumes its iterations exactly as a successful one does, which is what
/// the closed form prices. Trial `i` uses stream `i` of a ChaCha8 generator
/// seeded with `seed`, so the estimate is a pure function of the arguments.
/// Meaningful standard errors need on the order of 10^3 trials or more.
pub fn mc_expected_iterations(
    list_size: u64,
    marked: u64,
    epsilon: f64,
    trials: u64,
    seed: u64,
) -> Result<(f64, f64), CostError> {
    if marked == 0 {
        return Err(CostError::MarkedZero);
    }
    QSearchParams::new(list_size, marked, epsilon)?;
    assert!(trials >= 1, "at least one trial required");
    let mut acc = MeanAccumulator::default();
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let outcome = simulate_pass(list_size, marked, &mut rng);
        acc.push(outcome.grover_iterations_used as f64);
    }
    Ok((acc.mean(), acc.standard_error()))
}

/// Monte Carlo estimate of the expected iterations to find all `marked`
/// items by sequential removal: each trial searches `(|L|, t)`, then
/// `(|L|-1, t-1)`, and so on, summing iterations. Stages advance
/// unconditionally — a stage that fails its ladder has still consumed one
/// full pass, which is precisely the per-stage quantity the telescoped
/// closed form sums.
pub fn mc_expected_iterations_all(
    list_size: u64,
    marked: u64,
    epsilon: f64,
    trials: u64,
    seed: u64,
) -> Result<(f64, f64), CostError> {
    if marked == 0 {
        return Err(CostError::MarkedZero);
    }
    QSearchParams::new(list_size, marked, epsilon)?;
    assert!(trials >= 1, "at least one trial required");
    let mut acc = MeanAccumulator::default();
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let mut total = 0u64;
        for i in 0..marked {
            let outcome = simulate_pass(list_size - i, marked - i, &mut rng);
            total += outcome.grover_iterations_used;
        }
        acc.push(total as f64);
    }
    Ok((acc.mean(), acc.standard_error()))
}

/// Levels a graph the way the search-driven BFS would: the queue is
/// classical, but each dequeued vertex discovers its yet-unlevelled
/// neighbours one at a time by uniform sampling over them — the measurement
/// distribution of a successful search over a symmetric marked set. Failed
/// searches are not modelled here (the cost model prices them); only
/// positive-residual arcs are traversed.
///
/// The returned level function equals the plain BFS level function on the
/// same graph; only the within-layer discovery order differs.
pub fn emulate_qbfs_levels(
    residual: &ResidualGraph,
    source: usize,
    rng: &mut impl Rng,
) -> LevelAssignment {
    let n = residual.vertex_count();
    let mut levels: Vec<Option<u32>> = vec![None; n + 1];
    levels[source] = Some(0);
    let mut queue = std::collections::VecDeque::from([source]);
    let mut candidates: Vec<usize> = Vec::new();
    while let Some(x) = queue.pop_front() {
        let next = levels[x].expect("queued vertices are levelled") + 1;
        loop {
            candidates.clear();
            for &arc in residual.arcs_from(x) {
                if residual.arc_residual(arc) == 0 {
                    continue;
                }
                let y = residual.arc_head(arc);
                if levels[y].is_none() && !candidates.contains(&y) {
                    candidates.push(y);
                }
            }
            if candidates.is_empty() {
                break; // the search would report "no marked element"
            }
            let y = candidates[rng.random_range(0..candidates.len())];
            levels[y] = Some(next);
            queue.push_back(y);
        }
    }
    LevelAssignment::from_raw(levels)
}
