//! Deterministic instance generators for desk-scale benchmarking.
//!
//! Both generators are pure functions of their arguments: the same seed
//! yields a bit-identical network. Randomness comes from ChaCha8 seeded
//! directly with the caller's 64-bit seed.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Edge, FlowNetwork};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenerateError {
    TooFewVertices {
        n: usize,
    },
    /// The edge budget cannot cover the embedded source-to-sink chain
    /// (at minimum one direct edge).
    TooFewEdges {
        m: usize,
        minimum: usize,
    },
    ZeroCapacity,
    EmptyGrid,
}

impl fmt::Display for GenerateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenerateError::TooFewVertices { n } => {
                write!(f, "need at least 2 vertices, got {}", n)
            }
            GenerateError::TooFewEdges { m, minimum } => write!(
                f,
                "edge budget {} is below the {} needed for the embedded chain",
                m, minimum
            ),
            GenerateError::ZeroCapacity => write!(f, "maximum capacity must be at least 1"),
            GenerateError::EmptyGrid => write!(f, "grid needs at least one row and one column"),
        }
    }
}

impl std::error::Error for GenerateError {}

/// Random network with `n` vertices and `m` edges; source is vertex 1 and
/// sink is vertex `n`. A random source-to-sink chain is embedded first so
/// every instance has at least one augmenting path; the remaining edges are
/// uniform random non-self-loop pairs with capacities in `[1, cmax]`.
pub fn generate_random_network(
    n: usize,
    m: usize,
    cmax: u64,
    seed: u64,
) -> Result<FlowNetwork, GenerateError> {
    if n < 2 {
        return Err(GenerateError::TooFewVertices { n });
    }
    if m < 1 {
        return Err(GenerateError::TooFewEdges { m, minimum: 1 });
    }
    if cmax < 1 {
        return Err(GenerateError::ZeroCapacity);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let source = 1;
    let sink = n;

    // Chain through a random subset of intermediates, capped so the chain
    // fits the edge budget.
    let max_intermediates = (n - 2).min(m - 1);
    let intermediates = if max_intermediates == 0 {
        0
    } else {
        rng.random_range(0..=max_intermediates)
    };
    let mut pool: Vec<usize> = (2..n).collect();
    // Fisher-Yates prefix shuffle; only the first `intermediates` entries matter.
    for i in 0..intermediates {
        let j = rng.random_range(i..pool.len());
        pool.swap(i, j);
    }
    let mut edges = Vec::with_capacity(m);
    let mut prev = source;
    for &v in pool.iter().take(intermediates) {
        edges.push(Edge::new(prev, v, rng.random_range(1..=cmax)));
        prev = v;
    }
    edges.push(Edge::new(prev, sink, rng.random_range(1..=cmax)));

    while edges.len() < m {
        let tail = rng.random_range(1..=n);
        let head = rng.random_range(1..=n);
        if tail == head {
            continue;
        }
        edges.push(Edge::new(tail, head, rng.random_range(1..=cmax)));
    }

    Ok(FlowNetwork::new(n, source, sink, edges).expect("generated edges are in range"))
}

/// Grid network: `rows x cols` cells plus a source feeding the first column
/// and a sink drained by the last column. Cells get rightward edges and
/// vertical edges in both directions, all with seeded capacities in
/// `[1, cmax]`.
pub fn generate_grid_network(
    rows: usize,
    cols: usize,
    cmax: u64,
    seed: u64,
) -> Result<FlowNetwork, GenerateError> {
    if rows < 1 || cols < 1 {
        return Err(GenerateError::EmptyGrid);
    }
    if cmax < 1 {
        return Err(GenerateError::ZeroCapacity);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cell = |r: usize, c: usize| 2 + r * cols + c;
    let source = 1;
    let sink = rows * cols + 2;
    let mut edges = Vec::new();
    for r in 0..rows {
        edges.push(Edge::new(source, cell(r, 0), rng.random_range(1..=cmax)));
    }
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push(Edge::new(
                    cell(r, c),
                    cell(r, c + 1),
                    rng.random_range(1..=cmax),
                ));
            }
            if r + 1 < rows {
                edges.push(Edge::new(
                    cell(r, c),
                    cell(r + 1, c),
                    rng.random_range(1..=cmax),
                ));
            }
            if r > 0 {
                edges.push(Edge::new(
                    cell(r, c),
                    cell(r - 1, c),
                    rng.random_range(1..=cmax),
                ));
            }
        }
    }
    for r in 0..rows {
        edges.push(Edge::new(
            cell(r, cols - 1),
            sink,
            rng.random_range(1..=cmax),
        ));
    }
    Ok(FlowNetwork::new(sink, source, sink, edges).expect("grid edges are in range"))
}

/// Fixed 11-vertex, 15-edge worked example whose solve takes exactly two
/// augmenting phases: the first levels three layers and pushes 25 (10 + 15),
/// the second levels four layers, dead-ends once before backtracking, and
/// pushes 10, for a maximum flow of 35. Used in docs, tests, and demos.
pub fn two_phase_example() -> FlowNetwork {
    FlowNetwork::new(
        11,
        1,
        11,
        vec![
            Edge::new(1, 2, 10),
            Edge::new(1, 3, 15),
            Edge::new(1, 4, 15),
            Edge::new(2, 5, 17),
            Edge::new(3, 6, 30),
            Edge::new(4, 9, 8),
            Edge::new(4, 7, 12),
            Edge::new(5, 11, 10),
            Edge::new(6, 11, 15),
            Edge::new(7, 8, 17),
            Edge::new(8, 11, 10),
            Edge::new(9, 10, 6),
            Edge::new(10, 6, 9),
            Edge::new(7, 6, 5),
            Edge::new(7, 5, 7),
        ],
    )
    .expect("static example is valid")
}
