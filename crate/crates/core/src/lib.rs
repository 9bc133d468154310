//! Hybrid benchmarking toolkit for maximum flow: solves instances with an
//! instrumented Dinic's algorithm, feeds the logged BFS layer data into an
//! analytical cost model for Grover-search-based BFS, and reports the
//! per-gate execution time quantum hardware would need to break even with
//! the classical BFS runtime.
//!
//! The crate is organised as a pipeline:
//!
//! * [`graph`] / [`dimacs`] / [`generate`] — flow-network representation,
//!   DIMACS max-flow I/O, and deterministic instance generators.
//! * [`maxflow`] — instrumented Dinic solver, an independent Edmonds–Karp
//!   oracle, and min-cut certificates.
//! * [`quantum_cost`] — closed-form expected Grover iteration counts,
//!   cycle/gate counts, and required-gate-time arithmetic.
//! * [`qsearch`] — Monte Carlo simulation of the exponential Grover search
//!   schedule and a classical emulation of search-based BFS levelling.
//! * [`harness`] — end-to-end instance runs with repeatable timing.
//! * [`report`] — CSV / JSONL / SVG emitters.

pub mod clock;
pub mod dimacs;
pub mod generate;
pub mod graph;
pub mod harness;
pub mod maxflow;
pub mod qsearch;
pub mod quantum_cost;
pub mod report;

#[cfg(not(target_arch = "wasm32"))]
pub use clock::MonotonicClock;
pub use clock::{Clock, FakeClock};
pub use graph::{Edge, FlowNetwork, ResidualGraph};
pub use maxflow::{BfsPhaseRecord, LevelAssignment};
