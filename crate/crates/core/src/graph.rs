//! Flow-network representation and the paired-arc residual structure.
//!
//! Vertices are 1-based throughout, matching the DIMACS convention; index 0
//! is never used. A [`FlowNetwork`] is immutable once constructed and keeps
//! its edges in exactly the order they were supplied, which every downstream
//! consumer (solver scan order, file round-trips, generators) relies on.

use std::fmt;

/// A directed capacitated edge. Capacities are 64-bit non-negative integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub tail: usize,
    pub head: usize,
    pub capacity: u64,
}

impl Edge {
    pub fn new(tail: usize, head: usize, capacity: u64) -> Self {
        Edge {
            tail,
            head,
            capacity,
        }
    }
}

/// Immutable capacitated directed graph with designated source and sink.
///
/// Invariants, enforced at construction:
/// * `1 <= source, sink <= vertex_count` and `source != sink`
/// * every edge endpoint is in `[1, vertex_count]`
/// * no self-loops
///
/// Parallel and antiparallel edges are allowed and kept as distinct arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    vertex_count: usize,
    source: usize,
    sink: usize,
    edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NetworkError {
    SourceOutOfRange { source: usize, vertex_count: usize },
    SinkOutOfRange { sink: usize, vertex_count: usize },
    SourceEqualsSink { vertex: usize },
    EndpointOutOfRange { edge_index: usize, vertex: usize },
    SelfLoop { edge_index: usize, vertex: usize },
}

impl fmt::Display for NetworkError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NetworkError::SourceOutOfRange {
                source,
                vertex_count,
            } => write!(f, "source {} out of range 1..={}", source, vertex_count),
            NetworkError::SinkOutOfRange { sink, vertex_count } => {
                write!(f, "sink {} out of range 1..={}", sink, vertex_count)
            }
            NetworkError::SourceEqualsSink { vertex } => {
                write!(f, "source and sink are both vertex {}", vertex)
            }
            NetworkError::EndpointOutOfRange { edge_index, vertex } => write!(
                f,
                "edge {} references vertex {} outside the graph",
                edge_index, vertex
            ),
            NetworkError::SelfLoop { edge_index, vertex } => {
                write!(f, "edge {} is a self-loop at vertex {}", edge_index, vertex)
            }
        }
    }
}

impl std::error::Error for NetworkError {}

impl FlowNetwork {
    pub fn new(
        vertex_count: usize,
        source: usize,
        sink: usize,
        edges: Vec<Edge>,
    ) -> Result<Self, NetworkError> {
        if source < 1 || source > vertex_count {
            return Err(NetworkError::SourceOutOfRange {
                source,
                vertex_count,
            });
        }
        if sink < 1 || sink > vertex_count {
            return Err(NetworkError::SinkOutOfRange { sink, vertex_count });
        }
        if source == sink {
            return Err(NetworkError::SourceEqualsSink { vertex: source });
        }
        for (i, e) in edges.iter().enumerate() {
            if e.tail < 1 || e.tail > vertex_count {
                return Err(NetworkError::EndpointOutOfRange {
                    edge_index: i,
                    vertex: e.tail,
                });
            }
            if e.head < 1 || e.head > vertex_count {
                return Err(NetworkError::EndpointOutOfRange {
                    edge_index: i,
                    vertex: e.head,
                });
            }
            if e.tail == e.head {
                return Err(NetworkError::SelfLoop {
                    edge_index: i,
                    vertex: e.tail,
                });
            }
        }
        Ok(FlowNetwork {
            vertex_count,
            source,
            sink,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// Mutable paired-arc residual structure used during solving.
///
/// Original edge `e` becomes arcs `2e` (forward) and `2e + 1` (backward);
/// `forward + backward == original capacity` at all times. Per-vertex arc
/// lists keep insertion order, so traversals are deterministic.
#[derive(Debug, Clone)]
pub struct ResidualGraph {
    vertex_count: usize,
    source: usize,
    sink: usize,
    /// Head vertex of each arc; `arc ^ 1` is its partner.
    arc_head: Vec<usize>,
    /// Residual capacity of each arc.
    residual: Vec<u64>,
    /// Original capacity per edge (index = arc / 2).
    original_capacity: Vec<u64>,
    /// CSR adjacency: arcs incident to vertex `v` are
    /// `adj_arcs[adj_start[v]..adj_start[v + 1]]`.
    adj_start: Vec<usize>,
    adj_arcs: Vec<u32>,
}

/// Builds the zero-flow residual graph: forward residuals equal the original
/// capacities, backward residuals are zero.
pub fn build_residual(network: &FlowNetwork) -> ResidualGraph {
    let n = network.vertex_count();
    let m = network.edge_count();
    let mut arc_head = Vec::with_capacity(2 * m);
    let mut residual = Vec::with_capacity(2 * m);
    let mut original_capacity = Vec::with_capacity(m);
    let mut degree = vec![0usize; n + 2];
    for e in network.edges() {
        arc_head.push(e.head);
        residual.push(e.capacity);
        arc_head.push(e.tail);
        residual.push(0);
        original_capacity.push(e.capacity);
        degree[e.tail] += 1;
        degree[e.head] += 1;
    }
    let mut adj_start = vec![0usize; n + 2];
    for v in 1..=n {
        adj_start[v + 1] = adj_start[v] + degree[v];
    }
    let mut cursor = adj_start.clone();
    let mut adj_arcs = vec![0u32; 2 * m];
    for (i, e) in network.edges().iter().enumerate() {
        adj_arcs[cursor[e.tail]] = (2 * i) as u32;
        cursor[e.tail] += 1;
        adj_arcs[cursor[e.head]] = (2 * i + 1) as u32;
        cursor[e.head] += 1;
    }
    ResidualGraph {
        vertex_count: n,
        source: network.source(),
        sink: network.sink(),
        arc_head,
        residual,
        original_capacity,
        adj_start,
        adj_arcs,
    }
}

impl ResidualGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn arc_count(&self) -> usize {
        self.arc_head.len()
    }

    pub fn arc_head(&self, arc: u32) -> usize {
        self.arc_head[arc as usize]
    }

    pub fn arc_residual(&self, arc: u32) -> u64 {
        self.residual[arc as usize]
    }

    /// Arcs incident to `v` (both forward and backward), in insertion order.
    pub fn arcs_from(&self, v: usize) -> &[u32] {
        &self.adj_arcs[self.adj_start[v]..self.adj_start[v + 1]]
    }

    /// Original capacity of the edge that arc `arc` belongs to.
    pub fn arc_original_capacity(&self, arc: u32) -> u64 {
        self.original_capacity[(arc / 2) as usize]
    }

    /// Moves `amount` units of flow across `arc`: its residual decreases and
    /// the partner's increases, keeping the pair sum constant.
    ///
    /// Panics if `amount` exceeds the arc's residual capacity.
    pub fn push(&mut self, arc: u32, amount: u64) {
        let a = arc as usize;
        assert!(
            self.residual[a] >= amount,
            "push of {} exceeds residual {} on arc {}",
            amount,
            self.residual[a],
            arc
        );
        self.residual[a] -= amount;
        self.residual[a ^ 1] += amount;
    }

    /// Flow currently carried by original edge `e` (its backward residual).
    pub fn edge_flow(&self, edge_index: usize) -> u64 {
        self.residual[2 * edge_index + 1]
    }

    /// Checks the pair-sum invariant over every arc pair.
    pub fn residuals_conserved(&self) -> bool {
        (0..self.original_capacity.len())
            .all(|e| self.residual[2 * e] + self.residual[2 * e + 1] == self.original_capacity[e])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_edge(cap: u64) -> FlowNetwork {
        FlowNetwork::new(2, 1, 2, vec![Edge::new(1, 2, cap)]).unwrap()
    }

    #[test]
    fn rejects_out_of_range_source() {
        let err = FlowNetwork::new(2, 3, 2, vec![]).unwrap_err();
        assert!(matches!(err, NetworkError::SourceOutOfRange { .. }));
    }

    #[test]
    fn rejects_source_equals_sink() {
        let err = FlowNetwork::new(2, 1, 1, vec![]).unwrap_err();
        assert!(matches!(err, NetworkError::SourceEqualsSink { vertex: 1 }));
    }

    #[test]
    fn rejects_self_loop() {
        let err = FlowNetwork::new(3, 1, 3, vec![Edge::new(2, 2, 1)]).unwrap_err();
        assert!(matches!(err, NetworkError::SelfLoop { vertex: 2, .. }));
    }

    #[test]
    fn residual_starts_at_zero_flow() {
        let res = build_residual(&single_edge(5));
        assert_eq!(res.arc_residual(0), 5);
        assert_eq!(res.arc_residual(1), 0);
        assert!(res.residuals_conserved());
    }

    #[test]
    fn residual_pair_sums_equal_capacities() {
        let net = FlowNetwork::new(
            3,
            1,
            3,
            vec![Edge::new(1, 2, 4), Edge::new(2, 3, 7), Edge::new(1, 3, 2)],
        )
        .unwrap();
        let res = build_residual(&net);
        let total: u64 = (0..res.arc_count() as u32)
            .map(|a| res.arc_residual(a))
            .sum();
        let caps: u64 = net.edges().iter().map(|e| e.capacity).sum();
        assert_eq!(total, caps);
    }

    #[test]
    fn push_moves_residual_to_partner() {
        let mut res = build_residual(&single_edge(5));
        res.push(0, 3);
        assert_eq!(res.arc_residual(0), 2);
        assert_eq!(res.arc_residual(1), 3);
        assert_eq!(res.edge_flow(0), 3);
        assert!(res.residuals_conserved());
    }

    #[test]
    fn adjacency_keeps_insertion_order() {
        let net = FlowNetwork::new(
            4,
            1,
            4,
            vec![
                Edge::new(1, 2, 1),
                Edge::new(1, 3, 1),
                Edge::new(1, 4, 1),
                Edge::new(2, 4, 1),
            ],
        )
        .unwrap();
        let res = build_residual(&net);
        let heads: Vec<usize> = res.arcs_from(1).iter().map(|&a| res.arc_head(a)).collect();
        assert_eq!(heads, vec![2, 3, 4]);
    }
}
