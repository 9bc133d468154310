//! Instrumented Dinic's algorithm plus an independent Edmonds–Karp oracle.
//!
//! Each Dinic phase runs one timed BFS over positive-residual arcs to level
//! the graph, then one blocking-flow computation restricted to
//! level-increasing arcs. The BFS emits a [`BfsPhaseRecord`] carrying the
//! total vertex count, the ordered layer sizes, and the wall time of the
//! traversal itself — the raw inputs of the quantum cost model.

use serde::{Deserialize, Serialize};

use crate::clock::Clock;
use crate::graph::{build_residual, FlowNetwork, ResidualGraph};

/// Per-vertex BFS level; `None` means unreached. Index 0 is unused
/// (vertices are 1-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelAssignment {
    levels: Vec<Option<u32>>,
}

impl LevelAssignment {
    pub(crate) fn from_raw(levels: Vec<Option<u32>>) -> Self {
        LevelAssignment { levels }
    }

    pub fn level(&self, v: usize) -> Option<u32> {
        self.levels[v]
    }

    pub fn reached(&self, v: usize) -> bool {
        self.levels[v].is_some()
    }

    /// Checks the level-graph invariants against a residual graph:
    /// the source sits at level 0, no positive-residual arc jumps more than
    /// one level forward, and every reached non-source vertex has a
    /// positive-residual in-arc from the previous level.
    pub fn satisfies_invariants(&self, residual: &ResidualGraph, source: usize) -> bool {
        if self.level(source) != Some(0) {
            return false;
        }
        let n = residual.vertex_count();
        let mut has_parent = vec![false; n + 1];
        has_parent[source] = true;
        for u in 1..=n {
            let Some(lu) = self.level(u) else { continue };
            for &arc in residual.arcs_from(u) {
                if residual.arc_residual(arc) == 0 || residual.arc_head(arc) == u {
                    continue;
                }
                let v = residual.arc_head(arc);
                if let Some(lv) = self.level(v) {
                    if lv > lu + 1 {
                        return false;
                    }
                    if lv == lu + 1 {
                        has_parent[v] = true;
                    }
                }
            }
        }
        (1..=n).all(|v| !self.reached(v) || has_parent[v])
    }
}

/// Log of one BFS levelling pass.
///
/// `layer_sizes[l - 1]` is the number of vertices at level `l`; the source
/// layer is excluded. `total_vertices` is the vertex count of the whole
/// graph, which is what the search cost model takes as its list size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BfsPhaseRecord {
    pub phase_index: usize,
    pub total_vertices: usize,
    pub layer_sizes: Vec<usize>,
    pub sink_reached: bool,
    pub sink_level: Option<u32>,
    pub bfs_wall_time_ns: u64,
}

/// Levels the residual graph from `source` with a plain queue BFS over
/// positive-residual arcs (forward and backward residual arcs alike).
///
/// The reported wall time covers exactly the traversal — queue operations
/// and arc scans — not the assembly of the record. On clocks too coarse to
/// see the traversal the time is clamped up to 1 ns so records always carry
/// a positive duration.
pub fn bfs_level<C: Clock>(
    residual: &ResidualGraph,
    source: usize,
    sink: usize,
    clock: &C,
    phase_index: usize,
) -> (LevelAssignment, BfsPhaseRecord) {
    let n = residual.vertex_count();
    let mut levels: Vec<Option<u32>> = vec![None; n + 1];
    let mut queue: std::collections::VecDeque<usize> = std::collections::VecDeque::new();

    let start = clock.now_ns();
    levels[source] = Some(0);
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let next = levels[u].expect("queued vertices are levelled") + 1;
        for &arc in residual.arcs_from(u) {
            if residual.arc_residual(arc) == 0 {
                continue;
            }
            let v = residual.arc_head(arc);
            if v == u {
                continue;
            }
            if levels[v].is_none() {
                levels[v] = Some(next);
                queue.push_back(v);
            }
        }
    }
    let elapsed = clock.now_ns().saturating_sub(start).max(1);

    let max_level = levels.iter().flatten().copied().max().unwrap_or(0);
    let mut layer_sizes = vec![0usize; max_level as usize];
    for lvl in levels.iter().flatten() {
        if *lvl >= 1 {
            layer_sizes[(*lvl - 1) as usize] += 1;
        }
    }
    let sink_level = levels[sink];
    let record = BfsPhaseRecord {
        phase_index,
        total_vertices: n,
        layer_sizes,
        sink_reached: sink_level.is_some(),
        sink_level,
        bfs_wall_time_ns: elapsed,
    };
    (LevelAssignment { levels }, record)
}

/// Saturates the level graph: repeatedly extends a path along arcs with
/// `level(head) == level(tail) + 1` and positive residual, augments on
/// reaching the sink, and prunes dead arcs via per-vertex cursors so each
/// arc is abandoned at most once per phase. Iterative, no recursion.
///
/// Returns the total flow pushed. On return no augmenting path exists
/// within the level graph.
pub fn blocking_flow(
    residual: &mut ResidualGraph,
    levels: &LevelAssignment,
    source: usize,
    sink: usize,
) -> u64 {
    let n = residual.vertex_count();
    let mut cursor = vec![0usize; n + 1];
    let mut path: Vec<u32> = Vec::new();
    let mut total = 0u64;
    let mut u = source;

    let admissible = |residual: &ResidualGraph, u: usize, arc: u32| {
        if residual.arc_residual(arc) == 0 {
            return false;
        }
        let v = residual.arc_head(arc);
        match (levels.level(u), levels.level(v)) {
            (Some(lu), Some(lv)) => lv == lu + 1,
            _ => false,
        }
    };

    loop {
        if u == sink {
            let bottleneck = path
                .iter()
                .map(|&arc| residual.arc_residual(arc))
                .min()
                .expect("path to sink is nonempty");
            for &arc in &path {
                residual.push(arc, bottleneck);
            }
            total += bottleneck;
            // Retreat to the tail of the first saturated arc; the prefix of
            // the path stays valid.
            let first_saturated = path
                .iter()
                .position(|&arc| residual.arc_residual(arc) == 0)
                .expect("augmentation saturates the bottleneck arc");
            path.truncate(first_saturated);
            u = match path.last() {
                Some(&arc) => residual.arc_head(arc),
                None => source,
            };
            continue;
        }

        let arcs = residual.arcs_from(u);
        while cursor[u] < arcs.len() && !admissible(residual, u, arcs[cursor[u]]) {
            cursor[u] += 1;
        }
        if cursor[u] < arcs.len() {
            let arc = arcs[cursor[u]];
            path.push(arc);
            u = residual.arc_head(arc);
        } else if u == source {
            break;
        } else {
            // Dead end: back out and abandon the arc that led here.
            let arc = path.pop().expect("non-source dead end has an inbound arc");
            let tail = if path.is_empty() {
                source
            } else {
                // The previous path arc points at the vertex we retreat to.
                residual.arc_head(*path.last().expect("checked nonempty"))
            };
            debug_assert_eq!(residual.arc_head(arc ^ 1), tail);
            cursor[tail] += 1;
            u = tail;
        }
    }
    total
}

/// Runs the full instrumented solve: alternating timed BFS levelling and
/// blocking flow until the sink is unreached. Emits one record per BFS call
/// including the terminating one (flagged `sink_reached = false`).
pub fn dinic_max_flow<C: Clock>(
    network: &FlowNetwork,
    clock: &C,
) -> (u64, Vec<BfsPhaseRecord>, ResidualGraph) {
    let mut residual = build_residual(network);
    let source = network.source();
    let sink = network.sink();
    let mut phases = Vec::new();
    let mut flow = 0u64;
    loop {
        let phase_index = phases.len();
        let (levels, record) = bfs_level(&residual, source, sink, clock, phase_index);
        let reached = record.sink_reached;
        phases.push(record);
        if !reached {
            break;
        }
        flow += blocking_flow(&mut residual, &levels, source, sink);
    }
    (flow, phases, residual)
}

/// Shortest-augmenting-path max flow. Shares the residual representation
/// with the rest of the crate but none of the Dinic solver code; used as an
/// independent oracle in tests and certificates.
pub fn edmonds_karp_max_flow(network: &FlowNetwork) -> u64 {
    let mut residual = build_residual(network);
    let source = network.source();
    let sink = network.sink();
    let n = residual.vertex_count();
    let mut flow = 0u64;
    loop {
        // BFS recording the arc that discovered each vertex.
        let mut parent_arc: Vec<Option<u32>> = vec![None; n + 1];
        let mut visited = vec![false; n + 1];
        visited[source] = true;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(source);
        'bfs: while let Some(u) = queue.pop_front() {
            for &arc in residual.arcs_from(u) {
                if residual.arc_residual(arc) == 0 {
                    continue;
                }
                let v = residual.arc_head(arc);
                if visited[v] {
                    continue;
                }
                visited[v] = true;
                parent_arc[v] = Some(arc);
                if v == sink {
                    break 'bfs;
                }
                queue.push_back(v);
            }
        }
        if !visited[sink] {
            return flow;
        }
        let mut bottleneck = u64::MAX;
        let mut v = sink;
        while v != source {
            let arc = parent_arc[v].expect("path arc");
            bottleneck = bottleneck.min(residual.arc_residual(arc));
            v = residual.arc_head(arc ^ 1);
        }
        let mut v = sink;
        while v != source {
            let arc = parent_arc[v].expect("path arc");
            residual.push(arc, bottleneck);
            v = residual.arc_head(arc ^ 1);
        }
        flow += bottleneck;
    }
}

/// Max-flow/min-cut witness check on a finished solve.
///
/// Computes the set `S` of vertices reachable from the source through
/// positive-residual arcs and accepts iff the sink is outside `S`, the
/// original capacity crossing from `S` equals `flow_value`, and the flow
/// implied by the residuals conserves at every internal vertex.
pub fn verify_min_cut_certificate(
    network: &FlowNetwork,
    final_residual: &ResidualGraph,
    flow_value: u64,
) -> bool {
    let n = network.vertex_count();
    if final_residual.vertex_count() != n
        || final_residual.arc_count() != 2 * network.edge_count()
        || !final_residual.residuals_conserved()
    {
        return false;
    }
    let mut in_cut_side = vec![false; n + 1];
    in_cut_side[network.source()] = true;
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(network.source());
    while let Some(u) = queue.pop_front() {
        for &arc in final_residual.arcs_from(u) {
            if final_residual.arc_residual(arc) == 0 {
                continue;
            }
            let v = final_residual.arc_head(arc);
            if !in_cut_side[v] {
                in_cut_side[v] = true;
                queue.push_back(v);
            }
        }
    }
    if in_cut_side[network.sink()] {
        return false;
    }

    let mut cut_capacity = 0u64;
    let mut net_flow = vec![0i128; n + 1];
    for (i, e) in network.edges().iter().enumerate() {
        let f = final_residual.edge_flow(i);
        if f > e.capacity {
            return false;
        }
        net_flow[e.tail] -= f as i128;
        net_flow[e.head] += f as i128;
        if in_cut_side[e.tail] && !in_cut_side[e.head] {
            cut_capacity += e.capacity;
        }
    }
    if cut_capacity != flow_value {
        return false;
    }
    (1..=n).all(|v| {
        if v == network.source() || v == network.sink() {
            true
        } else {
            net_flow[v] == 0
        }
    })
}
