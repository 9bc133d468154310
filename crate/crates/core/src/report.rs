//! Result emitters: a flat CSV analysis view, JSONL with full phase detail,
//! and an SVG scatter of required gate times.

pub mod svg;

use std::io;
use std::path::Path;

use crate::harness::{Aggregation, InstanceResult};
use crate::quantum_cost::compare_threshold;

/// Frozen CSV header; fields are never reordered.
pub const CSV_HEADER: &str =
    "instance_id,vertex_count,edge_count,flow_value,phase_index,bfs_time_ns,gates,tau_seconds,verdict";

/// 17 significant digits, enough to round-trip any f64.
fn float_field(x: f64) -> String {
    format!("{:.16e}", x)
}

/// Renders the flat CSV view. Per-phase rows cover the priced phases; the
/// aggregate row uses the literal phase index `aggregate`. Verdicts compare
/// each row's gate time against `threshold`.
pub fn render_csv(results: &[InstanceResult], aggregation: Aggregation, threshold: f64) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for result in results {
        let prefix = format!(
            "{},{},{},{}",
            result.instance_id, result.vertex_count, result.edge_count, result.flow_value
        );
        if aggregation.includes_per_phase() {
            for (slot, &phase_index) in result.priced_phase_indices().iter().enumerate() {
                let phase = &result.phases[phase_index];
                let gates = result.per_phase_gates[slot];
                let tau = result.per_phase_tau[slot];
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    prefix,
                    phase.phase_index,
                    phase.bfs_wall_time_ns,
                    float_field(gates),
                    tau_verdict_fields(tau, threshold),
                ));
            }
        }
        if aggregation.includes_per_instance() {
            out.push_str(&format!(
                "{},aggregate,{},{},{}\n",
                prefix,
                result.total_bfs_time_ns,
                float_field(result.total_gates),
                tau_verdict_fields(result.aggregate_tau, threshold),
            ));
        }
    }
    out
}

fn tau_verdict_fields(tau: Option<f64>, threshold: f64) -> String {
    match tau {
        Some(t) => format!(
            "{},{}",
            float_field(t),
            compare_threshold(t, threshold).verdict
        ),
        None => String::from(","),
    }
}

/// One JSON object per line, full phase detail, stable key names.
pub fn render_jsonl(results: &[InstanceResult]) -> String {
    let mut out = String::new();
    for result in results {
        out.push_str(&serde_json::to_string(result).expect("results serialize"));
        out.push('\n');
    }
    out
}

pub fn parse_jsonl(text: &str) -> Result<Vec<InstanceResult>, serde_json::Error> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(serde_json::from_str)
        .collect()
}

/// Writes via a temporary file in the same directory plus rename, so
/// readers never observe a half-written file.
pub fn write_atomic(path: &Path, content: &str) -> io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp = match dir {
        Some(d) => d.join(format!(
            ".{}.tmp-{}",
            path.file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_else(|| "out".to_string()),
            std::process::id()
        )),
        None => Path::new(&format!(".qmaxflow.tmp-{}", std::process::id())).to_path_buf(),
    };
    std::fs::write(&tmp, content)?;
    std::fs::rename(&tmp, path)
}
