//! Browser demo exposing three interactive operations over the core
//! toolkit: evaluate the search cost model for one `(list, marked)` pair,
//! solve a generated instance end to end with in-browser timing, and render
//! the required-gate-time scatter for a small generated corpus.
//!
//! Build for the web with:
//!
//! ```text
//! cargo build -p qmaxflow-wasm --target wasm32-unknown-unknown --release
//! wasm-bindgen --target web --out-dir crates/wasm-demo/pkg \
//!     target/wasm32-unknown-unknown/release/qmaxflow_wasm.wasm
//! ```
//!
//! then serve `crates/wasm-demo/` statically and open `index.html`.
//! Browser timers are far coarser than the native monotonic clock, so
//! required gate times measured here are indicative only.

use wasm_bindgen::prelude::*;

use qmaxflow::clock::Clock;
use qmaxflow::generate::{generate_grid_network, generate_random_network, two_phase_example};
use qmaxflow::graph::FlowNetwork;
use qmaxflow::harness::{run_instance, InstanceResult, RunConfig};
use qmaxflow::maxflow::{dinic_max_flow, edmonds_karp_max_flow};
use qmaxflow::quantum_cost::{
    cycles_per_iteration, expected_iterations_all, expected_iterations_one, gate_count,
    DEFAULT_GATE_TIME_THRESHOLD_SECONDS,
};
use qmaxflow::report::svg::emit_svg_scatter;

#[cfg(target_arch = "wasm32")]
struct DemoClock {
    origin: f64,
}

#[cfg(target_arch = "wasm32")]
impl DemoClock {
    fn new() -> Self {
        DemoClock {
            origin: js_sys::Date::now(),
        }
    }
}

#[cfg(target_arch = "wasm32")]
impl Clock for DemoClock {
    fn now_ns(&self) -> u64 {
        ((js_sys::Date::now() - self.origin) * 1e6) as u64
    }
}

#[cfg(not(target_arch = "wasm32"))]
struct DemoClock {
    inner: qmaxflow::MonotonicClock,
}

#[cfg(not(target_arch = "wasm32"))]
impl DemoClock {
    fn new() -> Self {
        DemoClock {
            inner: qmaxflow::MonotonicClock::new(),
        }
    }
}

#[cfg(not(target_arch = "wasm32"))]
impl Clock for DemoClock {
    fn now_ns(&self) -> u64 {
        self.inner.now_ns()
    }
}

fn estimate_impl(list_size: u32, marked: u32) -> Result<String, String> {
    let list = list_size as u64;
    let t = marked as u64;
    if list < 2 {
        return Err("list size must be at least 2".to_string());
    }
    if t > list {
        return Err("marked cannot exceed list size".to_string());
    }
    let n_q = if t >= 1 {
        Some(expected_iterations_one(list, t).expect("domain checked"))
    } else {
        None
    };
    let value = serde_json::json!({
        "list_size": list,
        "marked": t,
        "expected_iterations_one": n_q,
        "expected_iterations_all": expected_iterations_all(list, t).expect("domain checked"),
        "cycles_per_iteration": cycles_per_iteration(list).expect("domain checked"),
        "gate_count": gate_count(list, t).expect("domain checked"),
    });
    Ok(value.to_string())
}

fn build_network(kind: &str, a: u32, b: u32, cmax: u32, seed: u32) -> Result<FlowNetwork, String> {
    match kind {
        "random" => generate_random_network(a as usize, b as usize, cmax as u64, seed as u64)
            .map_err(|e| e.to_string()),
        "grid" => generate_grid_network(a as usize, b as usize, cmax as u64, seed as u64)
            .map_err(|e| e.to_string()),
        "example" => Ok(two_phase_example()),
        other => Err(format!("unknown instance kind `{}`", other)),
    }
}

fn run_instance_impl(
    kind: &str,
    a: u32,
    b: u32,
    cmax: u32,
    seed: u32,
    reps: u32,
) -> Result<String, String> {
    let network = build_network(kind, a, b, cmax, seed)?;
    let clock = DemoClock::new();
    let config = RunConfig {
        timing_repetitions: reps.clamp(1, 50) as usize,
        ..RunConfig::default()
    };
    let result = run_instance("demo", &network, &config, &clock).map_err(|e| e.to_string())?;
    let oracle = edmonds_karp_max_flow(&network);
    let value = serde_json::json!({
        "result": result,
        "oracle_flow_value": oracle,
        "threshold_seconds": DEFAULT_GATE_TIME_THRESHOLD_SECONDS,
    });
    Ok(value.to_string())
}

fn scatter_impl(
    count: u32,
    min_vertices: u32,
    max_vertices: u32,
    seed: u32,
) -> Result<String, String> {
    let count = count.clamp(1, 500);
    let lo = min_vertices.max(4) as f64;
    let hi = (max_vertices.max(min_vertices + 1)) as f64;
    let clock = DemoClock::new();
    let config = RunConfig {
        timing_repetitions: 3,
        ..RunConfig::default()
    };
    let mut results: Vec<InstanceResult> = Vec::with_capacity(count as usize);
    for i in 0..count {
        let frac = if count == 1 {
            0.0
        } else {
            i as f64 / (count - 1) as f64
        };
        let n = (lo * (hi / lo).powf(frac)).round() as usize;
        let m = 3 * n;
        let network = generate_random_network(n, m, 100, seed as u64 + i as u64)
            .map_err(|e| e.to_string())?;
        let result = run_instance(&format!("demo-{:03}", i), &network, &config, &clock)
            .map_err(|e| e.to_string())?;
        results.push(result);
    }
    emit_svg_scatter(&results, DEFAULT_GATE_TIME_THRESHOLD_SECONDS).map_err(|e| e.to_string())
}

/// Closed-form cost model values for one `(list_size, marked)` pair, as a
/// JSON object.
#[wasm_bindgen]
pub fn estimate_json(list_size: u32, marked: u32) -> Result<String, JsError> {
    estimate_impl(list_size, marked).map_err(|e| JsError::new(&e))
}

/// Generates an instance (`kind` is `random`, `grid`, or `example`), solves
/// it with in-browser phase timing, and returns the full instance result as
/// JSON. For `random` the parameters are (vertices, edges); for `grid`,
/// (rows, cols). The oracle flow value is attached as a cross-check.
#[wasm_bindgen]
pub fn run_instance_json(
    kind: &str,
    a: u32,
    b: u32,
    cmax: u32,
    seed: u32,
    reps: u32,
) -> Result<String, JsError> {
    run_instance_impl(kind, a, b, cmax, seed, reps).map_err(|e| JsError::new(&e))
}

/// Solves `count` random instances with sizes log-spaced over
/// `[min_vertices, max_vertices]` and renders the required-gate-time
/// scatter as an SVG document.
#[wasm_bindgen]
pub fn scatter_svg(
    count: u32,
    min_vertices: u32,
    max_vertices: u32,
    seed: u32,
) -> Result<String, JsError> {
    scatter_impl(count, min_vertices, max_vertices, seed).map_err(|e| JsError::new(&e))
}

/// Plain solve helper for the page's preset: flow value only.
#[wasm_bindgen]
pub fn solve_example_flow() -> u64 {
    let clock = DemoClock::new();
    let (flow, _, _) = dinic_max_flow(&two_phase_example(), &clock);
    flow
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn estimate_carries_model_values() {
        let text = estimate_impl(64, 4).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["cycles_per_iteration"], 128);
        assert!(value["gate_count"].as_f64().unwrap() > 0.0);
        assert!(estimate_impl(1, 0).is_err());
        assert!(estimate_impl(8, 9).is_err());
    }

    #[test]
    fn demo_instance_run_produces_a_result() {
        let text = run_instance_impl("example", 0, 0, 0, 0, 3).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["result"]["flow_value"], 35);
        assert_eq!(value["oracle_flow_value"], 35);
        assert_eq!(value["result"]["phases"].as_array().unwrap().len(), 3);
        assert!(run_instance_impl("bogus", 1, 1, 1, 1, 1).is_err());
    }

    #[test]
    fn demo_scatter_emits_svg() {
        let svg = scatter_impl(4, 30, 120, 9).unwrap();
        assert!(svg.starts_with("<svg"));
        assert_eq!(svg.matches("<circle").count(), 4);
    }

    #[test]
    fn example_flow_is_35() {
        assert_eq!(solve_example_flow(), 35);
    }
}
