//! Dependency-free SVG scatter of required gate time against instance size.
//!
//! Fixed 800x600 viewBox, base-10 log axes with one tick per decade, and a
//! dashed horizontal rule at the reference gate time. Output is a pure
//! function of the input bytes: coordinates are formatted with fixed
//! precision and elements are emitted in a fixed order.

use std::fmt;
use std::fmt::Write as _;

use crate::harness::InstanceResult;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 26.0;
const MARGIN_BOTTOM: f64 = 56.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScatterSeries {
    /// One point per instance: aggregate gate time.
    Aggregate,
    /// One point per priced phase.
    PerPhase,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SvgError {
    NoPlottablePoints,
}

impl fmt::Display for SvgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SvgError::NoPlottablePoints => write!(f, "no results with a positive gate time"),
        }
    }
}

impl std::error::Error for SvgError {}

struct LogAxis {
    lo: i32,
    hi: i32,
}

impl LogAxis {
    fn covering(values: impl Iterator<Item = f64>) -> LogAxis {
        let mut lo = i32::MAX;
        let mut hi = i32::MIN;
        for v in values {
            let log = v.log10();
            lo = lo.min(log.floor() as i32);
            hi = hi.max(log.ceil() as i32);
        }
        if lo >= hi {
            hi = lo + 1;
        }
        LogAxis { lo, hi }
    }

    fn fraction(&self, value: f64) -> f64 {
        (value.log10() - self.lo as f64) / (self.hi - self.lo) as f64
    }
}

/// Scatter of aggregate gate times, one point per instance.
pub fn emit_svg_scatter(results: &[InstanceResult], threshold: f64) -> Result<String, SvgError> {
    emit_svg_scatter_series(results, threshold, ScatterSeries::Aggregate)
}

pub fn emit_svg_scatter_series(
    results: &[InstanceResult],
    threshold: f64,
    series: ScatterSeries,
) -> Result<String, SvgError> {
    let mut points: Vec<(f64, f64)> = Vec::new();
    for result in results {
        let x = result.vertex_count as f64;
        match series {
            ScatterSeries::Aggregate => {
                if let Some(tau) = result.aggregate_tau {
                    points.push((x, tau));
                }
            }
            ScatterSeries::PerPhase => {
                for tau in result.per_phase_tau.iter().flatten() {
                    points.push((x, *tau));
                }
            }
        }
    }
    if points.is_empty() {
        return Err(SvgError::NoPlottablePoints);
    }

    let x_axis = LogAxis::covering(points.iter().map(|p| p.0));
    let y_axis = LogAxis::covering(points.iter().map(|p| p.1).chain(std::iter::once(threshold)));
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let map_x = |v: f64| MARGIN_LEFT + x_axis.fraction(v) * plot_w;
    let map_y = |v: f64| MARGIN_TOP + (1.0 - y_axis.fraction(v)) * plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {:.0} {:.0}\" font-family=\"sans-serif\" font-size=\"12\">",
        WIDTH, HEIGHT
    );
    let _ = writeln!(
        svg,
        "<rect x=\"0\" y=\"0\" width=\"{:.0}\" height=\"{:.0}\" fill=\"white\"/>",
        WIDTH, HEIGHT
    );

    // Decade grid and tick labels.
    for decade in x_axis.lo..=x_axis.hi {
        let x = map_x(10f64.powi(decade));
        let _ = writeln!(
            svg,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#dddddd\"/>",
            x,
            MARGIN_TOP,
            x,
            MARGIN_TOP + plot_h
        );
        let _ = writeln!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">1e{}</text>",
            x,
            MARGIN_TOP + plot_h + 18.0,
            decade
        );
    }
    for decade in y_axis.lo..=y_axis.hi {
        let y = map_y(10f64.powi(decade));
        let _ = writeln!(
            svg,
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#dddddd\"/>",
            MARGIN_LEFT,
            y,
            MARGIN_LEFT + plot_w,
            y
        );
        let _ = writeln!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">1e{}</text>",
            MARGIN_LEFT - 6.0,
            y + 4.0,
            decade
        );
    }

    let _ = writeln!(
        svg,
        "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"black\"/>",
        MARGIN_LEFT, MARGIN_TOP, plot_w, plot_h
    );
    let _ = writeln!(
        svg,
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">vertices</text>",
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 14.0
    );
    let _ = writeln!(
        svg,
        "<text x=\"16\" y=\"{:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {:.2})\">required gate time (s)</text>",
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    );

    // Reference gate time rule.
    let threshold_y = map_y(threshold);
    let _ = writeln!(
        svg,
        "<line id=\"threshold\" x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#c0392b\" stroke-dasharray=\"6 4\"/>",
        MARGIN_LEFT,
        threshold_y,
        MARGIN_LEFT + plot_w,
        threshold_y
    );
    let _ = writeln!(
        svg,
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" fill=\"#c0392b\">{:e} s</text>",
        MARGIN_LEFT + plot_w - 4.0,
        threshold_y - 5.0,
        threshold
    );

    for (x, tau) in &points {
        let _ = writeln!(
            svg,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"#2b6cb0\" fill-opacity=\"0.75\"/>",
            map_x(*x),
            map_y(*tau)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
