//! DIMACS max-flow file format.
//!
//! The dialect is strict by default: one `p max <V> <E>` problem line,
//! exactly one `n <id> s` and one `n <id> t` designator, `a <u> <v> <cap>`
//! arc lines, `c` comments, 1-based vertex ids. Unknown line types are
//! rejected unless [`DimacsOptions::permissive`] is set, in which case they
//! are skipped. Blank lines are always ignored.

use std::fmt;

use crate::graph::{Edge, FlowNetwork};

#[derive(Debug, Clone, Copy, Default)]
pub struct DimacsOptions {
    /// Skip unrecognised line types instead of rejecting the file.
    pub permissive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimacsError {
    pub line: usize,
    pub kind: DimacsErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DimacsErrorKind {
    MissingProblemLine,
    DuplicateProblemLine,
    MalformedProblemLine,
    NotMaxFlow(String),
    UnknownLineType(String),
    MalformedNodeLine,
    BadNodeDesignator(String),
    DuplicateSource,
    DuplicateSink,
    MissingSource,
    MissingSink,
    SourceEqualsSink,
    MalformedArcLine,
    ArcBeforeProblemLine,
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    SelfLoop { vertex: usize },
    NegativeCapacity,
    MalformedNumber(String),
    ArcCountMismatch { declared: usize, found: usize },
}

impl fmt::Display for DimacsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: ", self.line)?;
        match &self.kind {
            DimacsErrorKind::MissingProblemLine => write!(f, "missing `p max` problem line"),
            DimacsErrorKind::DuplicateProblemLine => write!(f, "duplicate problem line"),
            DimacsErrorKind::MalformedProblemLine => {
                write!(f, "malformed problem line, expected `p max <V> <E>`")
            }
            DimacsErrorKind::NotMaxFlow(kind) => {
                write!(f, "problem type `{}` is not `max`", kind)
            }
            DimacsErrorKind::UnknownLineType(t) => write!(f, "unknown line type `{}`", t),
            DimacsErrorKind::MalformedNodeLine => {
                write!(f, "malformed node line, expected `n <id> s|t`")
            }
            DimacsErrorKind::BadNodeDesignator(d) => {
                write!(f, "node designator `{}` is neither `s` nor `t`", d)
            }
            DimacsErrorKind::DuplicateSource => write!(f, "duplicate source designator"),
            DimacsErrorKind::DuplicateSink => write!(f, "duplicate sink designator"),
            DimacsErrorKind::MissingSource => write!(f, "no source designator in file"),
            DimacsErrorKind::MissingSink => write!(f, "no sink designator in file"),
            DimacsErrorKind::SourceEqualsSink => {
                write!(f, "source and sink designate the same vertex")
            }
            DimacsErrorKind::MalformedArcLine => {
                write!(f, "malformed arc line, expected `a <u> <v> <cap>`")
            }
            DimacsErrorKind::ArcBeforeProblemLine => {
                write!(f, "arc line before the problem line")
            }
            DimacsErrorKind::VertexOutOfRange {
                vertex,
                vertex_count,
            } => write!(f, "vertex id {} out of range 1..={}", vertex, vertex_count),
            DimacsErrorKind::SelfLoop { vertex } => {
                write!(f, "self-loop at vertex {}", vertex)
            }
            DimacsErrorKind::NegativeCapacity => write!(f, "negative capacity"),
            DimacsErrorKind::MalformedNumber(tok) => {
                write!(f, "`{}` is not a valid non-negative integer", tok)
            }
            DimacsErrorKind::ArcCountMismatch { declared, found } => write!(
                f,
                "arc count mismatch: header declares {}, file has {}",
                declared, found
            ),
        }
    }
}

impl std::error::Error for DimacsError {}

fn err(line: usize, kind: DimacsErrorKind) -> DimacsError {
    DimacsError { line, kind }
}

fn parse_count(tok: &str, line: usize) -> Result<usize, DimacsError> {
    tok.parse::<usize>()
        .map_err(|_| err(line, DimacsErrorKind::MalformedNumber(tok.to_string())))
}

fn parse_capacity(tok: &str, line: usize) -> Result<u64, DimacsError> {
    if tok.starts_with('-') {
        return Err(err(line, DimacsErrorKind::NegativeCapacity));
    }
    tok.parse::<u64>()
        .map_err(|_| err(line, DimacsErrorKind::MalformedNumber(tok.to_string())))
}

/// Parses DIMACS max-flow text in strict mode.
pub fn parse_dimacs(input: &str) -> Result<FlowNetwork, DimacsError> {
    parse_dimacs_with(input, DimacsOptions::default())
}

pub fn parse_dimacs_with(input: &str, options: DimacsOptions) -> Result<FlowNetwork, DimacsError> {
    let mut problem: Option<(usize, usize, usize)> = None; // (V, E, line)
    let mut source: Option<usize> = None;
    let mut sink: Option<usize> = None;
    let mut edges: Vec<Edge> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let mut fields = raw.split_ascii_whitespace();
        let Some(tag) = fields.next() else {
            continue; // blank line
        };
        match tag {
            "c" => continue,
            "p" => {
                if problem.is_some() {
                    return Err(err(line_no, DimacsErrorKind::DuplicateProblemLine));
                }
                let kind = fields
                    .next()
                    .ok_or_else(|| err(line_no, DimacsErrorKind::MalformedProblemLine))?;
                if kind != "max" {
                    return Err(err(line_no, DimacsErrorKind::NotMaxFlow(kind.to_string())));
                }
                let v = parse_count(
                    fields
                        .next()
                        .ok_or_else(|| err(line_no, DimacsErrorKind::MalformedProblemLine))?,
                    line_no,
                )?;
                let e = parse_count(
                    fields
                        .next()
                        .ok_or_else(|| err(line_no, DimacsErrorKind::MalformedProblemLine))?,
                    line_no,
                )?;
                if fields.next().is_some() {
                    return Err(err(line_no, DimacsErrorKind::MalformedProblemLine));
                }
                problem = Some((v, e, line_no));
            }
            "n" => {
                let Some((v_max, _, _)) = problem else {
                    return Err(err(line_no, DimacsErrorKind::ArcBeforeProblemLine));
                };
                let id = parse_count(
                    fields
                        .next()
                        .ok_or_else(|| err(line_no, DimacsErrorKind::MalformedNodeLine))?,
                    line_no,
                )?;
                let designator = fields
                    .next()
                    .ok_or_else(|| err(line_no, DimacsErrorKind::MalformedNodeLine))?;
                if fields.next().is_some() {
                    return Err(err(line_no, DimacsErrorKind::MalformedNodeLine));
                }
                if id < 1 || id > v_max {
                    return Err(err(
                        line_no,
                        DimacsErrorKind::VertexOutOfRange {
                            vertex: id,
                            vertex_count: v_max,
                        },
                    ));
                }
                match designator {
                    "s" => {
                        if source.is_some() {
                            return Err(err(line_no, DimacsErrorKind::DuplicateSource));
                        }
                        source = Some(id);
                    }
                    "t" => {
                        if sink.is_some() {
                            return Err(err(line_no, DimacsErrorKind::DuplicateSink));
                        }
                        sink = Some(id);
                    }
                    other => {
                        return Err(err(
                            line_no,
                            DimacsErrorKind::BadNodeDesignator(other.to_string()),
                        ))
                    }
                }
            }
            "a" => {
                let Some((v_max, _, _)) = problem else {
                    return Err(err(line_no, DimacsErrorKind::ArcBeforeProblemLine));
                };
                let u = parse_count(
                    fields
                        .next()
                        .ok_or_else(|| err(line_no, DimacsErrorKind::MalformedArcLine))?,
                    line_no,
                )?;
                let v = parse_count(
                    fields
                        .next()
                        .ok_or_else(|| err(line_no, DimacsErrorKind::MalformedArcLine))?,
                    line_no,
                )?;
                let cap = parse_capacity(
                    fields
                        .next()
                        .ok_or_else(|| err(line_no, DimacsErrorKind::MalformedArcLine))?,
                    line_no,
                )?;
                if fields.next().is_some() {
                    return Err(err(line_no, DimacsErrorKind::MalformedArcLine));
                }
                for vertex in [u, v] {
                    if vertex < 1 || vertex > v_max {
                        return Err(err(
                            line_no,
                            DimacsErrorKind::VertexOutOfRange {
                                vertex,
                                vertex_count: v_max,
                            },
                        ));
                    }
                }
                if u == v {
                    return Err(err(line_no, DimacsErrorKind::SelfLoop { vertex: u }));
                }
                edges.push(Edge::new(u, v, cap));
            }
            other => {
                if !options.permissive {
                    return Err(err(
                        line_no,
                        DimacsErrorKind::UnknownLineType(other.to_string()),
                    ));
                }
            }
        }
    }

    let Some((vertex_count, declared_arcs, problem_line)) = problem else {
        return Err(err(last_line.max(1), DimacsErrorKind::MissingProblemLine));
    };
    let source = source.ok_or_else(|| err(problem_line, DimacsErrorKind::MissingSource))?;
    let sink = sink.ok_or_else(|| err(problem_line, DimacsErrorKind::MissingSink))?;
    if source == sink {
        return Err(err(problem_line, DimacsErrorKind::SourceEqualsSink));
    }
    if edges.len() != declared_arcs {
        return Err(err(
            problem_line,
            DimacsErrorKind::ArcCountMismatch {
                declared: declared_arcs,
                found: edges.len(),
            },
        ));
    }

    Ok(FlowNetwork::new(vertex_count, source, sink, edges)
        .expect("per-line validation covers every network invariant"))
}

/// Emits canonical DIMACS text: problem line, source and sink designators,
/// then one arc line per edge in stored order. `parse_dimacs(write_dimacs(n))`
/// is structurally equal to `n`.
pub fn write_dimacs(network: &FlowNetwork) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "p max {} {}\n",
        network.vertex_count(),
        network.edge_count()
    ));
    out.push_str(&format!("n {} s\n", network.source()));
    out.push_str(&format!("n {} t\n", network.sink()));
    for e in network.edges() {
        out.push_str(&format!("a {} {} {}\n", e.tail, e.head, e.capacity));
    }
    out
}
