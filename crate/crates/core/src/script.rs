//! Replayable operation scripts, one operation per line:
//!
//! ```text
//! loop v [p q]
//! par v w [p q]
//! subdiv e
//! contract e
//! bridge v w [p q]
//! wedge v w [p q]
//! ```
//!
//! `p q` are rotation positions for the new edge's darts and are required in
//! surface mode. `#` starts a comment.

use std::fmt;

use crate::embedded::EmbeddedGraph;
use crate::error::{Error, ParseError, Result};
use crate::graph::Multigraph;
use crate::transforms::{add_parallel_edge, add_self_loop, bridge_within, contract, subdivide, wedge_within, InsertionSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScriptOp {
    Loop { v: usize, ins: Option<InsertionSpec> },
    Parallel { v: usize, w: usize, ins: Option<InsertionSpec> },
    Subdivide { e: usize },
    Contract { e: usize },
    Bridge { v: usize, w: usize, ins: Option<InsertionSpec> },
    Wedge { v: usize, w: usize, ins: Option<InsertionSpec> },
}

impl ScriptOp {
    pub fn apply(&self, eg: &EmbeddedGraph) -> Result<EmbeddedGraph> {
        match *self {
            ScriptOp::Loop { v, ins } => add_self_loop(eg, v, ins),
            ScriptOp::Parallel { v, w, ins } => add_parallel_edge(eg, v, w, ins),
            ScriptOp::Subdivide { e } => subdivide(eg, e),
            ScriptOp::Contract { e } => Ok(contract(eg, e)?.0),
            ScriptOp::Bridge { v, w, ins } => bridge_within(eg, v, w, ins),
            ScriptOp::Wedge { v, w, ins } => wedge_within(eg, v, w, ins),
        }
    }
}

impl fmt::Display for ScriptOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pos = |f: &mut fmt::Formatter<'_>, ins: &Option<InsertionSpec>| match ins {
            Some(i) => write!(f, " {} {}", i.first, i.second),
            None => Ok(()),
        };
        match self {
            ScriptOp::Loop { v, ins } => {
                write!(f, "loop {v}")?;
                pos(f, ins)
            }
            ScriptOp::Parallel { v, w, ins } => {
                write!(f, "par {v} {w}")?;
                pos(f, ins)
            }
            ScriptOp::Subdivide { e } => write!(f, "subdiv {e}"),
            ScriptOp::Contract { e } => write!(f, "contract {e}"),
            ScriptOp::Bridge { v, w, ins } => {
                write!(f, "bridge {v} {w}")?;
                pos(f, ins)
            }
            ScriptOp::Wedge { v, w, ins } => {
                write!(f, "wedge {v} {w}")?;
                pos(f, ins)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub line: usize,
    pub op: ScriptOp,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Script {
    pub steps: Vec<Step>,
}

/// Whitespace-separated tokens of one line with their 1-based columns,
/// stopping at `#`.
pub fn tokens(line: &str) -> Vec<(usize, &str)> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in body.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &body[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &body[s..]));
    }
    out.into_iter()
        .map(|(s, t)| (body[..s].chars().count() + 1, t))
        .collect()
}

pub fn parse_index(line: usize, (col, tok): (usize, &str)) -> std::result::Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| ParseError::new(line, col, format!("expected a non-negative integer, found {tok:?}")))
}

impl Script {
    pub fn new(ops: impl IntoIterator<Item = ScriptOp>) -> Self {
        Script {
            steps: ops
                .into_iter()
                .enumerate()
                .map(|(i, op)| Step { line: i + 1, op })
                .collect(),
        }
    }

    pub fn parse(text: &str) -> std::result::Result<Self, ParseError> {
        let mut steps = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let toks = tokens(raw);
            let Some(&(col, word)) = toks.first() else {
                continue;
            };
            let args = &toks[1..];
            let arity = |counts: &[usize]| -> std::result::Result<(), ParseError> {
                if counts.contains(&args.len()) {
                    Ok(())
                } else {
                    let at = args.get(counts.iter().max().copied().unwrap_or(0)).map_or(col, |t| t.0);
                    Err(ParseError::new(
                        line,
                        at,
                        format!("{word} takes {} argument(s), got {}", join(counts), args.len()),
                    ))
                }
            };
            let idx = |k: usize| parse_index(line, args[k]);
            let ins = |k: usize| -> std::result::Result<Option<InsertionSpec>, ParseError> {
                if args.len() > k {
                    Ok(Some(InsertionSpec::new(idx(k)?, idx(k + 1)?)))
                } else {
                    Ok(None)
                }
            };
            let op = match word {
                "loop" => {
                    arity(&[1, 3])?;
                    ScriptOp::Loop { v: idx(0)?, ins: ins(1)? }
                }
                "par" | "bridge" | "wedge" => {
                    arity(&[2, 4])?;
                    let (v, w, ins) = (idx(0)?, idx(1)?, ins(2)?);
                    match word {
                        "par" => ScriptOp::Parallel { v, w, ins },
                        "bridge" => ScriptOp::Bridge { v, w, ins },
                        _ => ScriptOp::Wedge { v, w, ins },
                    }
                }
                "subdiv" => {
                    arity(&[1])?;
                    ScriptOp::Subdivide { e: idx(0)? }
                }
                "contract" => {
                    arity(&[1])?;
                    ScriptOp::Contract { e: idx(0)? }
                }
                other => return Err(ParseError::new(line, col, format!("unknown operation {other:?}"))),
            };
            steps.push(Step { line, op });
        }
        Ok(Script { steps })
    }

    /// Runs every step in order; a failure names the script line.
    pub fn apply(&self, eg: &EmbeddedGraph) -> Result<EmbeddedGraph> {
        let mut cur = eg.clone();
        for step in &self.steps {
            cur = step.op.apply(&cur).map_err(|e| Error::At {
                line: step.line,
                source: Box::new(e),
            })?;
        }
        Ok(cur)
    }

    pub fn render(&self) -> String {
        self.steps.iter().map(|s| format!("{}\n", s.op)).collect()
    }
}

fn join(counts: &[usize]) -> String {
    counts
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" or ")
}

/// One step of a tree-cycle construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdmissibleOp {
    /// A loop at `vertex`, subdivided `subdivisions` times.
    SelfLoop { vertex: usize, subdivisions: usize },
    /// A copy of non-loop `edge`, subdivided `subdivisions` times.
    SimilarAdjacency { edge: usize, subdivisions: usize },
}

/// The planar script that applies `ops` to `tree`. Edge and vertex ids in
/// later ops refer to the graph built so far.
pub fn tree_cycle_script(tree: &Multigraph, ops: &[AdmissibleOp]) -> Result<Script> {
    if tree.vertex_count() < 3 {
        return Err(Error::Range("seed tree needs at least 3 vertices".into()));
    }
    if tree.edge_count() + 1 != tree.vertex_count() || crate::graph::islands(tree).len() != 1 {
        return Err(Error::Hypothesis("seed graph is not a tree".into()));
    }
    let mut n = tree.vertex_count();
    let mut pairs: Vec<(usize, usize)> = tree.edges().iter().map(|e| (e.u, e.v)).collect();
    let mut out = Vec::new();
    let split = |e: usize, n: &mut usize, pairs: &mut Vec<(usize, usize)>, out: &mut Vec<ScriptOp>| {
        let (u, w) = pairs[e];
        let z = *n;
        *n += 1;
        pairs[e] = (u, z);
        pairs.push((z, w));
        out.push(ScriptOp::Subdivide { e });
    };
    for op in ops {
        match *op {
            AdmissibleOp::SelfLoop { vertex, subdivisions } => {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { vertex, count: n });
                }
                out.push(ScriptOp::Loop { v: vertex, ins: None });
                pairs.push((vertex, vertex));
                let e = pairs.len() - 1;
                for _ in 0..subdivisions {
                    split(e, &mut n, &mut pairs, &mut out);
                }
            }
            AdmissibleOp::SimilarAdjacency { edge, subdivisions } => {
                let &(u, w) = pairs.get(edge).ok_or(Error::EdgeOutOfRange {
                    edge,
                    count: pairs.len(),
                })?;
                if u == w {
                    return Err(Error::SelfLoop(edge));
                }
                out.push(ScriptOp::Parallel { v: u, w, ins: None });
                pairs.push((u, w));
                let e = pairs.len() - 1;
                for _ in 0..subdivisions {
                    split(e, &mut n, &mut pairs, &mut out);
                }
            }
        }
    }
    Ok(Script::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::beta;
    use crate::generators;
    use crate::poly::IntPoly;

    #[test]
    fn parse_render_round_trip() {
        let text = "loop 0\npar 0 1 2 3 # comment\n\nsubdiv 4\ncontract 2\nbridge 0 5\nwedge 1 2 0 0\n";
        let s = Script::parse(text).unwrap();
        assert_eq!(s.steps.len(), 6);
        assert_eq!(s.steps[2].line, 4);
        assert_eq!(Script::parse(&s.render()).unwrap().render(), s.render());
    }

    #[test]
    fn parse_errors_are_located() {
        let e = Script::parse("loop 0\nsplit 3\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
        let e = Script::parse("par 0 x").unwrap_err();
        assert_eq!((e.line, e.column), (1, 7));
        let e = Script::parse("  subdiv 1 2").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(e.message.contains("takes 1"));
    }

    #[test]
    fn apply_reports_the_failing_line() {
        let eg = EmbeddedGraph::planar(generators::path(3));
        let s = Script::parse("subdiv 0\ncontract 9\n").unwrap();
        assert!(matches!(s.apply(&eg), Err(Error::At { line: 2, .. })));
    }

    #[test]
    fn path_to_cycle_by_script() {
        let eg = EmbeddedGraph::planar(generators::path(4));
        let c4 = Script::parse("par 0 3").unwrap().apply(&eg).unwrap();
        assert_eq!(beta(&c4).unwrap().total, IntPoly::from_i64s(&[4, 8, 4, 2]));
    }

    #[test]
    fn empty_tree_cycle_script_is_the_tree() {
        let t = generators::path(5);
        let s = tree_cycle_script(&t, &[]).unwrap();
        assert!(s.steps.is_empty());
        assert!(tree_cycle_script(&generators::path(2), &[]).is_err());
        assert!(tree_cycle_script(&generators::cycle(4), &[]).is_err());
    }

    #[test]
    fn tree_cycle_graphs_vanish_at_minus_one() {
        let t = generators::path(4);
        let ops = [
            AdmissibleOp::SelfLoop { vertex: 1, subdivisions: 2 },
            AdmissibleOp::SimilarAdjacency { edge: 2, subdivisions: 1 },
        ];
        let g = tree_cycle_script(&t, &ops)
            .unwrap()
            .apply(&EmbeddedGraph::planar(t))
            .unwrap();
        assert_eq!(g.n(), 7);
        assert_eq!(beta(&g).unwrap().at_minus_one(), 0.into());
    }
}
