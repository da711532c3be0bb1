//! The `.smap` map document format.
//!
//! ```text
//! mode planar|surface
//! vertices N
//! edge <id> <u> <v>
//! rot <v> <dart>...        # surface mode only, darts like 3a / 3b
//! mark vertices <v>...
//! mark edges <id>...
//! color <v> <name>
//! ```
//!
//! Without `mark` lines everything is marked. With only `mark vertices`, the
//! marked edges are the host edges between marked vertices.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use islandpoly::error::ParseError;
use islandpoly::graph::{Edge, Multigraph, VertexSubset};
use islandpoly::script::{parse_index, tokens};
use islandpoly::surface::{dart_a, dart_b, dart_edge, dart_label};
use islandpoly::{Coloring, EmbeddedGraph, Host, RotationMap};

type PResult<T> = std::result::Result<T, ParseError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapDocument {
    pub graph: EmbeddedGraph,
    pub coloring: Option<Coloring>,
}

/// A token position.
#[derive(Debug, Clone, Copy, Default)]
struct Loc {
    line: usize,
    column: usize,
}

impl Loc {
    fn err(self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column, message)
    }
}

#[derive(Default)]
struct Raw {
    mode: Option<(Loc, bool)>,
    vertices: Option<(Loc, usize)>,
    edges: BTreeMap<usize, (Loc, usize, usize)>,
    rots: BTreeMap<usize, (Loc, Vec<(Loc, String)>)>,
    mark_vertices: Option<Vec<(Loc, usize)>>,
    mark_edges: Option<Vec<(Loc, usize)>>,
    colors: BTreeMap<usize, (Loc, String)>,
    first_color: Option<Loc>,
}

pub fn parse_smap(text: &str) -> PResult<MapDocument> {
    let raw = read_directives(text)?;
    build(raw)
}

fn read_directives(text: &str) -> PResult<Raw> {
    let mut raw = Raw::default();
    for (i, src) in text.lines().enumerate() {
        let line = i + 1;
        let toks = tokens(src);
        let Some(&(col, word)) = toks.first() else {
            continue;
        };
        let at = |k: usize| Loc {
            line,
            column: toks.get(k).map_or(col, |t| t.0),
        };
        let here = at(0);
        let args = &toks[1..];
        let need = |k: usize| -> PResult<()> {
            if args.len() == k {
                Ok(())
            } else {
                Err(at(k + 1).err(format!("{word} takes {k} argument(s), got {}", args.len())))
            }
        };
        let n = raw.vertices.map(|v| v.1);
        let vertex = |k: usize| -> PResult<usize> {
            let v = parse_index(line, toks[k])?;
            match n {
                Some(n) if v >= n => Err(at(k).err(format!("vertex {v} out of range (graph has {n} vertices)"))),
                _ => Ok(v),
            }
        };
        let require_vertices = || -> PResult<()> {
            if n.is_none() {
                return Err(here.err(format!("{word} before the vertices directive")));
            }
            Ok(())
        };
        match word {
            "mode" => {
                need(1)?;
                if raw.mode.is_some() {
                    return Err(here.err("mode declared twice"));
                }
                let surface = match args[0].1 {
                    "planar" => false,
                    "surface" => true,
                    other => return Err(at(1).err(format!("unknown mode {other:?}"))),
                };
                raw.mode = Some((here, surface));
            }
            "vertices" => {
                need(1)?;
                if raw.vertices.is_some() {
                    return Err(here.err("vertices declared twice"));
                }
                raw.vertices = Some((here, parse_index(line, args[0])?));
            }
            "edge" => {
                require_vertices()?;
                need(3)?;
                let id = parse_index(line, args[0])?;
                let (u, v) = (vertex(2)?, vertex(3)?);
                if raw.edges.insert(id, (at(1), u, v)).is_some() {
                    return Err(at(1).err(format!("duplicate edge id {id}")));
                }
            }
            "rot" => {
                require_vertices()?;
                if args.is_empty() {
                    return Err(at(1).err("rot needs a vertex"));
                }
                let v = vertex(1)?;
                let darts = (2..toks.len()).map(|k| (at(k), toks[k].1.to_string())).collect();
                if raw.rots.insert(v, (here, darts)).is_some() {
                    return Err(at(1).err(format!("rotation at vertex {v} given twice")));
                }
            }
            "mark" => {
                require_vertices()?;
                let Some(&(_, what)) = args.first() else {
                    return Err(at(1).err("mark needs `vertices` or `edges`"));
                };
                match what {
                    "vertices" => {
                        let list = raw.mark_vertices.get_or_insert_with(Vec::new);
                        for k in 2..toks.len() {
                            list.push((at(k), vertex(k)?));
                        }
                    }
                    "edges" => {
                        let list = raw.mark_edges.get_or_insert_with(Vec::new);
                        for k in 2..toks.len() {
                            list.push((at(k), parse_index(line, toks[k])?));
                        }
                    }
                    other => return Err(at(1).err(format!("cannot mark {other:?}"))),
                }
            }
            "color" => {
                require_vertices()?;
                need(2)?;
                let v = vertex(1)?;
                raw.first_color.get_or_insert(here);
                if raw.colors.insert(v, (at(1), args[1].1.to_string())).is_some() {
                    return Err(at(1).err(format!("vertex {v} colored twice")));
                }
            }
            other => return Err(here.err(format!("unknown directive {other:?}"))),
        }
    }
    Ok(raw)
}

fn build(raw: Raw) -> PResult<MapDocument> {
    let Some((vloc, n)) = raw.vertices else {
        return Err(ParseError::new(1, 1, "missing vertices directive"));
    };
    let (mode_loc, surface) = raw.mode.unwrap_or((vloc, false));

    let count = raw.edges.len();
    for (i, (&id, &(loc, _, _))) in raw.edges.iter().enumerate() {
        if i != id {
            return Err(loc.err(format!("edge ids must be dense 0..{count}, missing id {i}")));
        }
    }
    let edges: Vec<Edge> = raw.edges.iter().map(|(&id, &(_, u, v))| Edge { id, u, v }).collect();
    let graph = Multigraph::new(n, edges).map_err(|e| vloc.err(e.to_string()))?;

    let host = if surface {
        Host::Surface(rotation_map(&raw, graph, mode_loc)?)
    } else {
        if let Some((_, (loc, _))) = raw.rots.iter().next() {
            return Err(loc.err("rot requires mode surface"));
        }
        Host::Planar(graph)
    };

    let g = match &host {
        Host::Planar(g) => g,
        Host::Surface(m) => m.graph(),
    };
    let vertices = match &raw.mark_vertices {
        Some(list) => VertexSubset::from_members(n, list.iter().map(|p| p.1)).map_err(|e| vloc.err(e.to_string()))?,
        None => VertexSubset::full(n),
    };
    let marked_edges: Vec<usize> = match &raw.mark_edges {
        Some(list) => {
            let mut seen = vec![false; g.edge_count()];
            let mut out = Vec::new();
            for &(loc, e) in list {
                let edge = g
                    .edge(e)
                    .ok_or_else(|| loc.err(format!("edge {e} out of range (graph has {} edges)", g.edge_count())))?;
                if let Some(x) = [edge.u, edge.v].into_iter().find(|&x| !vertices.contains(x)) {
                    return Err(loc.err(format!("marked edge {e} has unmarked endpoint {x}")));
                }
                if !std::mem::replace(&mut seen[e], true) {
                    out.push(e);
                }
            }
            out
        }
        None => g
            .edges()
            .iter()
            .filter(|e| vertices.contains(e.u) && vertices.contains(e.v))
            .map(|e| e.id)
            .collect(),
    };
    let eg = EmbeddedGraph::with_marks(host, vertices, &marked_edges).map_err(|e| vloc.err(e.to_string()))?;

    let coloring = match raw.first_color {
        None => None,
        Some(first) => {
            for (&v, &(loc, _)) in &raw.colors {
                if !eg.is_vertex_marked(v) {
                    return Err(loc.err(format!("vertex {v} is not marked and cannot be colored")));
                }
            }
            if let Some(v) = eg.marked_vertices().into_iter().find(|v| !raw.colors.contains_key(v)) {
                return Err(first.err(format!("marked vertex {v} has no color")));
            }
            let assignment: Vec<(usize, &str)> = raw.colors.iter().map(|(&v, (_, c))| (v, c.as_str())).collect();
            Some(Coloring::from_names(&eg, &assignment).map_err(|e| first.err(e.to_string()))?)
        }
    };
    Ok(MapDocument { graph: eg, coloring })
}

fn parse_dart(loc: Loc, tok: &str, edges: usize) -> PResult<usize> {
    let bad = || loc.err(format!("malformed dart {tok:?}, expected <edge>a or <edge>b"));
    let (num, side) = tok.split_at(tok.len().saturating_sub(1));
    let e: usize = num.parse().map_err(|_| bad())?;
    let d = match side {
        "a" => dart_a(e),
        "b" => dart_b(e),
        _ => return Err(bad()),
    };
    if e >= edges {
        return Err(loc.err(format!("dart {tok} names edge {e}, but the graph has {edges} edges")));
    }
    Ok(d)
}

fn rotation_map(raw: &Raw, graph: Multigraph, mode_loc: Loc) -> PResult<RotationMap> {
    let n = graph.vertex_count();
    let darts = 2 * graph.edge_count();
    let mut placed = vec![false; darts];
    let mut rotations = vec![Vec::new(); n];
    for (&v, (_, list)) in &raw.rots {
        for &(loc, ref tok) in list {
            let d = parse_dart(loc, tok, graph.edge_count())?;
            if std::mem::replace(&mut placed[d], true) {
                return Err(loc.err(format!("dart {} placed more than once", dart_label(d))));
            }
            let e = &graph.edges()[dart_edge(d)];
            let expected = if d % 2 == 0 { e.u } else { e.v };
            if expected != v {
                return Err(loc.err(format!(
                    "dart {} placed at vertex {v}, but its edge ends at vertex {expected}",
                    dart_label(d)
                )));
            }
            rotations[v].push(d);
        }
    }
    if let Some(d) = placed.iter().position(|p| !p) {
        return Err(mode_loc.err(format!("dart {} is missing from every rotation", dart_label(d))));
    }
    RotationMap::new(graph, rotations).map_err(|e| mode_loc.err(e.to_string()))
}

/// Canonical text for a document; `parse_smap` reads it back unchanged.
pub fn render_smap(doc: &MapDocument) -> String {
    let eg = &doc.graph;
    let g = eg.host_graph();
    let mut out = String::new();
    let _ = writeln!(out, "mode {}", if eg.is_planar_mode() { "planar" } else { "surface" });
    let _ = writeln!(out, "vertices {}", g.vertex_count());
    for e in g.edges() {
        let _ = writeln!(out, "edge {} {} {}", e.id, e.u, e.v);
    }
    if let Some(m) = eg.map() {
        for (v, rot) in m.rotations().iter().enumerate() {
            if rot.is_empty() {
                continue;
            }
            let labels: Vec<String> = rot.iter().map(|&d| dart_label(d)).collect();
            let _ = writeln!(out, "rot {v} {}", labels.join(" "));
        }
    }
    let marked = eg.marked_vertices();
    if marked.len() != g.vertex_count() {
        let _ = writeln!(out, "mark vertices{}", list(&marked));
    }
    let edges = eg.marked_edges();
    let induced: Vec<usize> = g
        .edges()
        .iter()
        .filter(|e| eg.is_vertex_marked(e.u) && eg.is_vertex_marked(e.v))
        .map(|e| e.id)
        .collect();
    if edges != induced {
        let _ = writeln!(out, "mark edges{}", list(&edges));
    }
    if let Some(col) = &doc.coloring {
        for v in marked {
            if let Some(c) = col.color_of(v) {
                let _ = writeln!(out, "color {v} {}", col.name(c));
            }
        }
    }
    out
}

fn list(xs: &[usize]) -> String {
    xs.iter().map(|x| format!(" {x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use islandpoly::engine::beta;
    use islandpoly::IntPoly;

    const C4: &str = "mode planar\nvertices 4\nedge 0 0 1\nedge 1 1 2\nedge 2 2 3\nedge 3 3 0\n";
    const TORUS: &str = "\
mode surface
vertices 1
edge 0 0 0
edge 1 0 0
rot 0 0a 1a 0b 1b
";

    #[test]
    fn planar_cycle() {
        let doc = parse_smap(C4).unwrap();
        assert_eq!(beta(&doc.graph).unwrap().total, IntPoly::from_i64s(&[4, 8, 4, 2]));
        assert!(doc.coloring.is_none());
    }

    #[test]
    fn torus_bouquet() {
        let doc = parse_smap(TORUS).unwrap();
        let m = doc.graph.map().unwrap();
        assert_eq!((m.genus(), m.face_count()), (1, 1));
    }

    #[test]
    fn repeated_dart_is_named() {
        let e = parse_smap("mode surface\nvertices 1\nedge 0 0 0\nrot 0 0a 0b 0a\n").unwrap_err();
        assert_eq!((e.line, e.column), (4, 13));
        assert!(e.message.contains("0a"), "{e}");
    }

    #[test]
    fn located_errors() {
        let cases: &[(&str, (usize, usize), &str)] = &[
            ("vertices 2\nfoo 1\n", (2, 1), "unknown directive"),
            ("vertices 2\nedge 0 0 5\n", (2, 10), "out of range"),
            ("edge 0 0 1\n", (1, 1), "before the vertices"),
            ("vertices 2\nedge 1 0 1\n", (2, 6), "dense"),
            ("vertices 3\nedge 0 0 1\nmark vertices 0 2\nmark edges 0\n", (4, 12), "unmarked endpoint"),
            ("mode surface\nvertices 2\nedge 0 0 1\nrot 0 0a\nrot 1 0a\n", (5, 7), "more than once"),
            ("mode surface\nvertices 2\nedge 0 0 1\nrot 0 0b\nrot 1 0a\n", (4, 7), "ends at vertex 1"),
            ("mode surface\nvertices 2\nedge 0 0 1\nrot 0 0a\n", (1, 1), "missing"),
            ("vertices 2\nedge 0 0 1\nrot 0 0a\n", (3, 1), "mode surface"),
            ("vertices 2\nedge 0 0 1\ncolor 0 red\n", (3, 1), "no color"),
            ("mode sphere\n", (1, 6), "unknown mode"),
        ];
        for (text, loc, needle) in cases {
            let e = parse_smap(text).unwrap_err();
            assert_eq!((e.line, e.column), *loc, "{text}: {e}");
            assert!(e.message.contains(needle), "{text}: {e}");
        }
    }

    #[test]
    fn marks_and_colors_round_trip() {
        let text = "vertices 4\nedge 0 0 1\nedge 1 1 2\nedge 2 2 3\nmark vertices 0 1 2\nmark edges 1\ncolor 2 b\ncolor 0 a\ncolor 1 a\n";
        let doc = parse_smap(text).unwrap();
        assert_eq!(doc.graph.marked_vertices(), vec![0, 1, 2]);
        assert_eq!(doc.graph.marked_edges(), vec![1]);
        assert_eq!(doc.coloring.as_ref().unwrap().color_count(), 2);
        let back = parse_smap(&render_smap(&doc)).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn default_edge_marks_follow_vertices() {
        let doc = parse_smap("vertices 3\nedge 0 0 1\nedge 1 1 2\nmark vertices 0 1\n").unwrap();
        assert_eq!(doc.graph.marked_edges(), vec![0]);
        let torus = parse_smap(TORUS).unwrap();
        assert_eq!(parse_smap(&render_smap(&torus)).unwrap(), torus);
    }
}
