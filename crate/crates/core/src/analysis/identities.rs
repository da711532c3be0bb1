//! Checkable polynomial identities. Each kind rebuilds every graph its two
//! sides mention, enumerates each β independently and returns LHS − RHS.

use std::collections::HashSet;

use crate::coloring::{merge_colors, Coloring};
use crate::embedded::EmbeddedGraph;
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::graph::{Multigraph, VertexSubset};
use crate::poly::IntPoly;
use crate::surface::RotationMap;
use crate::transforms::{add_parallel_edge, add_self_loop, combine, contract, subdivide, CombineKind, InsertionSpec};

use super::counts::{pants_diff, pants_graphs};

/// An embedded graph with an optional vertex coloring.
#[derive(Debug, Clone)]
pub struct Operand {
    pub graph: EmbeddedGraph,
    pub coloring: Option<Coloring>,
}

impl Operand {
    pub fn plain(graph: EmbeddedGraph) -> Self {
        Operand { graph, coloring: None }
    }

    pub fn colored(graph: EmbeddedGraph, coloring: Coloring) -> Self {
        Operand {
            graph,
            coloring: Some(coloring),
        }
    }
}

/// One identity to check: the kind name plus whatever designations that
/// kind reads. Unused fields are ignored.
#[derive(Debug, Clone)]
pub struct IdentityInstance {
    pub kind: String,
    pub operands: Vec<Operand>,
    pub edge: Option<usize>,
    pub vertices: Vec<usize>,
    pub colors: Vec<String>,
    pub insertion: Option<InsertionSpec>,
}

impl IdentityInstance {
    pub fn new(kind: &str, operands: Vec<Operand>) -> Self {
        IdentityInstance {
            kind: kind.to_string(),
            operands,
            edge: None,
            vertices: Vec::new(),
            colors: Vec::new(),
            insertion: None,
        }
    }

    pub fn with_edge(mut self, e: usize) -> Self {
        self.edge = Some(e);
        self
    }

    pub fn with_vertices(mut self, vs: &[usize]) -> Self {
        self.vertices = vs.to_vec();
        self
    }

    pub fn with_colors(mut self, cs: &[&str]) -> Self {
        self.colors = cs.iter().map(|c| c.to_string()).collect();
        self
    }

    pub fn with_insertion(mut self, ins: InsertionSpec) -> Self {
        self.insertion = Some(ins);
        self
    }

    fn operands(&self, k: usize) -> Result<&[Operand]> {
        if self.operands.len() != k {
            return Err(hypothesis(format!(
                "{} takes {k} graph(s), got {}",
                self.kind,
                self.operands.len()
            )));
        }
        Ok(&self.operands)
    }

    fn graph(&self) -> Result<&EmbeddedGraph> {
        Ok(&self.operands(1)?[0].graph)
    }

    fn edge(&self) -> Result<usize> {
        self.edge
            .ok_or_else(|| hypothesis(format!("{} needs an edge", self.kind)))
    }

    fn vertices(&self, k: usize) -> Result<&[usize]> {
        if self.vertices.len() != k {
            return Err(hypothesis(format!(
                "{} takes {k} vertex designation(s), got {}",
                self.kind,
                self.vertices.len()
            )));
        }
        Ok(&self.vertices)
    }

    fn colors(&self, k: usize) -> Result<&[String]> {
        if self.colors.len() != k {
            return Err(hypothesis(format!(
                "{} takes {k} color name(s), got {}",
                self.kind,
                self.colors.len()
            )));
        }
        Ok(&self.colors)
    }
}

pub trait Identity: Send + Sync {
    fn name(&self) -> &'static str;
    /// The identity as a formula, for help output.
    fn formula(&self) -> &'static str;
    fn residual(&self, inst: &IdentityInstance, engine: &Engine) -> Result<IntPoly>;
}

pub struct IdentityRegistry {
    kinds: Vec<Box<dyn Identity>>,
}

impl IdentityRegistry {
    pub fn empty() -> Self {
        IdentityRegistry { kinds: Vec::new() }
    }

    /// Every identity kind this crate knows.
    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Disjoint));
        r.register(Box::new(Appendix));
        r.register(Box::new(Bridge));
        r.register(Box::new(Wedge));
        r.register(Box::new(Contract));
        r.register(Box::new(Split));
        r.register(Box::new(ColorMerge));
        r.register(Box::new(ColoredDisjoint));
        r.register(Box::new(ColoredAppendix));
        r.register(Box::new(ColoredBridge));
        r.register(Box::new(Pants));
        r.register(Box::new(SelfLoop));
        r.register(Box::new(ParallelEdge));
        r
    }

    /// Registers a kind, replacing any kind of the same name.
    pub fn register(&mut self, kind: Box<dyn Identity>) {
        self.kinds.retain(|k| k.name() != kind.name());
        self.kinds.push(kind);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Identity> {
        self.kinds
            .iter()
            .find(|k| k.name() == name)
            .map(|k| k.as_ref())
            .ok_or_else(|| Error::Unknown {
                what: "identity",
                name: name.to_string(),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.kinds.iter().map(|k| k.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Identity> {
        self.kinds.iter().map(|k| k.as_ref())
    }

    pub fn check(&self, inst: &IdentityInstance, engine: &Engine) -> Result<IntPoly> {
        self.get(&inst.kind)?.residual(inst, engine)
    }
}

impl Default for IdentityRegistry {
    fn default() -> Self {
        Self::standard()
    }
}

fn hypothesis(msg: impl Into<String>) -> Error {
    Error::Hypothesis(msg.into())
}

fn pow(k: usize) -> IntPoly {
    IntPoly::one_plus_x_pow(k)
}

fn x() -> IntPoly {
    IntPoly::monomial(1, 1)
}

fn beta(engine: &Engine, eg: &EmbeddedGraph) -> Result<IntPoly> {
    Ok(engine.beta(eg)?.total)
}

fn colored(engine: &Engine, eg: &EmbeddedGraph, col: &Coloring) -> Result<IntPoly> {
    engine.beta_colored(eg, col)
}

/// A single marked vertex in the same mode as `like`.
fn point_like(like: &EmbeddedGraph) -> Result<EmbeddedGraph> {
    let g = Multigraph::empty(1);
    Ok(if like.is_planar_mode() {
        EmbeddedGraph::planar(g)
    } else {
        EmbeddedGraph::surface(RotationMap::new(g, vec![Vec::new()])?)
    })
}

/// Host vertex ids of the marked vertices of `eg` colored `name`.
fn class_of(col: &Coloring, name: &str) -> Result<Vec<usize>> {
    Ok(col.class(col.id(name)?))
}

fn remove_colored(eg: &EmbeddedGraph, col: &Coloring, vs: &[usize]) -> Result<(EmbeddedGraph, Coloring)> {
    let h = eg.remove_vertices(vs)?;
    let c = col.restrict(&h);
    Ok((h, c))
}

fn coloring_of<'a>(op: &'a Operand, kind: &str) -> Result<&'a Coloring> {
    let col = op
        .coloring
        .as_ref()
        .ok_or_else(|| hypothesis(format!("{kind} needs a coloring on every graph")))?;
    col.validate(&op.graph)?;
    Ok(col)
}

fn require_disjoint_colors(a: &Coloring, b: &Coloring) -> Result<()> {
    let left: HashSet<&String> = a.names().iter().collect();
    if let Some(shared) = b.names().iter().find(|n| left.contains(n)) {
        return Err(hypothesis(format!("color {shared:?} is used on both sides")));
    }
    Ok(())
}

/// Coloring of a two-graph combination whose second host was offset by
/// `offset` vertices. Vertices that are not in either input stay uncolored.
fn joined_coloring(out: &EmbeddedGraph, a: &Coloring, b: &Coloring, offset: usize) -> Result<Coloring> {
    let mut assignment: Vec<(usize, String)> = Vec::new();
    for (v, c) in a.assignment().iter().enumerate() {
        if let Some(c) = c {
            assignment.push((v, a.name(*c).to_string()));
        }
    }
    for (v, c) in b.assignment().iter().enumerate() {
        if let Some(c) = c {
            assignment.push((v + offset, b.name(*c).to_string()));
        }
    }
    Coloring::from_names(out, &assignment)
}

pub struct Disjoint;
pub struct Appendix;
pub struct Bridge;
pub struct Wedge;
pub struct Contract;
pub struct Split;
pub struct ColorMerge;
pub struct ColoredDisjoint;
pub struct ColoredAppendix;
pub struct ColoredBridge;
pub struct Pants;
pub struct SelfLoop;
pub struct ParallelEdge;

impl Identity for Disjoint {
    fn name(&self) -> &'static str {
        "disjoint"
    }

    fn formula(&self) -> &'static str {
        "β(G1 ⊔ … ⊔ Gk) = Σ (1+x)^(n−ni) β(Gi)"
    }

    fn residual(&self, inst: &IdentityInstance, engine: &Engine) -> Result<IntPoly> {
        if inst.operands.is_empty() {
            return Err(hypothesis("disjoint needs at least one graph"));
        }
        let mut union = inst.operands[0].graph.clone();
        for op in &inst.operands[1..] {
            union = combine(CombineKind::Disjoint, &union, &op.graph, None, None)?;
        }
        let n: usize = inst.operands.iter().map(|op| op.graph.n()).sum();
        let mut rhs = IntPoly::zero();
        for op in &inst.operands {
            rhs += &(pow(n - op.graph.n()) * beta(engine, &op.graph)?);
        }
        Ok(beta(engine, &union)? - rhs)
    }
}

impl Identity for Appendix {
    fn name(&self) -> &'static str {
        "appendix"
    }

    fn formula(&self) -> &'static str {
        "β(G_app) = (1+x) β(G) + (1+x)^(n−1)"
    }

    fn residual(&self, inst: &IdentityInstance, engine: &Engine) -> Result<IntPoly> {
        let g = inst.graph()?;
        let v = inst.vertices(1)?[0];
        let app = combine(CombineKind::Bridge, g, &point_like(g)?, Some((v, 0)), None)?;
        let n = g.n();
        let rhs = pow(1) * beta(engine, g)? + pow(n - 1);
        Ok(beta(engine, &app)? - rhs)
    }
}

impl Identity for Bridge {
    fn name(&self) -> &'static str {
        "bridge"
    }

    fn formula(&self) -> &'static str {
        "β(bridge(G1, G2)) = β(G1 ⊔ G2) − x (1+x)^(n1+n2−2)"
    }

    fn residual(&self, inst: &IdentityInstance, engine: &Engine) -> Result<IntPoly> {
        let ops = inst.operands(2)?;
        let at = inst.vertices(2)?;
        let (g1, g2) = (&ops[0].graph, &ops[1].graph);
        let bridged = combine(CombineKind::Bridge, g1, g2, Some((at[0], at[1])), None)?;
        let union = combine(CombineKind::Disjoint, g1, g2, None, None)?;
        let rhs = beta(engine, &union)? - x() * pow(g1.n() + g2.n() - 2);
        Ok(beta(engine, &bridged)? - rhs)
    }
}

impl Identity for Wedge {
    fn name(&self) -> &'static str {
        "wedge"
    }

    fn formula(&self) -> &'static str {
        "β(G1 ∨ G2) = (1+x)^(n1−1) β(G2) + (1+x)^(n2−1) β(G1) − (1+x)^(n1+n2−2)"
    }

    fn residual(&self, inst: &IdentityInstance, engine: &Engine) -> Result<IntPoly> {
        let ops = inst.operands(2)?;
        let at = inst.vertices(2)?;
        let (g1, g2) = (&ops[0].graph, &ops[1].graph);
        let wedged = combine(CombineKind::Wedge, g1, g2, Some((at[0], at[1])), None)?;
        let (n1, n2) = (g1.n(), g2.n());
        let rhs = pow(n1 - 1) * beta(engine, g2)? + pow(n2 - 1) * beta(engine, g1)? - pow(n1 + n2 - 2);
        Ok(beta(engine, &wedged)? - rhs)
    }
}

impl Identity for Contract {
    fn name(&self) -> &'static str {
        "contract"
    }

    fn formula(&self) -> &'static str {
        "β(G) = x β(G/e) + β(G−v) + β(G−w) − (1+x) β(G−{v,w})"
    }

    fn residual(&self, inst: &IdentityInstance, engine: &Engine) -> Result<IntPoly> {
        let g = inst.graph()?;
        let e = inst.edge()?;
        let (contracted, _) = contract(g, e)?;
        let edge = g.host_graph().edges()[e];
        let (v, w) = (edge.u, edge.v);
        let rhs = x() * beta(engine, &contracted)? + beta(engine, &g.remove_vertex(v)?)?
            + beta(engine, &g.remove_vertex(w)?)?
            - pow(1) * beta(engine, &g.remove_vertices(&[v, w])?)?;
        Ok(beta(engine, g)? - rhs)
    }
}

impl Identity for Split {
    fn name(&self) -> &'static str {
        "split"
    }

    fn formula(&self) -> &'static str {
        "β(G_sp) = x β(G) + β(G−e) + (1+x)^(n−2), with (1+x)^(n−1) when e is a loop"
    }

    fn residual(&self, inst: &IdentityInstance, engine: &Engine) -> Result<IntPoly> {
        let g = inst.graph()?;
        let e = inst.edge()?;
        let sp = subdivide(g, e)?;
        let n = g.n();
        // A subdivided loop leaves the new vertex isolated in G_sp − v, so
        // the pendant correction disappears and the exponent moves up by one.
        let k = if g.host_graph().edges()[e].is_loop() { n - 1 } else { n - 2 };
        let rhs = x() * beta(engine, g)? + beta(engine, &g.remove_edge(e)?)? + pow(k);
        Ok(beta(engine, &sp)? - rhs)
    }
}

impl Identity for ColorMerge {
    fn name(&self) -> &'static str {
        "color-merge"
    }

    fn formula(&self) -> &'static str {
        "β(G) = x β(G[c=c']) + β(G≠c) + β(G≠c') − (1+x) β(G≠c,c')"
    }

    fn residual(&self, inst: &IdentityInstance, engine: &Engine) -> Result<IntPoly> {
        let op = &inst.operands(1)?[0];
        let g = &op.graph;
        let col = coloring_of(op, self.name())?;
        let cs = inst.colors(2)?;
        let merged = merge_colors(col, &cs[0], &cs[1])?;
        let class_c = class_of(col, &cs[0])?;
        let class_d = class_of(col, &cs[1])?;
        let both: Vec<usize> = class_c.iter().chain(&class_d).copied().collect();
        let (gc, cc) = remove_colored(g, col, &class_c)?;
        let (gd, cd) = remove_colored(g, col, &class_d)?;
        let (gcd, ccd) = remove_colored(g, col, &both)?;
        let rhs = x() * colored(engine, g, &merged)? + colored(engine, &gc, &cc)? + colored(engine, &gd, &cd)?
            - pow(1) * colored(engine, &gcd, &ccd)?;
        Ok(colored(engine, g, col)? - rhs)
    }
}

impl Identity for ColoredDisjoint {
    fn name(&self) -> &'static str {
        "colored-disjoint"
    }

    fn formula(&self) -> &'static str {
        "β(G1 ⊔ G2) = (1+x)^c2 β(G1) + (1+x)^c1 β(G2), colors disjoint"
    }

    fn residual(&self, inst: &IdentityInstance, engine: &Engine) -> Result<IntPoly> {
        let ops = inst.operands(2)?;
        let (a, b) = (coloring_of(&ops[0], self.name())?, coloring_of(&ops[1], self.name())?);
        require_disjoint_colors(a, b)?;
        let (g1, g2) = (&ops[0].graph, &ops[1].graph);
        let union = combine(CombineKind::Disjoint, g1, g2, None, None)?;
        let col = joined_coloring(&union, a, b, g1.host_graph().vertex_count())?;
        let rhs = pow(b.color_count()) * colored(engine, g1, a)? + pow(a.color_count()) * colored(engine, g2, b)?;
        Ok(colored(engine, &union, &col)? - rhs)
    }
}

impl Identity for ColoredAppendix {
    fn name(&self) -> &'static str {
        "colored-appendix"
    }

    fn formula(&self) -> &'static str {
        "β(G_app) = (1+x) β(G) + (1+x)^(c−1), pendant vertex in a new color"
    }

    fn residual(&self, inst: &IdentityInstance, engine: &Engine) -> Result<IntPoly> {
        let op = &inst.operands(1)?[0];
        let col = coloring_of(op, self.name())?;
        let v = inst.vertices(1)?[0];
        let fresh = &inst.colors(1)?[0];
        if col.id(fresh).is_ok() {
            return Err(hypothesis(format!("pendant color {fresh:?} already used")));
        }
        let g = &op.graph;
        let point = point_like(g)?;
        let app = combine(CombineKind::Bridge, g, &point, Some((v, 0)), None)?;
        let tip = Coloring::from_names(&point, &[(0, fresh.as_str())])?;
        let app_col = joined_coloring(&app, col, &tip, g.host_graph().vertex_count())?;
        let rhs = pow(1) * colored(engine, g, col)? + pow(col.color_count() - 1);
        Ok(colored(engine, &app, &app_col)? - rhs)
    }
}

impl Identity for ColoredBridge {
    fn name(&self) -> &'static str {
        "colored-bridge"
    }

    fn formula(&self) -> &'static str {
        "β(bridge(G1, G2)) = β(G1 ⊔ G2) − x (1+x)^(c1+c2−2), colors disjoint"
    }

    fn residual(&self, inst: &IdentityInstance, engine: &Engine) -> Result<IntPoly> {
        let ops = inst.operands(2)?;
        let (a, b) = (coloring_of(&ops[0], self.name())?, coloring_of(&ops[1], self.name())?);
        require_disjoint_colors(a, b)?;
        let at = inst.vertices(2)?;
        let (g1, g2) = (&ops[0].graph, &ops[1].graph);
        let offset = g1.host_graph().vertex_count();
        let bridged = combine(CombineKind::Bridge, g1, g2, Some((at[0], at[1])), None)?;
        let union = combine(CombineKind::Disjoint, g1, g2, None, None)?;
        let bridged_col = joined_coloring(&bridged, a, b, offset)?;
        let union_col = joined_coloring(&union, a, b, offset)?;
        let rhs = colored(engine, &union, &union_col)? - x() * pow(a.color_count() + b.color_count() - 2);
        Ok(colored(engine, &bridged, &bridged_col)? - rhs)
    }
}

impl Identity for Pants {
    fn name(&self) -> &'static str {
        "pants"
    }

    fn formula(&self) -> &'static str {
        "β(type I) − β(type II) = 2x² Σ (s13 + s24 − s12 − s34)_k x^(k−2)"
    }

    fn residual(&self, inst: &IdentityInstance, engine: &Engine) -> Result<IntPoly> {
        let g = inst.graph()?;
        let vs = inst.vertices(4)?;
        let ends = [vs[0], vs[1], vs[2], vs[3]];
        let (one, two) = pants_graphs(g, ends)?;
        let lhs = beta(engine, &one)? - beta(engine, &two)?;
        Ok(lhs - pants_diff(g, ends)?)
    }
}

/// Which clause of the loop and parallel-edge results applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Growth {
    /// Every subgraph through the new edge's ends gains one face.
    Gains,
    /// No face count changes.
    Unchanged,
}

/// Decides the clause for a new marked edge `e` of `new` whose ends are
/// `ends`. `gains` says whether the new edge alone already splits a face.
fn growth(old: &EmbeddedGraph, new: &EmbeddedGraph, e: usize, ends: &[usize], gains: bool) -> Result<Growth> {
    let Some(map) = new.map() else {
        return Ok(Growth::Gains);
    };
    if new.genus() != old.genus() {
        return Err(hypothesis("the new edge joins two faces and adds a handle to the surface"));
    }
    if gains {
        return Ok(Growth::Gains);
    }
    let g = new.host_graph();
    let unmarked_v: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| !new.is_vertex_marked(v))
        .collect();
    let unmarked_e: Vec<usize> = (0..g.edge_count()).filter(|&i| !new.is_edge_marked(i)).collect();
    // complement of the old graph with the ends glued back in
    let before = map
        .merged_faces(
            unmarked_v.iter().copied().chain(ends.iter().copied()),
            unmarked_e.iter().copied().chain([e]),
        )
        .classes();
    let after = map.merged_faces(unmarked_v, unmarked_e).classes();
    if before == after {
        Ok(Growth::Unchanged)
    } else {
        Err(hypothesis(
            "the new edge is essential yet disconnects the complement of the graph",
        ))
    }
}

impl Identity for SelfLoop {
    fn name(&self) -> &'static str {
        "self-loop"
    }

    fn formula(&self) -> &'static str {
        "β(G + loop) = β(G) + (1+x)^(n−1) for a separating loop, β(G) for a loop that leaves the complement connected"
    }

    fn residual(&self, inst: &IdentityInstance, engine: &Engine) -> Result<IntPoly> {
        let g = inst.graph()?;
        let v = inst.vertices(1)?[0];
        let new = add_self_loop(g, v, inst.insertion)?;
        let e = new.host_graph().edge_count() - 1;
        let separating = match new.map() {
            Some(m) => {
                let point = VertexSubset::from_members(m.graph().vertex_count(), [v])?;
                crate::surface::complement_components(m, &point, &[e])? == 2
            }
            None => true,
        };
        let rhs = match growth(g, &new, e, &[v], separating)? {
            Growth::Gains => beta(engine, g)? + pow(g.n() - 1),
            Growth::Unchanged => beta(engine, g)?,
        };
        Ok(beta(engine, &new)? - rhs)
    }
}

impl Identity for ParallelEdge {
    fn name(&self) -> &'static str {
        "parallel-edge"
    }

    fn formula(&self) -> &'static str {
        "β(G + e') = β(G) + x (1+x)^(n−2) when e' closes a face with an existing edge, β(G) when it leaves the complement connected"
    }

    fn residual(&self, inst: &IdentityInstance, engine: &Engine) -> Result<IntPoly> {
        let g = inst.graph()?;
        let vs = inst.vertices(2)?;
        let (v, w) = (vs[0], vs[1]);
        let adjacent = g
            .marked_edges()
            .iter()
            .map(|&i| g.host_graph().edges()[i])
            .any(|ed| (ed.u, ed.v) == (v, w) || (ed.u, ed.v) == (w, v));
        if !adjacent {
            return Err(hypothesis(format!("{v} and {w} are not adjacent")));
        }
        let new = add_parallel_edge(g, v, w, inst.insertion)?;
        let e = new.host_graph().edge_count() - 1;
        let pair = VertexSubset::from_members(g.host_graph().vertex_count(), [v, w])?;
        let pair_new = VertexSubset::from_members(new.host_graph().vertex_count(), [v, w])?;
        let gains = new.face_count(&pair_new)? == g.face_count(&pair)? + 1;
        let rhs = match growth(g, &new, e, &[v, w], gains)? {
            Growth::Gains => beta(engine, g)? + x() * pow(g.n() - 2),
            Growth::Unchanged => beta(engine, g)?,
        };
        Ok(beta(engine, &new)? - rhs)
    }
}
