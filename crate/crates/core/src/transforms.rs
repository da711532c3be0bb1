//! Graph and embedding operations. Each returns a new [`EmbeddedGraph`];
//! in surface mode the host map is rebuilt and revalidated.
//!
//! New edges get the next free edge id and new vertices the next free vertex
//! id. Edge ids of the result are always dense host positions.

use crate::embedded::{EmbeddedGraph, Host};
use crate::error::{Error, Result};
use crate::graph::{islands, Multigraph, VertexSubset};
use crate::surface::{dart_a, dart_b, dart_edge, RotationMap};

/// Rotation positions for the two new darts of an added edge. A dart
/// inserted at position `p` lands between rotation entries `p - 1` and `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InsertionSpec {
    pub first: usize,
    pub second: usize,
}

impl InsertionSpec {
    pub fn new(first: usize, second: usize) -> Self {
        InsertionSpec { first, second }
    }
}

/// Old-to-new index tables produced by [`contract`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabel {
    pub vertices: Vec<Option<usize>>,
    pub edges: Vec<Option<usize>>,
}

/// Editable copy of an embedded graph.
#[derive(Debug, Clone)]
struct Parts {
    n: usize,
    pairs: Vec<(usize, usize)>,
    rot: Option<Vec<Vec<usize>>>,
    vmark: Vec<bool>,
    emark: Vec<bool>,
}

impl Parts {
    fn of(eg: &EmbeddedGraph) -> Self {
        let g = eg.host_graph();
        Parts {
            n: g.vertex_count(),
            pairs: g.edges().iter().map(|e| (e.u, e.v)).collect(),
            rot: eg.map().map(|m| m.rotations().to_vec()),
            vmark: (0..g.vertex_count()).map(|v| eg.is_vertex_marked(v)).collect(),
            emark: (0..g.edge_count()).map(|e| eg.is_edge_marked(e)).collect(),
        }
    }

    fn build(self) -> Result<EmbeddedGraph> {
        let g = Multigraph::from_pairs(self.n, &self.pairs)?;
        let host = match self.rot {
            Some(rot) => Host::Surface(RotationMap::new(g, rot)?),
            None => Host::Planar(g),
        };
        let vs = VertexSubset::from_members(self.n, (0..self.n).filter(|&v| self.vmark[v]))?;
        let es: Vec<usize> = (0..self.emark.len()).filter(|&e| self.emark[e]).collect();
        EmbeddedGraph::with_marks(host, vs, &es)
    }

    fn check_position(&self, v: usize, p: usize) -> Result<()> {
        if let Some(rot) = &self.rot {
            if p > rot[v].len() {
                return Err(Error::BadPosition {
                    vertex: v,
                    position: p,
                    len: rot[v].len(),
                });
            }
        }
        Ok(())
    }

    /// Appends edge `(u, v)`; in surface mode its darts go to the given
    /// positions (the second position refers to the rotation after the
    /// first insertion when `u == v`).
    fn push_edge(&mut self, u: usize, v: usize, ins: Option<InsertionSpec>, marked: bool) -> Result<usize> {
        let id = self.pairs.len();
        if self.rot.is_some() {
            let ins = ins.ok_or(Error::MissingInsertion)?;
            self.check_position(u, ins.first)?;
            self.rot.as_mut().unwrap()[u].insert(ins.first, dart_a(id));
            self.check_position(v, ins.second)?;
            self.rot.as_mut().unwrap()[v].insert(ins.second, dart_b(id));
        }
        self.pairs.push((u, v));
        self.emark.push(marked);
        Ok(id)
    }
}

fn require_marked_vertex(eg: &EmbeddedGraph, v: usize) -> Result<()> {
    if v >= eg.host_graph().vertex_count() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            count: eg.host_graph().vertex_count(),
        });
    }
    if !eg.is_vertex_marked(v) {
        return Err(Error::UnmarkedVertex(v));
    }
    Ok(())
}

fn require_marked_edge(eg: &EmbeddedGraph, e: usize) -> Result<()> {
    if e >= eg.host_graph().edge_count() {
        return Err(Error::EdgeOutOfRange {
            edge: e,
            count: eg.host_graph().edge_count(),
        });
    }
    if !eg.is_edge_marked(e) {
        return Err(Error::UnmarkedEdge(e));
    }
    Ok(())
}

/// Adds a marked self-loop at `v`.
pub fn add_self_loop(eg: &EmbeddedGraph, v: usize, ins: Option<InsertionSpec>) -> Result<EmbeddedGraph> {
    require_marked_vertex(eg, v)?;
    let mut parts = Parts::of(eg);
    parts.push_edge(v, v, ins, true)?;
    parts.build()
}

/// Adds a marked edge between distinct marked vertices.
pub fn add_parallel_edge(
    eg: &EmbeddedGraph,
    v1: usize,
    v2: usize,
    ins: Option<InsertionSpec>,
) -> Result<EmbeddedGraph> {
    require_marked_vertex(eg, v1)?;
    require_marked_vertex(eg, v2)?;
    if v1 == v2 {
        return Err(Error::SameEndpoints(v1));
    }
    let mut parts = Parts::of(eg);
    parts.push_edge(v1, v2, ins, true)?;
    parts.build()
}

/// Replaces marked edge `e = (u, w)` by `(u, z)` and `(z, w)` where `z` is a
/// new vertex. Edge `e` keeps the `u` half; the new edge is the `w` half.
pub fn subdivide(eg: &EmbeddedGraph, e: usize) -> Result<EmbeddedGraph> {
    require_marked_edge(eg, e)?;
    let mut parts = Parts::of(eg);
    let z = parts.n;
    let new = parts.pairs.len();
    let (u, w) = parts.pairs[e];
    parts.n += 1;
    parts.vmark.push(true);
    parts.pairs[e] = (u, z);
    parts.pairs.push((z, w));
    parts.emark.push(true);
    if let Some(rot) = parts.rot.as_mut() {
        let slot = rot[w].iter().position(|&d| d == dart_b(e)).expect("dart present");
        rot[w][slot] = dart_b(new);
        rot.push(vec![dart_b(e), dart_a(new)]);
    }
    parts.build()
}

/// Contracts marked non-loop edge `e = (u, w)`. The merged vertex takes the
/// place of `w`; indices above `u` and `e` shift down by one.
pub fn contract(eg: &EmbeddedGraph, e: usize) -> Result<(EmbeddedGraph, Relabel)> {
    require_marked_edge(eg, e)?;
    let parts = Parts::of(eg);
    let (u, w) = parts.pairs[e];
    if u == w {
        return Err(Error::SelfLoop(e));
    }
    let vmap: Vec<Option<usize>> = (0..parts.n)
        .map(|x| {
            let x = if x == u { w } else { x };
            Some(if x > u { x - 1 } else { x })
        })
        .collect();
    let emap: Vec<Option<usize>> = (0..parts.pairs.len())
        .map(|i| match i.cmp(&e) {
            std::cmp::Ordering::Less => Some(i),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(i - 1),
        })
        .collect();
    let remap_dart = |d: usize| {
        let ne = emap[dart_edge(d)].expect("contracted dart removed");
        2 * ne + d % 2
    };
    let rot = parts.rot.as_ref().map(|rot| {
        let ru = &rot[u];
        let iu = ru.iter().position(|&d| d == dart_a(e)).expect("dart present");
        let from_u: Vec<usize> = (1..ru.len()).map(|k| ru[(iu + k) % ru.len()]).collect();
        let mut out = Vec::with_capacity(parts.n - 1);
        for (x, r) in rot.iter().enumerate() {
            if x == u {
                continue;
            }
            if x == w {
                let mut merged = Vec::with_capacity(r.len() + from_u.len());
                for &d in r {
                    if d == dart_b(e) {
                        merged.extend(from_u.iter().copied());
                    } else {
                        merged.push(d);
                    }
                }
                out.push(merged.into_iter().map(remap_dart).collect());
            } else {
                out.push(r.iter().copied().map(remap_dart).collect());
            }
        }
        out
    });
    let pairs = parts
        .pairs
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != e)
        .map(|(_, &(a, b))| (vmap[a].unwrap(), vmap[b].unwrap()))
        .collect();
    let vmark = (0..parts.n).filter(|&x| x != u).map(|x| parts.vmark[x]).collect();
    let emark = (0..parts.emark.len()).filter(|&i| i != e).map(|i| parts.emark[i]).collect();
    let out = Parts {
        n: parts.n - 1,
        pairs,
        rot,
        vmark,
        emark,
    }
    .build()?;
    Ok((
        out,
        Relabel {
            vertices: vmap,
            edges: emap,
        },
    ))
}

/// Adds a marked edge between two marked vertices lying in different islands
/// of the marked graph.
pub fn bridge_within(eg: &EmbeddedGraph, v: usize, w: usize, ins: Option<InsertionSpec>) -> Result<EmbeddedGraph> {
    require_marked_vertex(eg, v)?;
    require_marked_vertex(eg, w)?;
    if v == w {
        return Err(Error::SameEndpoints(v));
    }
    let local: Vec<usize> = eg.marked_vertices();
    let (lv, lw) = (
        local.binary_search(&v).expect("marked"),
        local.binary_search(&w).expect("marked"),
    );
    let d = islands(&eg.graph());
    if d.islands.iter().any(|i| i.vertices.contains(lv) && i.vertices.contains(lw)) {
        return Err(Error::SameIsland(v, w));
    }
    let mut parts = Parts::of(eg);
    parts.push_edge(v, w, ins, true)?;
    parts.build()
}

/// Bridges `v` and `w` and contracts the bridge; the glued vertex is `w`
/// shifted by the removal of `v`.
pub fn wedge_within(eg: &EmbeddedGraph, v: usize, w: usize, ins: Option<InsertionSpec>) -> Result<EmbeddedGraph> {
    let bridged = bridge_within(eg, v, w, ins)?;
    let e = bridged.host_graph().edge_count() - 1;
    Ok(contract(&bridged, e)?.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineKind {
    Disjoint,
    Bridge,
    Wedge,
}

/// A corner of a host map: the gap before rotation index `position` at
/// `vertex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corner {
    pub vertex: usize,
    pub position: usize,
}

/// Corner of face 0 (the corner in front of dart 0), or vertex 0 when the
/// host has no edges.
pub fn default_corner(m: &RotationMap) -> Corner {
    if m.graph().edge_count() == 0 {
        return Corner {
            vertex: 0,
            position: 0,
        };
    }
    let (vertex, position) = m.slot(0);
    Corner { vertex, position }
}

/// Places two graphs side by side. `attach` names one vertex of each graph
/// for bridge and wedge. In surface mode the two hosts are joined through the
/// given corners (a connected sum through those faces); for a disjoint union
/// the joining edge is an unmarked scaffold edge. Vertex and edge ids of
/// `eg2` are offset by the host sizes of `eg1`.
pub fn combine(
    kind: CombineKind,
    eg1: &EmbeddedGraph,
    eg2: &EmbeddedGraph,
    attach: Option<(usize, usize)>,
    corners: Option<(Corner, Corner)>,
) -> Result<EmbeddedGraph> {
    let (p1, p2) = (Parts::of(eg1), Parts::of(eg2));
    if p1.rot.is_some() != p2.rot.is_some() {
        return Err(Error::ModeMismatch("cannot combine planar and surface graphs"));
    }
    let attach = match kind {
        CombineKind::Disjoint => None,
        _ => {
            let (a, b) = attach.ok_or_else(|| Error::Range("bridge and wedge need attach vertices".into()))?;
            require_marked_vertex(eg1, a)?;
            require_marked_vertex(eg2, b)?;
            Some((a, b))
        }
    };
    let corners = match (eg1.map(), eg2.map()) {
        (Some(m1), Some(m2)) => {
            let c = corners.unwrap_or_else(|| match attach {
                Some((a, b)) => (
                    Corner {
                        vertex: a,
                        position: 0,
                    },
                    Corner {
                        vertex: b,
                        position: 0,
                    },
                ),
                None => (default_corner(m1), default_corner(m2)),
            });
            if let Some((a, b)) = attach {
                if c.0.vertex != a || c.1.vertex != b {
                    return Err(Error::Range("corners must sit at the attach vertices".into()));
                }
            }
            Some(c)
        }
        _ => None,
    };

    let (n1, e1) = (p1.n, p1.pairs.len());
    let mut parts = p1;
    parts.n += p2.n;
    parts
        .pairs
        .extend(p2.pairs.iter().map(|&(a, b)| (a + n1, b + n1)));
    parts.vmark.extend(p2.vmark.iter().copied());
    parts.emark.extend(p2.emark.iter().copied());
    if let (Some(rot), Some(rot2)) = (parts.rot.as_mut(), p2.rot.as_ref()) {
        rot.extend(
            rot2.iter()
                .map(|r| r.iter().map(|&d| d + 2 * e1).collect::<Vec<_>>()),
        );
    }

    let endpoints = match (attach, corners) {
        (Some((a, b)), _) => Some((a, b + n1)),
        (None, Some((c1, c2))) => Some((c1.vertex, c2.vertex + n1)),
        (None, None) => None,
    };
    let ins = corners.map(|(c1, c2)| InsertionSpec::new(c1.position, c2.position));
    if let Some((a, b)) = endpoints {
        parts.push_edge(a, b, ins, kind != CombineKind::Disjoint)?;
    }
    let out = parts.build()?;
    match kind {
        CombineKind::Wedge => {
            let e = out.host_graph().edge_count() - 1;
            Ok(contract(&out, e)?.0)
        }
        _ => Ok(out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::beta;
    use crate::poly::IntPoly;
    use num_bigint::BigInt;

    fn p(cs: &[i64]) -> IntPoly {
        IntPoly::from_i64s(cs)
    }

    fn planar(n: usize, pairs: &[(usize, usize)]) -> EmbeddedGraph {
        EmbeddedGraph::planar(Multigraph::from_pairs(n, pairs).unwrap())
    }

    fn cycle(n: usize) -> EmbeddedGraph {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        planar(n, &pairs)
    }

    fn planar_cycle_map(n: usize) -> EmbeddedGraph {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = Multigraph::from_pairs(n, &pairs).unwrap();
        let rot = (0..n).map(|i| vec![dart_a(i), dart_b((i + n - 1) % n)]).collect();
        EmbeddedGraph::surface(RotationMap::new(g, rot).unwrap())
    }

    fn total(eg: &EmbeddedGraph) -> IntPoly {
        beta(eg).unwrap().total
    }

    #[test]
    fn path_to_k4_sequence() {
        let p4 = planar(4, &[(0, 1), (1, 2), (2, 3)]);
        assert_eq!(total(&p4), p(&[4, 9, 6, 1]));
        let c4 = add_parallel_edge(&p4, 0, 3, None).unwrap();
        assert_eq!(total(&c4), p(&[4, 8, 4, 2]));
        let chord = add_parallel_edge(&c4, 0, 2, None).unwrap();
        assert_eq!(total(&chord), p(&[4, 7, 6, 3]));
        let k4 = add_parallel_edge(&chord, 1, 3, None).unwrap();
        assert_eq!(total(&k4), p(&[4, 6, 8, 4]));
    }

    #[test]
    fn planar_loops_add_binomial_power() {
        let c5 = cycle(5);
        let mut g = c5.clone();
        for k in 1..=3 {
            g = add_self_loop(&g, k % 5, None).unwrap();
            let expect = total(&c5) + IntPoly::one_plus_x_pow(4).scale(&BigInt::from(k));
            assert_eq!(total(&g), expect);
        }
    }

    #[test]
    fn surface_loop_needs_positions() {
        let eg = planar_cycle_map(3);
        assert_eq!(add_self_loop(&eg, 0, None).unwrap_err(), Error::MissingInsertion);
        assert!(matches!(
            add_self_loop(&eg, 0, Some(InsertionSpec::new(3, 0))),
            Err(Error::BadPosition { .. })
        ));
        // adjacent darts: a trivial loop bounding a new face
        let g = add_self_loop(&eg, 0, Some(InsertionSpec::new(0, 0))).unwrap();
        assert_eq!(g.genus(), 0);
        assert_eq!(g.map().unwrap().face_count(), 3);
        // darts in the inner and the outer corner: the loop needs a handle
        for second in [0, 3] {
            let g = add_self_loop(&eg, 0, Some(InsertionSpec::new(1, second))).unwrap();
            assert_eq!(g.genus(), 1);
        }
        for second in [1, 2] {
            let g = add_self_loop(&eg, 0, Some(InsertionSpec::new(1, second))).unwrap();
            assert_eq!(g.genus(), 0);
        }
    }

    #[test]
    fn subdivide_triangle_gives_square() {
        let c4 = subdivide(&cycle(3), 1).unwrap();
        assert_eq!(total(&c4), p(&[4, 8, 4, 2]));
        let s = subdivide(&planar_cycle_map(3), 1).unwrap();
        assert_eq!(s.genus(), 0);
        assert_eq!(total(&s), p(&[4, 8, 4, 2]));
    }

    #[test]
    fn subdivide_loop() {
        let g = planar(1, &[(0, 0)]);
        let s = subdivide(&g, 0).unwrap();
        assert_eq!(s.graph(), Multigraph::from_pairs(2, &[(0, 1), (1, 0)]).unwrap());
    }

    #[test]
    fn contract_cycle_edge() {
        for eg in [cycle(4), planar_cycle_map(4)] {
            let (c3, relabel) = contract(&eg, 0).unwrap();
            assert_eq!(c3.n(), 3);
            assert_eq!(total(&c3), p(&[3, 3, 2]));
            assert_eq!(relabel.vertices[0], Some(0));
            assert_eq!(relabel.edges[0], None);
            assert_eq!(c3.genus(), 0);
        }
        assert_eq!(contract(&planar(1, &[(0, 0)]), 0).unwrap_err(), Error::SelfLoop(0));
    }

    #[test]
    fn contract_p2_gives_point() {
        let (pt, _) = contract(&planar(2, &[(0, 1)]), 0).unwrap();
        assert_eq!(total(&pt), IntPoly::one());
    }

    #[test]
    fn contract_undoes_subdivide() {
        for eg in [cycle(5), planar_cycle_map(5)] {
            let s = subdivide(&eg, 2).unwrap();
            let new_edge = s.host_graph().edge_count() - 1;
            let (back, _) = contract(&s, new_edge).unwrap();
            assert_eq!(back, eg);
        }
    }

    #[test]
    fn parallel_edges_become_loops() {
        let g = planar(2, &[(0, 1), (0, 1)]);
        let (h, _) = contract(&g, 0).unwrap();
        assert_eq!(h.graph(), Multigraph::from_pairs(1, &[(0, 0)]).unwrap());
    }

    #[test]
    fn combine_planar() {
        let c3 = cycle(3);
        let d = combine(CombineKind::Disjoint, &c3, &c3, None, None).unwrap();
        assert_eq!(d.n(), 6);
        let x3 = IntPoly::one_plus_x_pow(3);
        assert_eq!(total(&d), (&x3 * &total(&c3)).scale(&BigInt::from(2)));
        let b = combine(CombineKind::Bridge, &c3, &c3, Some((0, 0)), None).unwrap();
        assert_eq!(total(&b), total(&d) - IntPoly::one_plus_x_pow(4).shift(1));
        let w = combine(CombineKind::Wedge, &c3, &c3, Some((0, 0)), None).unwrap();
        assert_eq!(w.n(), 5);
        let x2 = IntPoly::one_plus_x_pow(2);
        let expect = (&x2 * &total(&c3)).scale(&BigInt::from(2)) - IntPoly::one_plus_x_pow(4);
        assert_eq!(total(&w), expect);
    }

    #[test]
    fn combine_surface_matches_planar() {
        let a = planar_cycle_map(3);
        let b = planar_cycle_map(4);
        for kind in [CombineKind::Disjoint, CombineKind::Bridge, CombineKind::Wedge] {
            let s = combine(kind, &a, &b, Some((1, 2)), None).unwrap();
            let q = combine(kind, &cycle(3), &cycle(4), Some((1, 2)), None).unwrap();
            assert_eq!(s.genus(), 0);
            assert_eq!(total(&s), total(&q), "{kind:?}");
        }
    }

    #[test]
    fn within_graph_bridge_and_wedge() {
        let g = planar(4, &[(0, 1), (2, 3)]);
        assert_eq!(bridge_within(&g, 0, 1, None).unwrap_err(), Error::SameIsland(0, 1));
        let b = bridge_within(&g, 1, 2, None).unwrap();
        assert_eq!(total(&b), p(&[4, 9, 6, 1]));
        let w = wedge_within(&g, 1, 2, None).unwrap();
        assert_eq!(total(&w), p(&[3, 4, 1]));
    }
}
