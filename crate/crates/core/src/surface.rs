//! Rotation systems on oriented surfaces: validation, face tracing, genus and
//! complement-component counting.
//!
//! Edge `e` owns two darts: `2e` is its `a` end (at `e.u`) and `2e + 1` its
//! `b` end (at `e.v`). Rotations list darts counterclockwise. The face
//! successor of a dart is the rotation successor of its twin.

use crate::error::{Error, Result};
use crate::graph::{Multigraph, UnionFind, VertexSubset};

pub fn dart_a(edge: usize) -> usize {
    2 * edge
}

pub fn dart_b(edge: usize) -> usize {
    2 * edge + 1
}

pub fn dart_edge(dart: usize) -> usize {
    dart / 2
}

pub fn twin(dart: usize) -> usize {
    dart ^ 1
}

/// `3a`, `3b` style label used by the text formats.
pub fn dart_label(dart: usize) -> String {
    format!("{}{}", dart_edge(dart), if dart % 2 == 0 { 'a' } else { 'b' })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceStructure {
    pub count: usize,
    /// Face id of every dart.
    pub dart_face: Vec<usize>,
    /// Sorted distinct face ids around every vertex.
    pub vertex_faces: Vec<Vec<usize>>,
}

/// A connected host graph with a counterclockwise rotation at every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationMap {
    graph: Multigraph,
    rotations: Vec<Vec<usize>>,
    /// dart -> (vertex, index in that vertex's rotation)
    slots: Vec<(usize, usize)>,
    faces: FaceStructure,
    genus: usize,
}

impl RotationMap {
    pub fn new(graph: Multigraph, rotations: Vec<Vec<usize>>) -> Result<Self> {
        let (faces, genus) = validate_and_trace(&graph, &rotations)?;
        let mut slots = vec![(0, 0); 2 * graph.edge_count()];
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                slots[d] = (v, i);
            }
        }
        Ok(RotationMap {
            graph,
            rotations,
            slots,
            faces,
            genus,
        })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn faces(&self) -> &FaceStructure {
        &self.faces
    }

    pub fn face_count(&self) -> usize {
        self.faces.count
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64
    }

    /// Vertex holding `dart` and its index in that rotation.
    pub fn slot(&self, dart: usize) -> (usize, usize) {
        self.slots[dart]
    }

    /// Face containing the corner in front of rotation index `position` at
    /// `v`, i.e. the corner a dart inserted at `position` would occupy.
    pub fn corner_face(&self, v: usize, position: usize) -> Result<usize> {
        let rot = &self.rotations[v];
        if position > rot.len() {
            return Err(Error::BadPosition {
                vertex: v,
                position,
                len: rot.len(),
            });
        }
        if rot.is_empty() {
            return Ok(0);
        }
        Ok(self.faces.dart_face[rot[position % rot.len()]])
    }

    /// Union-find over faces with the merges implied by deleting every host
    /// edge in `edges` and every host vertex in `vertices`.
    pub fn merged_faces(
        &self,
        vertices: impl IntoIterator<Item = usize>,
        edges: impl IntoIterator<Item = usize>,
    ) -> UnionFind {
        let mut uf = UnionFind::new(self.faces.count);
        for v in vertices {
            self.merge_around_vertex(&mut uf, v);
        }
        for e in edges {
            self.merge_across_edge(&mut uf, e);
        }
        uf
    }

    pub fn merge_around_vertex(&self, uf: &mut UnionFind, v: usize) {
        let fs = &self.faces.vertex_faces[v];
        for w in fs.windows(2) {
            uf.union(w[0], w[1]);
        }
    }

    pub fn merge_across_edge(&self, uf: &mut UnionFind, e: usize) {
        uf.union(
            self.faces.dart_face[dart_a(e)],
            self.faces.dart_face[dart_b(e)],
        );
    }

    /// Components of the surface minus the (possibly disconnected) subgraph
    /// made of `vertices` and `edges`.
    pub fn complement_of_subgraph(&self, vertices: &VertexSubset, edges: &[usize]) -> Result<usize> {
        self.check_subgraph(vertices, edges)?;
        let mut in_edges = vec![false; self.graph.edge_count()];
        for &e in edges {
            in_edges[e] = true;
        }
        let uf = self.merged_faces(
            (0..self.graph.vertex_count()).filter(|&v| !vertices.contains(v)),
            (0..self.graph.edge_count()).filter(|&e| !in_edges[e]),
        );
        Ok(uf.classes())
    }

    fn check_subgraph(&self, vertices: &VertexSubset, edges: &[usize]) -> Result<()> {
        let n = self.graph.vertex_count();
        if let Some(v) = vertices.iter().find(|&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, count: n });
        }
        for &id in edges {
            let e = self.graph.edges().get(id).ok_or(Error::EdgeOutOfRange {
                edge: id,
                count: self.graph.edge_count(),
            })?;
            for x in [e.u, e.v] {
                if !vertices.contains(x) {
                    return Err(Error::UnmarkedEndpoint { edge: id, vertex: x });
                }
            }
        }
        Ok(())
    }
}

/// Checks the structural invariants of a rotation system and traces its
/// faces. Returns the faces and the genus.
pub fn validate_and_trace(
    graph: &Multigraph,
    rotations: &[Vec<usize>],
) -> Result<(FaceStructure, usize)> {
    let n = graph.vertex_count();
    if n == 0 {
        return Err(Error::EmptyHost);
    }
    if let Some(missing) = graph.edges().iter().enumerate().find(|(i, e)| e.id != *i) {
        return Err(Error::SparseEdgeIds {
            missing: missing.0,
            count: graph.edge_count(),
        });
    }
    if rotations.len() != n {
        return Err(Error::Range(format!(
            "expected {n} rotations, found {}",
            rotations.len()
        )));
    }
    let darts = 2 * graph.edge_count();
    let mut vertex_of = vec![usize::MAX; darts];
    let mut index_of = vec![0; darts];
    for (v, rot) in rotations.iter().enumerate() {
        for (i, &d) in rot.iter().enumerate() {
            if d >= darts {
                return Err(Error::EdgeOutOfRange {
                    edge: dart_edge(d),
                    count: graph.edge_count(),
                });
            }
            if vertex_of[d] != usize::MAX {
                return Err(Error::DartRepeated { dart: dart_label(d) });
            }
            let e = &graph.edges()[dart_edge(d)];
            let expected = if d % 2 == 0 { e.u } else { e.v };
            if expected != v {
                return Err(Error::DartMisplaced {
                    dart: dart_label(d),
                    expected,
                    found: v,
                });
            }
            vertex_of[d] = v;
            index_of[d] = i;
        }
    }
    if let Some(d) = vertex_of.iter().position(|&v| v == usize::MAX) {
        return Err(Error::DartMissing { dart: dart_label(d) });
    }

    let mut uf = UnionFind::new(n);
    for e in graph.edges() {
        uf.union(e.u, e.v);
    }
    if let Some(v) = (1..n).find(|&v| uf.find(v) != uf.find(0)) {
        return Err(Error::DisconnectedHost(v));
    }

    let mut dart_face = vec![usize::MAX; darts];
    let mut count = 0;
    for start in 0..darts {
        if dart_face[start] != usize::MAX {
            continue;
        }
        let mut d = start;
        while dart_face[d] == usize::MAX {
            dart_face[d] = count;
            let t = twin(d);
            let rot = &rotations[vertex_of[t]];
            d = rot[(index_of[t] + 1) % rot.len()];
        }
        count += 1;
    }
    let mut vertex_faces: Vec<Vec<usize>> = rotations
        .iter()
        .map(|rot| {
            let mut fs: Vec<usize> = rot.iter().map(|&d| dart_face[d]).collect();
            fs.sort_unstable();
            fs.dedup();
            fs
        })
        .collect();
    if darts == 0 {
        // lone vertex on the sphere
        count = 1;
        vertex_faces[0] = vec![0];
    }

    let chi = n as i64 - graph.edge_count() as i64 + count as i64;
    if chi > 2 || chi % 2 != 0 {
        return Err(Error::BadEulerCharacteristic {
            v: n,
            e: graph.edge_count(),
            f: count,
        });
    }
    let genus = ((2 - chi) / 2) as usize;
    Ok((
        FaceStructure {
            count,
            dart_face,
            vertex_faces,
        },
        genus,
    ))
}

/// Components of `Σ − island` for a connected subgraph of the host.
pub fn complement_components(m: &RotationMap, vertices: &VertexSubset, edges: &[usize]) -> Result<usize> {
    if vertices.is_empty() {
        return Err(Error::NotConnected);
    }
    m.check_subgraph(vertices, edges)?;
    let mut uf = UnionFind::new(m.graph().vertex_count());
    for &e in edges {
        let e = &m.graph().edges()[e];
        uf.union(e.u, e.v);
    }
    let first = vertices.iter().next().expect("nonempty");
    if vertices.iter().any(|v| uf.find(v) != uf.find(first)) {
        return Err(Error::NotConnected);
    }
    m.complement_of_subgraph(vertices, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus_bouquet() -> RotationMap {
        let g = Multigraph::from_pairs(1, &[(0, 0), (0, 0)]).unwrap();
        RotationMap::new(g, vec![vec![0, 2, 1, 3]]).unwrap()
    }

    /// Straight-line cycle: every vertex sees its predecessor then successor.
    fn planar_cycle(n: usize) -> RotationMap {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = Multigraph::from_pairs(n, &pairs).unwrap();
        let rot = (0..n)
            .map(|i| vec![dart_a(i), dart_b((i + n - 1) % n)])
            .collect();
        RotationMap::new(g, rot).unwrap()
    }

    fn planar_k4() -> RotationMap {
        // 0,1,2 outer triangle counterclockwise, 3 in the centre
        let g = Multigraph::from_pairs(4, &[(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)]).unwrap();
        let rot = vec![
            vec![dart_a(0), dart_a(3), dart_b(2)],
            vec![dart_a(1), dart_a(4), dart_b(0)],
            vec![dart_a(2), dart_a(5), dart_b(1)],
            vec![dart_b(3), dart_b(4), dart_b(5)],
        ];
        RotationMap::new(g, rot).unwrap()
    }

    #[test]
    fn one_vertex_two_loops_is_a_torus() {
        let m = torus_bouquet();
        assert_eq!(m.face_count(), 1);
        assert_eq!(m.genus(), 1);
    }

    #[test]
    fn two_loops_unlinked_is_a_sphere() {
        let g = Multigraph::from_pairs(1, &[(0, 0), (0, 0)]).unwrap();
        let m = RotationMap::new(g, vec![vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(m.face_count(), 3);
        assert_eq!(m.genus(), 0);
    }

    #[test]
    fn planar_triangle_and_k4() {
        let c3 = planar_cycle(3);
        assert_eq!((c3.face_count(), c3.genus()), (2, 0));
        let k4 = planar_k4();
        assert_eq!((k4.face_count(), k4.genus()), (4, 0));
    }

    #[test]
    fn lone_vertex() {
        let m = RotationMap::new(Multigraph::empty(1), vec![vec![]]).unwrap();
        assert_eq!((m.face_count(), m.genus()), (1, 0));
        let s = VertexSubset::full(1);
        assert_eq!(complement_components(&m, &s, &[]).unwrap(), 1);
    }

    #[test]
    fn validation_errors() {
        let g = Multigraph::from_pairs(2, &[(0, 1)]).unwrap();
        assert_eq!(
            RotationMap::new(g.clone(), vec![vec![0, 0], vec![1]]).unwrap_err(),
            Error::DartRepeated { dart: "0a".into() }
        );
        assert_eq!(
            RotationMap::new(g.clone(), vec![vec![0], vec![]]).unwrap_err(),
            Error::DartMissing { dart: "0b".into() }
        );
        assert!(matches!(
            RotationMap::new(g, vec![vec![1], vec![0]]).unwrap_err(),
            Error::DartMisplaced { .. }
        ));
        let two = Multigraph::empty(2);
        assert_eq!(
            RotationMap::new(two, vec![vec![], vec![]]).unwrap_err(),
            Error::DisconnectedHost(1)
        );
        assert_eq!(
            RotationMap::new(Multigraph::empty(0), vec![]).unwrap_err(),
            Error::EmptyHost
        );
    }

    #[test]
    fn single_vertex_island_leaves_surface_connected() {
        for m in [torus_bouquet(), planar_k4(), planar_cycle(5)] {
            for v in 0..m.graph().vertex_count() {
                let s = VertexSubset::from_members(m.graph().vertex_count(), [v]).unwrap();
                assert_eq!(complement_components(&m, &s, &[]).unwrap(), 1);
            }
        }
    }

    #[test]
    fn whole_host_gives_face_count() {
        for m in [torus_bouquet(), planar_k4(), planar_cycle(6)] {
            let n = m.graph().vertex_count();
            let edges: Vec<_> = (0..m.graph().edge_count()).collect();
            let c = complement_components(&m, &VertexSubset::full(n), &edges).unwrap();
            assert_eq!(c, m.face_count());
        }
    }

    #[test]
    fn non_separating_loop_on_torus() {
        let m = torus_bouquet();
        let s = VertexSubset::full(1);
        assert_eq!(complement_components(&m, &s, &[0]).unwrap(), 1);
    }

    #[test]
    fn rejects_disconnected_island() {
        let m = planar_cycle(4);
        let s = VertexSubset::from_members(4, [0, 2]).unwrap();
        assert_eq!(complement_components(&m, &s, &[]), Err(Error::NotConnected));
        let s = VertexSubset::from_members(4, [0]).unwrap();
        assert!(matches!(
            complement_components(&m, &s, &[0]),
            Err(Error::UnmarkedEndpoint { .. })
        ));
    }

    #[test]
    fn corner_faces_of_cycle() {
        let m = planar_cycle(4);
        // the two corners at a cycle vertex are the inside and the outside
        let f0 = m.corner_face(0, 0).unwrap();
        let f1 = m.corner_face(0, 1).unwrap();
        assert_ne!(f0, f1);
        assert_eq!(m.corner_face(0, 2).unwrap(), f0);
        assert!(m.corner_face(0, 3).is_err());
    }
}
