//! Finite multigraphs, vertex subsets and island (component) decomposition.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: usize,
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite to `x`, if `x` is an endpoint.
    pub fn other(&self, x: usize) -> Option<usize> {
        if self.u == x {
            Some(self.v)
        } else if self.v == x {
            Some(self.u)
        } else {
            None
        }
    }
}

/// Undirected multigraph. Self-loops and parallel edges are allowed; edges
/// with equal endpoints stay distinguishable by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

impl Multigraph {
    pub fn empty(vertex_count: usize) -> Self {
        Multigraph {
            vertex_count,
            edges: Vec::new(),
        }
    }

    /// Builds a graph whose edge ids are the positions in `pairs`.
    pub fn from_pairs(vertex_count: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .enumerate()
            .map(|(id, &(u, v))| Edge { id, u, v })
            .collect();
        Self::new(vertex_count, edges)
    }

    pub fn new(vertex_count: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = std::collections::HashSet::with_capacity(edges.len());
        for e in &edges {
            for x in [e.u, e.v] {
                if x >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: x,
                        count: vertex_count,
                    });
                }
            }
            if !seen.insert(e.id) {
                return Err(Error::DuplicateEdgeId(e.id));
            }
        }
        Ok(Multigraph {
            vertex_count,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    /// True when edge ids are exactly `0..edge_count` in storage order.
    pub fn has_dense_ids(&self) -> bool {
        self.edges.iter().enumerate().all(|(i, e)| e.id == i)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.u == v) + usize::from(e.v == v))
            .sum()
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.edges
            .iter()
            .all(|e| !e.is_loop() && seen.insert((e.u.min(e.v), e.u.max(e.v))))
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges
            .iter()
            .any(|e| (e.u == a && e.v == b) || (e.u == b && e.v == a))
    }
}

/// Word-packed subset of `0..len`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSubset {
    len: usize,
    words: Vec<u64>,
}

impl VertexSubset {
    pub fn empty(len: usize) -> Self {
        VertexSubset {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Self::empty(len);
        for i in 0..len {
            s.words[i / 64] |= 1 << (i % 64);
        }
        s
    }

    pub fn from_members(len: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(len);
        for m in members {
            s.insert(m)?;
        }
        Ok(s)
    }

    /// Subset of `0..len` given by the low bits of `mask`.
    pub fn from_mask(len: usize, mask: u64) -> Result<Self> {
        if len < 64 && mask >> len != 0 {
            return Err(Error::VertexOutOfRange {
                vertex: 63 - mask.leading_zeros() as usize,
                count: len,
            });
        }
        let mut s = Self::empty(len);
        if len > 0 {
            s.words[0] = mask;
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, i: usize) -> Result<()> {
        if i >= self.len {
            return Err(Error::VertexOutOfRange {
                vertex: i,
                count: self.len,
            });
        }
        self.words[i / 64] |= 1 << (i % 64);
        Ok(())
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.len {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

impl fmt::Debug for VertexSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// One connected component of a subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Island {
    pub vertices: VertexSubset,
    pub edges: Vec<usize>,
}

/// Components of a graph, ordered by smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IslandDecomposition {
    pub islands: Vec<Island>,
}

impl IslandDecomposition {
    pub fn len(&self) -> usize {
        self.islands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.islands.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    classes: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
            classes: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            let p = self.parent[x];
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    /// Returns true when two distinct classes were merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        self.classes -= 1;
        true
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    /// Overwrites `self` with `other`, reusing the allocation.
    pub fn copy_from(&mut self, other: &UnionFind) {
        self.parent.clone_from(&other.parent);
        self.rank.clone_from(&other.rank);
        self.classes = other.classes;
    }
}

/// Subgraph induced on `s`. Vertices are renumbered `0..|s|` in increasing
/// order; edge ids are kept.
pub fn induced(g: &Multigraph, s: &VertexSubset) -> Result<Multigraph> {
    if s.universe() > g.vertex_count() {
        if let Some(bad) = s.iter().find(|&v| v >= g.vertex_count()) {
            return Err(Error::VertexOutOfRange {
                vertex: bad,
                count: g.vertex_count(),
            });
        }
    }
    let mut index = vec![usize::MAX; g.vertex_count()];
    for (i, v) in s.iter().enumerate() {
        index[v] = i;
    }
    let edges = g
        .edges()
        .iter()
        .filter(|e| s.contains(e.u) && s.contains(e.v))
        .map(|e| Edge {
            id: e.id,
            u: index[e.u],
            v: index[e.v],
        })
        .collect();
    Multigraph::new(s.count(), edges)
}

/// Connected components; isolated vertices are singleton islands.
pub fn islands(g: &Multigraph) -> IslandDecomposition {
    let n = g.vertex_count();
    let mut uf = UnionFind::new(n);
    for e in g.edges() {
        uf.union(e.u, e.v);
    }
    let mut slot = vec![usize::MAX; n];
    let mut out: Vec<Island> = Vec::new();
    for v in 0..n {
        let r = uf.find(v);
        if slot[r] == usize::MAX {
            slot[r] = out.len();
            out.push(Island {
                vertices: VertexSubset::empty(n),
                edges: Vec::new(),
            });
        }
        out[slot[r]]
            .vertices
            .insert(v)
            .expect("vertex in range");
    }
    for e in g.edges() {
        let r = uf.find(e.u);
        out[slot[r]].edges.push(e.id);
    }
    IslandDecomposition { islands: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cycle(n: usize) -> Multigraph {
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Multigraph::from_pairs(n, &pairs).unwrap()
    }

    fn k4() -> Multigraph {
        Multigraph::from_pairs(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn induced_on_cycle_gives_path() {
        let g = cycle(4);
        let s = VertexSubset::from_members(4, [0, 1, 2]).unwrap();
        let h = induced(&g, &s).unwrap();
        assert_eq!(h.vertex_count(), 3);
        let ids: Vec<_> = h.edges().iter().map(|e| e.id).collect();
        assert_eq!(ids, vec![0, 1]);
        assert_eq!(islands(&h).len(), 1);
    }

    #[test]
    fn induced_on_empty_set() {
        let h = induced(&k4(), &VertexSubset::empty(4)).unwrap();
        assert_eq!(h.vertex_count(), 0);
        assert_eq!(h.edge_count(), 0);
        assert!(islands(&h).is_empty());
    }

    #[test]
    fn k4_triples_are_triangles() {
        for skip in 0..4 {
            let s = VertexSubset::from_members(4, (0..4).filter(|&v| v != skip)).unwrap();
            let h = induced(&k4(), &s).unwrap();
            assert_eq!(h.edge_count(), 3);
        }
    }

    #[test]
    fn induced_keeps_self_loops() {
        let g = Multigraph::from_pairs(3, &[(0, 0), (0, 1), (1, 2), (1, 2)]).unwrap();
        let s = VertexSubset::from_members(3, [0, 1]).unwrap();
        let ids: Vec<_> = induced(&g, &s).unwrap().edges().iter().map(|e| e.id).collect();
        assert_eq!(ids, vec![0, 1]);
    }

    #[test]
    fn induced_rejects_out_of_range() {
        let s = VertexSubset::from_members(10, [7]).unwrap();
        assert!(matches!(
            induced(&cycle(4), &s),
            Err(Error::VertexOutOfRange { vertex: 7, .. })
        ));
    }

    #[test]
    fn islands_of_discrete_graph() {
        let d = islands(&Multigraph::empty(3));
        assert_eq!(d.len(), 3);
        assert!(d.islands.iter().all(|i| i.vertices.count() == 1));
    }

    #[test]
    fn cycle_minus_vertex_is_one_island() {
        let s = VertexSubset::from_members(5, [0, 1, 2, 3]).unwrap();
        let h = induced(&cycle(5), &s).unwrap();
        let d = islands(&h);
        assert_eq!(d.len(), 1);
        assert_eq!(d.islands[0].edges.len(), 3);
    }

    #[test]
    fn two_disjoint_triangles() {
        let g = Multigraph::from_pairs(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let d = islands(&g);
        assert_eq!(d.len(), 2);
        assert!(d.islands.iter().all(|i| i.vertices.count() == 3 && i.edges.len() == 3));
    }

    #[test]
    fn multigraph_validation() {
        assert!(matches!(
            Multigraph::from_pairs(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, count: 2 })
        ));
        let dup = vec![Edge { id: 1, u: 0, v: 1 }, Edge { id: 1, u: 1, v: 0 }];
        assert_eq!(Multigraph::new(2, dup), Err(Error::DuplicateEdgeId(1)));
    }

    fn arb_graph() -> impl Strategy<Value = Multigraph> {
        (1usize..9).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..14)
                .prop_map(move |pairs| Multigraph::from_pairs(n, &pairs).unwrap())
        })
    }

    proptest! {
        #[test]
        fn adding_an_edge_never_increases_islands(g in arb_graph(), a in 0usize..9, b in 0usize..9) {
            let n = g.vertex_count();
            let (a, b) = (a % n, b % n);
            let mut pairs: Vec<_> = g.edges().iter().map(|e| (e.u, e.v)).collect();
            pairs.push((a, b));
            let h = Multigraph::from_pairs(n, &pairs).unwrap();
            prop_assert!(islands(&h).len() <= islands(&g).len());
        }

        #[test]
        fn islands_partition_vertices_and_edges(g in arb_graph()) {
            let d = islands(&g);
            let total: usize = d.islands.iter().map(|i| i.vertices.count()).sum();
            prop_assert_eq!(total, g.vertex_count());
            let edges: usize = d.islands.iter().map(|i| i.edges.len()).sum();
            prop_assert_eq!(edges, g.edge_count());
        }

        #[test]
        fn forest_islands_equal_v_minus_e(n in 1usize..10, seed in any::<u64>()) {
            // random forest: each vertex optionally attaches to an earlier one
            let mut pairs = Vec::new();
            let mut s = seed;
            for v in 1..n {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                if s >> 63 == 1 {
                    pairs.push(((s >> 8) as usize % v, v));
                }
            }
            let g = Multigraph::from_pairs(n, &pairs).unwrap();
            prop_assert_eq!(islands(&g).len(), n - pairs.len());
        }
    }
}
