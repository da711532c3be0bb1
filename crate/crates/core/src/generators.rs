//! Standard graphs and maps, and seeded random planar and toroidal maps.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Multigraph;
use crate::surface::{dart_a, dart_b, RotationMap};

pub fn path(n: usize) -> Multigraph {
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Multigraph::from_pairs(n, &pairs).expect("valid path")
}

pub fn cycle(n: usize) -> Multigraph {
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Multigraph::from_pairs(n, &pairs).expect("valid cycle")
}

pub fn complete(n: usize) -> Multigraph {
    let pairs: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    Multigraph::from_pairs(n, &pairs).expect("valid complete graph")
}

pub fn discrete(n: usize) -> Multigraph {
    Multigraph::empty(n)
}

/// Uniform random labelled tree via a random Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Multigraph {
    if n < 2 {
        return Multigraph::empty(n);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut pairs = Vec::with_capacity(n - 1);
    for &s in &seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        pairs.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    pairs.push((rest[0], rest[1]));
    Multigraph::from_pairs(n, &pairs).expect("valid tree")
}

/// Cycle drawn as a convex polygon.
pub fn cycle_map(n: usize) -> RotationMap {
    let rot = (0..n)
        .map(|i| vec![dart_a(i), dart_b((i + n - 1) % n)])
        .collect();
    RotationMap::new(cycle(n), rot).expect("cycle rotation is valid")
}

/// `rows x cols` grid with wrap-around in both directions. Edge `r * cols + c`
/// runs east from `(r, c)` and edge `rows * cols + r * cols + c` runs north.
/// Vertex `(r, c)` has id `r * cols + c`.
pub fn torus_grid(rows: usize, cols: usize) -> RotationMap {
    let id = |r: usize, c: usize| r * cols + c;
    let vertical = |r: usize, c: usize| rows * cols + r * cols + c;
    let mut pairs = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            pairs.push((id(r, c), id(r, (c + 1) % cols)));
        }
    }
    for r in 0..rows {
        for c in 0..cols {
            pairs.push((id(r, c), id((r + 1) % rows, c)));
        }
    }
    let g = Multigraph::from_pairs(rows * cols, &pairs).expect("valid grid");
    let mut rot = vec![Vec::new(); rows * cols];
    for r in 0..rows {
        for c in 0..cols {
            rot[id(r, c)] = vec![
                dart_a(id(r, c)),
                dart_a(vertical(r, c)),
                dart_b(id(r, (c + cols - 1) % cols)),
                dart_b(vertical((r + rows - 1) % rows, c)),
            ];
        }
    }
    RotationMap::new(g, rot).expect("grid rotation is valid")
}

/// What [`random_planar_map`] may add on top of its spanning tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKinds {
    /// No loops, no parallel edges.
    Simple,
    /// Loops and parallel edges allowed.
    Multi,
}

/// Editable rotation system used by the random constructions.
struct MapDraft {
    n: usize,
    pairs: Vec<(usize, usize)>,
    rot: Vec<Vec<usize>>,
}

impl MapDraft {
    fn from_tree<R: Rng + ?Sized>(tree: &Multigraph, rng: &mut R) -> Self {
        let n = tree.vertex_count();
        let mut rot = vec![Vec::new(); n];
        for (i, e) in tree.edges().iter().enumerate() {
            rot[e.u].push(dart_a(i));
            rot[e.v].push(dart_b(i));
        }
        for r in &mut rot {
            r.shuffle(rng);
        }
        MapDraft {
            n,
            pairs: tree.edges().iter().map(|e| (e.u, e.v)).collect(),
            rot,
        }
    }

    fn map(&self) -> RotationMap {
        let g = Multigraph::from_pairs(self.n, &self.pairs).expect("draft edges valid");
        RotationMap::new(g, self.rot.clone()).expect("draft rotation valid")
    }

    /// All corners `(vertex, position)` with the face they lie in.
    fn corners(&self) -> Vec<(usize, usize, usize)> {
        let m = self.map();
        let mut out = Vec::new();
        for v in 0..self.n {
            let len = self.rot[v].len().max(1);
            for p in 0..len {
                out.push((v, p, m.corner_face(v, p).expect("position in range")));
            }
        }
        out
    }

    fn insert_edge(&mut self, a: (usize, usize), b: (usize, usize)) {
        let id = self.pairs.len();
        self.rot[a.0].insert(a.1, dart_a(id));
        let pos_b = if b.0 == a.0 && b.1 > a.1 { b.1 + 1 } else { b.1 };
        self.rot[b.0].insert(pos_b, dart_b(id));
        self.pairs.push((a.0, b.0));
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.pairs
            .iter()
            .any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    }
}

/// Random connected genus-0 map on `n` vertices: a random tree with random
/// rotations plus up to `extra` edges, each drawn inside a single face.
pub fn random_planar_map<R: Rng + ?Sized>(n: usize, extra: usize, kinds: EdgeKinds, rng: &mut R) -> RotationMap {
    let mut draft = MapDraft::from_tree(&random_tree(n.max(1), rng), rng);
    for _ in 0..extra {
        let corners = draft.corners();
        let candidates: Vec<((usize, usize), (usize, usize))> = corners
            .iter()
            .flat_map(|&(u, p, f)| {
                corners
                    .iter()
                    .filter(move |&&(_, _, g)| g == f)
                    .map(move |&(v, q, _)| ((u, p), (v, q)))
            })
            .filter(|&((u, _), (v, _))| match kinds {
                EdgeKinds::Multi => true,
                EdgeKinds::Simple => u != v && !draft.adjacent(u, v),
            })
            .collect();
        match candidates.choose(rng) {
            Some(&(a, b)) => draft.insert_edge(a, b),
            None => break,
        }
    }
    draft.map()
}

/// Random genus-1 map: a random planar map plus one edge joining corners of
/// two different faces. The joining edge may be a loop or parallel edge.
pub fn random_torus_map<R: Rng + ?Sized>(n: usize, extra: usize, kinds: EdgeKinds, rng: &mut R) -> RotationMap {
    let planar = random_planar_map(n, extra.max(1), kinds, rng);
    let mut draft = MapDraft {
        n: planar.graph().vertex_count(),
        pairs: planar.graph().edges().iter().map(|e| (e.u, e.v)).collect(),
        rot: planar.rotations().to_vec(),
    };
    if planar.face_count() < 2 {
        // a tree has a single face; split it with a loop first
        let corners = draft.corners();
        let &(v, p, _) = corners.choose(rng).expect("a map has corners");
        draft.insert_edge((v, p), (v, p));
    }
    let corners = draft.corners();
    let candidates: Vec<_> = corners
        .iter()
        .flat_map(|&(u, p, f)| {
            corners
                .iter()
                .filter(move |&&(_, _, g)| g != f)
                .map(move |&(v, q, _)| ((u, p), (v, q)))
        })
        .collect();
    let &(a, b) = candidates
        .choose(rng)
        .expect("at least two faces");
    draft.insert_edge(a, b);
    draft.map()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::islands;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fixed_graphs() {
        assert_eq!(path(4).edge_count(), 3);
        assert_eq!(cycle(5).edge_count(), 5);
        assert_eq!(complete(4).edge_count(), 6);
        assert_eq!(cycle_map(6).face_count(), 2);
        let t = torus_grid(3, 4);
        assert_eq!((t.face_count(), t.genus()), (12, 1));
    }

    #[test]
    fn random_trees_are_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..12 {
            let t = random_tree(n, &mut rng);
            assert_eq!(t.edge_count(), n.saturating_sub(1));
            assert_eq!(islands(&t).len(), 1);
        }
    }

    #[test]
    fn random_maps_have_expected_genus() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..9 {
            for kinds in [EdgeKinds::Simple, EdgeKinds::Multi] {
                let m = random_planar_map(n, 2 * n, kinds, &mut rng);
                assert_eq!(m.genus(), 0);
                if kinds == EdgeKinds::Simple {
                    assert!(m.graph().is_simple());
                }
                let t = random_torus_map(n, n, kinds, &mut rng);
                assert_eq!(t.genus(), 1);
            }
        }
    }
}
