//! Subset enumeration: island boundary counts, β̄ and β, colored counts.
//!
//! Marked vertices are packed into a `u64` in increasing host order, so the
//! subset with local mask `m` is the set of marked vertices whose bit is set.

use num_bigint::BigInt;

use crate::coloring::Coloring;
use crate::embedded::EmbeddedGraph;
use crate::error::{Error, Result};
use crate::graph::UnionFind;
use crate::poly::IntPoly;
use crate::surface::RotationMap;

/// Subsets are encoded in a `u64`, so this is the most marked vertices (or
/// colors) that can be enumerated at all.
pub const HARD_LIMIT: usize = 63;
pub const DEFAULT_SOFT_LIMIT: usize = 24;

/// `counts[i - 1]` is the count over subsets of size `i`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CountVector(pub Vec<BigInt>);

impl CountVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ_{i=1}^{k} D_i x^{i-1}` over the first `k` entries.
    pub fn generating_poly(&self, k: usize) -> IntPoly {
        IntPoly::new(self.0[..k.min(self.0.len())].to_vec())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Beta {
    pub counts: CountVector,
    pub bar: IntPoly,
    pub total: IntPoly,
}

impl Beta {
    fn from_counts(counts: CountVector) -> Self {
        let v = counts.len();
        let bar = counts.generating_poly(v.saturating_sub(1));
        let total = counts.generating_poly(v);
        Beta { counts, bar, total }
    }

    pub fn at_minus_one(&self) -> BigInt {
        self.total.at_minus_one()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Engine {
    pub threads: usize,
    pub soft_limit: usize,
    /// Enumerate past the soft limit (never past [`HARD_LIMIT`]).
    pub force: bool,
}

impl Default for Engine {
    fn default() -> Self {
        Engine {
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            soft_limit: DEFAULT_SOFT_LIMIT,
            force: false,
        }
    }
}

impl Engine {
    pub fn single_threaded() -> Self {
        Engine {
            threads: 1,
            ..Self::default()
        }
    }

    fn check_size(&self, k: usize) -> Result<()> {
        let limit = if self.force { HARD_LIMIT } else { self.soft_limit.min(HARD_LIMIT) };
        if k > limit {
            return Err(Error::SizeLimit { marked: k, limit });
        }
        Ok(())
    }

    /// `D_1..D_n` summed over every vertex subset, including the full set.
    pub fn island_counts(&self, eg: &EmbeddedGraph) -> Result<CountVector> {
        let n = eg.n();
        self.check_size(n)?;
        let fc = FaceCounter::new(eg);
        let buckets = self.run(n, |lo, hi, out| {
            let mut scratch = fc.scratch();
            for mask in lo..hi {
                out[mask.count_ones() as usize] += fc.faces(mask, &mut scratch) as u128;
            }
        });
        Ok(CountVector(buckets[1..].iter().map(|&c| BigInt::from(c)).collect()))
    }

    pub fn beta(&self, eg: &EmbeddedGraph) -> Result<Beta> {
        Ok(Beta::from_counts(self.island_counts(eg)?))
    }

    /// `𝒟_1..𝒟_c`: the subset of colors `T` contributes the face count of the
    /// subgraph induced on all vertices whose color lies in `T`.
    pub fn colored_counts(&self, eg: &EmbeddedGraph, col: &Coloring) -> Result<CountVector> {
        col.validate(eg)?;
        let c = col.color_count();
        self.check_size(c)?;
        let local = local_index(eg);
        let mut class = vec![0u64; c];
        for v in eg.marked_vertices() {
            let color = col.color_of(v).expect("validated coloring");
            class[color] |= 1 << local[v];
        }
        let fc = FaceCounter::new(eg);
        let buckets = self.run(c, |lo, hi, out| {
            let mut scratch = fc.scratch();
            for t in lo..hi {
                let mut mask = 0;
                let mut rest = t;
                while rest != 0 {
                    mask |= class[rest.trailing_zeros() as usize];
                    rest &= rest - 1;
                }
                out[t.count_ones() as usize] += fc.faces(mask, &mut scratch) as u128;
            }
        });
        Ok(CountVector(buckets[1..].iter().map(|&c| BigInt::from(c)).collect()))
    }

    pub fn beta_colored(&self, eg: &EmbeddedGraph, col: &Coloring) -> Result<IntPoly> {
        let counts = self.colored_counts(eg, col)?;
        Ok(counts.generating_poly(counts.len()))
    }

    /// `f_σ` of every vertex subset, indexed by local mask.
    pub fn face_table(&self, eg: &EmbeddedGraph) -> Result<Vec<u32>> {
        let n = eg.n();
        self.check_size(n)?;
        let fc = FaceCounter::new(eg);
        let mut table = vec![0u32; 1 << n];
        let chunk = table.len().div_ceil(self.threads.max(1)).max(1);
        std::thread::scope(|s| {
            for (i, part) in table.chunks_mut(chunk).enumerate() {
                let fc = &fc;
                s.spawn(move || {
                    let mut scratch = fc.scratch();
                    let base = (i * chunk) as u64;
                    for (j, slot) in part.iter_mut().enumerate() {
                        *slot = fc.faces(base + j as u64, &mut scratch) as u32;
                    }
                });
            }
        });
        Ok(table)
    }

    /// Runs `work` over nonempty masks `1..2^k`, split into contiguous ranges,
    /// and sums the per-popcount buckets.
    fn run<F>(&self, k: usize, work: F) -> Vec<u128>
    where
        F: Fn(u64, u64, &mut Vec<u128>) + Sync,
    {
        let end = 1u64 << k;
        let threads = (self.threads.max(1) as u64).min(end.max(1));
        let step = (end - 1).div_ceil(threads).max(1);
        let mut total = vec![0u128; k + 1];
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    let lo = 1 + t * step;
                    let hi = (lo + step).min(end);
                    let work = &work;
                    s.spawn(move || {
                        let mut out = vec![0u128; k + 1];
                        if lo < hi {
                            work(lo, hi, &mut out);
                        }
                        out
                    })
                })
                .collect();
            for h in handles {
                for (acc, x) in total.iter_mut().zip(h.join().expect("worker panicked")) {
                    *acc += x;
                }
            }
        });
        total
    }
}

/// Host vertex -> bit position among marked vertices.
fn local_index(eg: &EmbeddedGraph) -> Vec<usize> {
    let mut local = vec![usize::MAX; eg.host_graph().vertex_count()];
    for (i, v) in eg.marked_vertices().into_iter().enumerate() {
        local[v] = i;
    }
    local
}

enum Mode<'a> {
    Planar,
    Surface {
        map: &'a RotationMap,
        /// faces merged across every unmarked host edge and vertex
        base: UnionFind,
        /// host id of each local vertex
        hosts: Vec<usize>,
    },
}

/// Face count `f_σ` of induced subgraphs given by local masks.
struct FaceCounter<'a> {
    /// neighbours of each local vertex through marked non-loop edges
    adj: Vec<u64>,
    /// endpoint mask of every marked edge
    edge_masks: Vec<u64>,
    mode: Mode<'a>,
}

impl<'a> FaceCounter<'a> {
    fn new(eg: &'a EmbeddedGraph) -> Self {
        let local = local_index(eg);
        let g = eg.host_graph();
        let mut adj = vec![0u64; eg.n()];
        let mut edge_masks = Vec::new();
        for i in eg.marked_edges() {
            let e = &g.edges()[i];
            let (a, b) = (local[e.u], local[e.v]);
            edge_masks.push(1u64 << a | 1u64 << b);
            if a != b {
                adj[a] |= 1 << b;
                adj[b] |= 1 << a;
            }
        }
        let mode = match eg.map() {
            None => Mode::Planar,
            Some(map) => {
                let base = map.merged_faces(
                    (0..g.vertex_count()).filter(|&v| !eg.is_vertex_marked(v)),
                    (0..g.edge_count()).filter(|&e| !eg.is_edge_marked(e)),
                );
                Mode::Surface {
                    map,
                    base,
                    hosts: eg.marked_vertices(),
                }
            }
        };
        FaceCounter {
            adj,
            edge_masks,
            mode,
        }
    }

    fn scratch(&self) -> (UnionFind, UnionFind) {
        match &self.mode {
            Mode::Planar => (UnionFind::new(0), UnionFind::new(0)),
            Mode::Surface { base, .. } => (base.clone(), base.clone()),
        }
    }

    fn island_of(&self, seed: u64, within: u64) -> u64 {
        let mut island = seed;
        let mut frontier = seed;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.adj[v] & within & !island;
            island |= new;
            frontier |= new;
        }
        island
    }

    fn faces(&self, mask: u64, scratch: &mut (UnionFind, UnionFind)) -> u64 {
        if mask == 0 {
            return 0;
        }
        match &self.mode {
            Mode::Planar => {
                let mut islands = 0u64;
                let mut rest = mask;
                while rest != 0 {
                    let island = self.island_of(rest & rest.wrapping_neg(), mask);
                    rest &= !island;
                    islands += 1;
                }
                let edges = self.edge_masks.iter().filter(|&&m| m & !mask == 0).count() as u64;
                edges + 2 * islands - u64::from(mask.count_ones())
            }
            Mode::Surface { map, base, hosts } => {
                let (outer, island_uf) = scratch;
                outer.copy_from(base);
                let full = if hosts.len() == 64 { u64::MAX } else { (1u64 << hosts.len()) - 1 };
                let mut out = full & !mask;
                while out != 0 {
                    map.merge_around_vertex(outer, hosts[out.trailing_zeros() as usize]);
                    out &= out - 1;
                }
                let mut total = 0;
                let mut rest = mask;
                while rest != 0 {
                    let island = self.island_of(rest & rest.wrapping_neg(), mask);
                    rest &= !island;
                    island_uf.copy_from(outer);
                    let mut others = mask & !island;
                    while others != 0 {
                        map.merge_around_vertex(island_uf, hosts[others.trailing_zeros() as usize]);
                        others &= others - 1;
                    }
                    total += island_uf.classes() as u64;
                }
                total
            }
        }
    }
}

pub fn island_counts(eg: &EmbeddedGraph) -> Result<CountVector> {
    Engine::default().island_counts(eg)
}

pub fn beta(eg: &EmbeddedGraph) -> Result<Beta> {
    Engine::default().beta(eg)
}

pub fn beta_colored(eg: &EmbeddedGraph, col: &Coloring) -> Result<IntPoly> {
    Engine::default().beta_colored(eg, col)
}
