//! Subgraph counts behind the short-circuit and pants results: ξ, the
//! co-island counts `s_k^{ij}` and the pants difference polynomial.

use num_bigint::BigInt;

use crate::embedded::{EmbeddedGraph, Host};
use crate::engine::{Engine, DEFAULT_SOFT_LIMIT};
use crate::error::{Error, Result};
use crate::graph::{Multigraph, VertexSubset};
use crate::poly::IntPoly;

/// `ξ(x) = Σ ξ_j x^{j-1}` where `ξ_j` counts `j`-subsets containing `v1` and
/// `v2` whose face count drops by exactly one when `e` is deleted.
pub fn xi_poly(eg: &EmbeddedGraph, v1: usize, v2: usize, e: usize, engine: &Engine) -> Result<IntPoly> {
    let edge = *eg.host_graph().edge(e).ok_or(Error::EdgeOutOfRange {
        edge: e,
        count: eg.host_graph().edge_count(),
    })?;
    if !eg.is_edge_marked(e) {
        return Err(Error::UnmarkedEdge(e));
    }
    if (edge.u, edge.v) != (v1, v2) && (edge.u, edge.v) != (v2, v1) {
        return Err(Error::Hypothesis(format!("edge {e} does not join {v1} and {v2}")));
    }
    let with = engine.face_table(eg)?;
    let without = engine.face_table(&eg.remove_edge(e)?)?;
    let local = eg.marked_vertices();
    let bit = |v: usize| 1u64 << local.binary_search(&v).expect("endpoint is marked");
    let need = bit(v1) | bit(v2);
    let mut xi = vec![0u64; local.len()];
    for mask in 0..with.len() as u64 {
        if mask & need == need && with[mask as usize] == without[mask as usize] + 1 {
            xi[mask.count_ones() as usize - 1] += 1;
        }
    }
    Ok(IntPoly::new(xi.into_iter().map(BigInt::from).collect()))
}

/// `s[k - 1]` is the number of `k`-vertex induced subgraphs of `g` in which
/// `i` and `j` lie in the same island.
pub fn s_counts(g: &Multigraph, i: usize, j: usize) -> Result<Vec<u64>> {
    let n = g.vertex_count();
    for v in [i, j] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, count: n });
        }
    }
    if i == j {
        return Err(Error::SameEndpoints(i));
    }
    if n > DEFAULT_SOFT_LIMIT {
        return Err(Error::SizeLimit {
            marked: n,
            limit: DEFAULT_SOFT_LIMIT,
        });
    }
    let mut adj = vec![0u64; n];
    for e in g.edges() {
        adj[e.u] |= 1 << e.v;
        adj[e.v] |= 1 << e.u;
    }
    let need = (1u64 << i) | (1u64 << j);
    let mut s = vec![0u64; n];
    for mask in 0..1u64 << n {
        if mask & need != need {
            continue;
        }
        // grow the island of i inside mask
        let mut reach = 1u64 << i;
        loop {
            let mut next = reach;
            let mut rest = reach;
            while rest != 0 {
                next |= adj[rest.trailing_zeros() as usize] & mask;
                rest &= rest - 1;
            }
            if next == reach {
                break;
            }
            reach = next;
        }
        if reach & (1 << j) != 0 {
            s[mask.count_ones() as usize - 1] += 1;
        }
    }
    Ok(s)
}

fn planar_marked(eg: &EmbeddedGraph, ends: [usize; 4]) -> Result<()> {
    if !matches!(eg.host(), Host::Planar(_)) {
        return Err(Error::ModeMismatch("pants transformation needs a planar graph"));
    }
    for (k, &v) in ends.iter().enumerate() {
        if v >= eg.host_graph().vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                count: eg.host_graph().vertex_count(),
            });
        }
        if !eg.is_vertex_marked(v) {
            return Err(Error::UnmarkedVertex(v));
        }
        if ends[..k].contains(&v) {
            return Err(Error::SameEndpoints(v));
        }
    }
    Ok(())
}

/// `2 Σ_k (s13 + s24 − s12 − s34)_k x^k` for the ends `[t1, t2, t3, t4]`.
pub fn pants_diff(eg: &EmbeddedGraph, ends: [usize; 4]) -> Result<IntPoly> {
    planar_marked(eg, ends)?;
    let local = eg.marked_vertices();
    let t = ends.map(|v| local.binary_search(&v).expect("marked"));
    let g = eg.graph();
    let s = |a: usize, b: usize| s_counts(&g, t[a], t[b]);
    let (s13, s24, s12, s34) = (s(0, 2)?, s(1, 3)?, s(0, 1)?, s(2, 3)?);
    let mut coeffs = vec![BigInt::from(0); g.vertex_count() + 1];
    for k in 0..g.vertex_count() {
        let c = s13[k] as i128 + s24[k] as i128 - s12[k] as i128 - s34[k] as i128;
        coeffs[k + 1] = BigInt::from(2 * c);
    }
    Ok(IntPoly::new(coeffs))
}

/// The two graphs obtained by attaching a bridge of type I and of type II to
/// `eg` at the ends `[t1, t2, t3, t4]`. Type I adds `m, n` with edges
/// `t1-m, t3-m, m-n, n-t2, n-t4`; type II adds `p, q` with edges
/// `t1-p, t2-p, p-q, q-t3, q-t4`.
pub fn pants_graphs(eg: &EmbeddedGraph, ends: [usize; 4]) -> Result<(EmbeddedGraph, EmbeddedGraph)> {
    planar_marked(eg, ends)?;
    let [t1, t2, t3, t4] = ends;
    let build = |left: [usize; 2], right: [usize; 2]| -> Result<EmbeddedGraph> {
        let host = eg.host_graph();
        let n = host.vertex_count();
        let (a, b) = (n, n + 1);
        let mut pairs: Vec<(usize, usize)> = host.edges().iter().map(|e| (e.u, e.v)).collect();
        let first_new = pairs.len();
        pairs.extend([(left[0], a), (left[1], a), (a, b), (b, right[0]), (b, right[1])]);
        let g = Multigraph::from_pairs(n + 2, &pairs)?;
        let vs = VertexSubset::from_members(n + 2, eg.marked_vertices().into_iter().chain([a, b]))?;
        let mut es = eg.marked_edges();
        es.extend(first_new..first_new + 5);
        EmbeddedGraph::with_marks(Host::Planar(g), vs, &es)
    };
    Ok((build([t1, t3], [t2, t4])?, build([t1, t2], [t3, t4])?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::beta;
    use crate::generators;

    fn planar(g: Multigraph) -> EmbeddedGraph {
        EmbeddedGraph::planar(g)
    }

    #[test]
    fn s_counts_small_cases() {
        assert_eq!(s_counts(&Multigraph::empty(4), 0, 1).unwrap(), vec![0; 4]);
        assert_eq!(s_counts(&generators::path(2), 0, 1).unwrap(), vec![0, 1]);
        assert_eq!(s_counts(&generators::complete(4), 0, 1).unwrap(), vec![0, 1, 2, 1]);
        assert!(s_counts(&generators::path(2), 1, 1).is_err());
    }

    #[test]
    fn xi_of_planar_parallel_edge() {
        // ξ = x (1+x)^{n-2} for a duplicated adjacency in the plane
        let g = planar(Multigraph::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (0, 1)]).unwrap());
        let xi = xi_poly(&g, 0, 1, 3, &Engine::single_threaded()).unwrap();
        assert_eq!(xi, IntPoly::monomial(1, 1) * IntPoly::one_plus_x_pow(2));
        let without = beta(&g.remove_edge(3).unwrap()).unwrap().total;
        assert_eq!(beta(&g).unwrap().total, without + xi);
    }

    #[test]
    fn xi_vanishes_for_a_tree_edge() {
        // deleting a tree edge raises the face count, never lowers it
        let g = planar(generators::path(3));
        assert!(xi_poly(&g, 0, 1, 0, &Engine::single_threaded()).unwrap().is_zero());
        assert!(xi_poly(&g, 0, 2, 0, &Engine::single_threaded()).is_err());
    }

    #[test]
    fn pants_edgeless_is_zero() {
        let g = planar(Multigraph::empty(4));
        assert!(pants_diff(&g, [0, 1, 2, 3]).unwrap().is_zero());
        let (one, two) = pants_graphs(&g, [0, 1, 2, 3]).unwrap();
        assert_eq!(beta(&one).unwrap().total, beta(&two).unwrap().total);
    }

    #[test]
    fn pants_dual_path_on_a_cycle() {
        let g = planar(generators::cycle(5));
        for ends in [[0, 1, 2, 3], [0, 2, 1, 4], [4, 3, 0, 2]] {
            let (one, two) = pants_graphs(&g, ends).unwrap();
            let direct = beta(&one).unwrap().total - beta(&two).unwrap().total;
            assert_eq!(direct, pants_diff(&g, ends).unwrap(), "{ends:?}");
        }
    }
}
