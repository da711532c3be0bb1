//! The alternating subgraph sum that recovers `χ − 2f`, and the recursive
//! expansion of β over proper induced subgraphs it comes from.

use num_bigint::BigInt;

use crate::embedded::EmbeddedGraph;
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Every induced subgraph is expanded separately, so cost grows like `3^n`.
pub const SUBGRAPH_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerReport {
    /// `(−1)^n β(−1) + Σ_{j=3}^{n−1} Σ_{|S|=j} (−1)^j β_S(−1)`.
    pub lhs: BigInt,
    /// `χ − 2f`.
    pub rhs: BigInt,
    pub chi: i64,
    pub faces: usize,
    /// β minus its expansion over proper induced subgraphs; always zero.
    pub expansion_residual: IntPoly,
}

impl EulerReport {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Per-size sums over induced subgraphs: `by_size[i][k]` is the coefficient
/// of `x^k` in `Σ_{|S| = i} β_S`, and `alternating[i]` is `Σ_{|S| = i} β_S(−1)`.
struct SubgraphSums {
    by_size: Vec<Vec<i64>>,
    alternating: Vec<i64>,
    full_faces: usize,
}

fn subgraph_sums(eg: &EmbeddedGraph, engine: &Engine) -> Result<SubgraphSums> {
    let n = eg.n();
    if n > SUBGRAPH_LIMIT {
        return Err(Error::SizeLimit {
            marked: n,
            limit: SUBGRAPH_LIMIT,
        });
    }
    let table = engine.face_table(eg)?;
    let mut by_size = vec![vec![0i64; n]; n + 1];
    let mut alternating = vec![0i64; n + 1];
    let mut coeffs = vec![0i64; n];
    for s in 1..table.len() as u64 {
        coeffs.iter_mut().for_each(|c| *c = 0);
        // every non-empty submask of s
        let mut t = s;
        while t != 0 {
            coeffs[t.count_ones() as usize - 1] += table[t as usize] as i64;
            t = (t - 1) & s;
        }
        let size = s.count_ones() as usize;
        for (k, c) in coeffs.iter().enumerate() {
            by_size[size][k] += c;
            alternating[size] += if k % 2 == 0 { *c } else { -c };
        }
    }
    Ok(SubgraphSums {
        by_size,
        alternating,
        full_faces: table.last().copied().unwrap_or(0) as usize,
    })
}

/// `β − (f x^{n−1} + Σ_{i=1}^{n−1} (−1)^{n−1−i} Σ_{|S|=i} β_S)`, where β
/// comes from a separate enumeration.
pub fn expansion_residual(eg: &EmbeddedGraph, engine: &Engine) -> Result<IntPoly> {
    let sums = subgraph_sums(eg, engine)?;
    Ok(residual_from(eg, engine, &sums)?)
}

fn residual_from(eg: &EmbeddedGraph, engine: &Engine, sums: &SubgraphSums) -> Result<IntPoly> {
    let n = eg.n();
    if n == 0 {
        return Ok(engine.beta(eg)?.total);
    }
    let mut rhs = IntPoly::monomial(sums.full_faces as i64, n - 1);
    for i in 1..n {
        let layer = IntPoly::from_i64s(&sums.by_size[i]);
        if (n - 1 - i) % 2 == 0 {
            rhs += &layer;
        } else {
            rhs -= &layer;
        }
    }
    Ok(engine.beta(eg)?.total - rhs)
}

/// Evaluates both sides of the Euler emergence identity. Multigraphs are
/// refused unless `allow_multigraph` is set, since the pair layer only
/// reduces to the edge count for simple graphs.
pub fn euler_emergence(eg: &EmbeddedGraph, allow_multigraph: bool, engine: &Engine) -> Result<EulerReport> {
    let n = eg.n();
    if n < 3 {
        return Err(Error::Range(format!("need at least 3 marked vertices, got {n}")));
    }
    if !allow_multigraph && !eg.graph().is_simple() {
        return Err(Error::Hypothesis("graph has loops or parallel edges".into()));
    }
    let sums = subgraph_sums(eg, engine)?;
    let sign = |j: usize| if j % 2 == 0 { 1i64 } else { -1 };
    let full = engine.beta(eg)?.at_minus_one();
    let mut lhs = full * sign(n);
    for j in 3..n {
        lhs += sign(j) * sums.alternating[j];
    }
    let chi = eg.euler_characteristic();
    let faces = sums.full_faces;
    Ok(EulerReport {
        lhs,
        rhs: BigInt::from(chi - 2 * faces as i64),
        chi,
        faces,
        expansion_residual: residual_from(eg, engine, &sums)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::graph::Multigraph;

    fn run(g: Multigraph) -> EulerReport {
        euler_emergence(&EmbeddedGraph::planar(g), false, &Engine::single_threaded()).unwrap()
    }

    #[test]
    fn worked_values() {
        let c3 = run(generators::cycle(3));
        assert_eq!((c3.lhs.clone(), c3.rhs.clone()), (BigInt::from(-2), BigInt::from(-2)));
        let k4 = run(generators::complete(4));
        assert_eq!((k4.lhs.clone(), k4.rhs.clone()), (BigInt::from(-6), BigInt::from(-6)));
        for n in 3..8 {
            let p = run(generators::path(n));
            assert!(p.holds());
            assert_eq!(p.rhs, BigInt::from(0));
            assert!(p.expansion_residual.is_zero());
        }
    }

    #[test]
    fn guards() {
        let eng = Engine::single_threaded();
        let small = EmbeddedGraph::planar(generators::path(2));
        assert!(matches!(euler_emergence(&small, false, &eng), Err(Error::Range(_))));
        let multi = EmbeddedGraph::planar(Multigraph::from_pairs(3, &[(0, 1), (0, 1), (1, 2)]).unwrap());
        assert!(matches!(euler_emergence(&multi, false, &eng), Err(Error::Hypothesis(_))));
        assert!(euler_emergence(&multi, true, &eng).is_ok());
    }

    #[test]
    fn expansion_holds_for_multigraphs_too() {
        let g = EmbeddedGraph::planar(Multigraph::from_pairs(4, &[(0, 1), (0, 1), (1, 2), (2, 2), (2, 3)]).unwrap());
        assert!(expansion_residual(&g, &Engine::single_threaded()).unwrap().is_zero());
    }
}
