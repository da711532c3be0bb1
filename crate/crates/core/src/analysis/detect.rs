//! Syntactic recognition of tree, decorated-tree and cycle polynomials.
//!
//! A match only says the polynomial has the right shape. What that shape
//! implies about the graph depends on hypotheses (planarity, connectivity)
//! that the caller has to supply; see [`Classification::hypotheses`].

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    /// `(1+x)^{n-1} + (n-1)(1+x)^{n-2}`.
    Tree,
    /// `a(1+x)^{n-1} + b(1+x)^{n-2}` with `a + b − n` loops and `n − b − 1`
    /// parallel edges on top of a tree, both non-negative.
    DecoratedTree { a: BigInt, b: BigInt, loops: u64, parallels: u64 },
    /// `n(1+x)^{n-2} + c x^{n-1}` with `c` in {1, 2}.
    Cycle { c: u8 },
    None,
}

impl Classification {
    pub fn tag(&self) -> &'static str {
        match self {
            Classification::Tree => "tree",
            Classification::DecoratedTree { .. } => "decorated-tree",
            Classification::Cycle { .. } => "cycle",
            Classification::None => "none",
        }
    }

    /// The setting in which the match pins down the graph.
    pub fn hypotheses(&self) -> &'static str {
        match self {
            Classification::Tree => "planar: the graph is a tree; other surfaces: a tree plus loops and parallel edges",
            Classification::DecoratedTree { .. } => "planar, connected, n >= 3",
            Classification::Cycle { c: 2 } => "planar: the graph is a cycle; other surfaces: a separating cycle plus loops and parallel edges",
            Classification::Cycle { .. } => "non-planar host: a non-separating cycle plus loops and parallel edges",
            Classification::None => "",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetectResult {
    pub classification: Classification,
    /// `a_0..a_{n-1}` with `p = Σ a_k (1+x)^k`; empty when `deg p ≥ n`.
    pub coefficients: Vec<BigInt>,
}

pub fn tree_poly(n: usize) -> IntPoly {
    if n <= 1 {
        return IntPoly::one();
    }
    IntPoly::one_plus_x_pow(n - 1) + IntPoly::one_plus_x_pow(n - 2).scale(&BigInt::from(n - 1))
}

/// Classifies `p` as the polynomial of a graph on `n` vertices.
pub fn detect(p: &IntPoly, n: usize) -> DetectResult {
    let none = |coefficients| DetectResult {
        classification: Classification::None,
        coefficients,
    };
    if n == 0 {
        return none(Vec::new());
    }
    let Ok(coefficients) = p.shifted_basis_decompose(n) else {
        return none(Vec::new());
    };
    let found = |classification| DetectResult {
        classification,
        coefficients: coefficients.clone(),
    };
    if *p == tree_poly(n) {
        return found(Classification::Tree);
    }
    if n >= 3 {
        for c in [1u8, 2] {
            let cycle = IntPoly::one_plus_x_pow(n - 2).scale(&BigInt::from(n)) + IntPoly::monomial(c, n - 1);
            if *p == cycle {
                return found(Classification::Cycle { c });
            }
        }
        if coefficients[..n - 2].iter().all(Zero::is_zero) {
            let a = coefficients[n - 1].clone();
            let b = coefficients[n - 2].clone();
            let nn = BigInt::from(n);
            let loops = (&a + &b - &nn).to_u64();
            let parallels = (&nn - &b - BigInt::from(1)).to_u64();
            if let (Some(loops), Some(parallels)) = (loops, parallels) {
                return found(Classification::DecoratedTree { a, b, loops, parallels });
            }
        }
    }
    none(coefficients)
}
