//! Identity residuals, subgraph counts, detection, Euler emergence and the
//! entanglement scaling.

pub mod counts;
pub mod detect;
pub mod euler;
pub mod identities;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use counts::{pants_diff, pants_graphs, s_counts, xi_poly};
pub use detect::{detect, Classification, DetectResult};
pub use euler::{euler_emergence, expansion_residual, EulerReport};
pub use identities::{Identity, IdentityInstance, IdentityRegistry, Operand};

/// Topological entanglement entropy `−Ω β(−1)` for a given `Ω`.
pub fn tee(beta_at_minus_one: &BigInt, omega: &BigRational) -> BigRational {
    -(omega * BigRational::from_integer(beta_at_minus_one.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tee_scaling() {
        let one = BigRational::from_integer(1.into());
        assert_eq!(tee(&BigInt::from(2), &one), BigRational::from_integer((-2).into()));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(tee(&BigInt::from(0), &half), BigRational::from_integer(0.into()));
        assert_eq!(tee(&BigInt::from(-2), &half), one);
    }
}
