//! Closed-form scalar bounds.

use super::expr::BoundError;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug)]
pub enum ScalarBoundQuery {
    /// Maximum number of lower-degree partners P with (F, P) not radical:
    /// `d^2 (2d - 1)`.
    NonRadical { d: u64 },
    /// The Grad-set pigeonhole factor `2^(d^2)`.
    Grad { d: u64 },
    /// Minimal-prime count of a regular pair: `deg(P) * deg(Q)`.
    Bezout { p: u64, q: u64 },
    /// Fractional linear SG bound `ceil(4/delta) - 1`.
    LinearSg { delta: BigRational },
    /// Robust linear SG bound `floor(c + 1 + 8/delta)`.
    RobustLinear { c: u64, delta: BigRational },
}

pub fn scalar_bound(query: &ScalarBoundQuery) -> Result<BigUint, BoundError> {
    match query {
        ScalarBoundQuery::NonRadical { d } => {
            Ok(BigUint::from(d * d) * BigUint::from(2 * d - 1))
        }
        ScalarBoundQuery::Grad { d } => {
            let exp: u32 = (d * d)
                .try_into()
                .map_err(|_| BoundError::BadInput("d too large".into()))?;
            Ok(BigUint::from(2u64).pow(exp))
        }
        ScalarBoundQuery::Bezout { p, q } => Ok(BigUint::from(p * q)),
        ScalarBoundQuery::LinearSg { delta } => {
            if !delta.is_positive() || delta > &BigRational::one() {
                return Err(BoundError::BadInput("delta must lie in (0, 1]".into()));
            }
            let four = BigRational::from_integer(BigInt::from(4));
            let v = (four / delta).ceil().to_integer() - BigInt::one();
            Ok(v.max(BigInt::zero()).to_biguint().unwrap())
        }
        ScalarBoundQuery::RobustLinear { c, delta } => {
            if !delta.is_positive() || delta > &BigRational::one() {
                return Err(BoundError::BadInput("delta must lie in (0, 1]".into()));
            }
            let eight = BigRational::from_integer(BigInt::from(8));
            let v = BigRational::from_integer(BigInt::from(*c as i64 + 1)) + eight / delta;
            Ok(v.floor().to_integer().max(BigInt::zero()).to_biguint().unwrap())
        }
    }
}
