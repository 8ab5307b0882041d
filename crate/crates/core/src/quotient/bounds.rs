//! Exact big-integer evaluation of the lifting bounds for general quotients
//! and their compositions.

use crate::ideal::IdealError;
use num_bigint::BigUint;

/// Which lifting-bound formula to evaluate.
#[derive(Clone, Debug)]
pub enum LiftingVariant {
    /// `d^2 (1+d)^(2n+2) D`
    Basic { d: u64, n: u64 },
    /// basic times the product of the extra degrees (defining forms and
    /// quotient-space basis degrees)
    General { d: u64, n: u64, extra_degrees: Vec<u64> },
    /// `(d+3)^(3 dim_v + 6) e^(dim_u) D`
    PreservesSg { d: u64, e: u64, dim_v: u64, dim_u: u64 },
}

pub fn lifting_bound(variant: &LiftingVariant, dim: &BigUint) -> BigUint {
    match variant {
        LiftingVariant::Basic { d, n } => {
            let d2 = BigUint::from(*d) * BigUint::from(*d);
            let growth = BigUint::from(1u64 + d).pow((2 * n + 2) as u32);
            d2 * growth * dim
        }
        LiftingVariant::General { d, n, extra_degrees } => {
            let mut v = lifting_bound(&LiftingVariant::Basic { d: *d, n: *n }, dim);
            for &e in extra_degrees {
                v *= BigUint::from(e.max(1));
            }
            v
        }
        LiftingVariant::PreservesSg { d, e, dim_v, dim_u } => {
            let a = BigUint::from(d + 3).pow((3 * dim_v + 6) as u32);
            let b = BigUint::from(*e).pow(*dim_u as u32);
            a * b * dim
        }
    }
}

/// Bound for a composition of `ell` general quotients:
/// `(d+3)^(6*ell + 3*sum n_k) * e^(ell*dim_u + sum_{k<=ell-2} (ell-k-1) n_k) * D`.
pub fn compose_bound(
    d: u64,
    e: u64,
    ell: u64,
    n_list: &[u64],
    u_dim: u64,
    dim: &BigUint,
) -> Result<BigUint, IdealError> {
    if n_list.len() as u64 != ell {
        return Err(IdealError::BadInput(format!(
            "composition of length {} needs {} quotient dimensions, got {}",
            ell,
            ell,
            n_list.len()
        )));
    }
    if ell == 0 {
        return Ok(dim.clone());
    }
    let sum_n: u64 = n_list.iter().sum();
    let exp1 = 6 * ell + 3 * sum_n;
    let mut exp2 = ell * u_dim;
    for (k, &nk) in n_list.iter().enumerate() {
        let k = k as u64;
        if k + 2 <= ell {
            exp2 += (ell - k - 1) * nk;
        }
    }
    let a = BigUint::from(d + 3).pow(exp1 as u32);
    let b = BigUint::from(e.max(1)).pow(exp2 as u32);
    Ok(a * b * dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_variant_spec_value() {
        // d=2, n=1, D=3 -> 4 * 3^4 * 3 = 972
        let v = lifting_bound(&LiftingVariant::Basic { d: 2, n: 1 }, &BigUint::from(3u64));
        assert_eq!(v, BigUint::from(972u64));
        // D = 0 -> 0
        let z = lifting_bound(&LiftingVariant::Basic { d: 2, n: 1 }, &BigUint::from(0u64));
        assert_eq!(z, BigUint::from(0u64));
    }

    #[test]
    fn general_variant_spec_value() {
        // 972 * 2 * 2 = 3888
        let v = lifting_bound(
            &LiftingVariant::General {
                d: 2,
                n: 1,
                extra_degrees: vec![2, 2],
            },
            &BigUint::from(3u64),
        );
        assert_eq!(v, BigUint::from(3888u64));
    }

    #[test]
    fn compose_spec_values() {
        // ell=1, n0=2, u=0, d=2, e=2, D=5 -> 5^12 * 5
        let v = compose_bound(2, 2, 1, &[2], 0, &BigUint::from(5u64)).unwrap();
        let expected = BigUint::from(5u64).pow(12) * BigUint::from(5u64);
        assert_eq!(v, expected);
        // empty composition is the identity
        let id = compose_bound(2, 2, 0, &[], 7, &BigUint::from(9u64)).unwrap();
        assert_eq!(id, BigUint::from(9u64));
        // minimal case: D=1, dims 0, ell=1, n0=0 -> (d+3)^6
        let m = compose_bound(2, 2, 1, &[0], 0, &BigUint::from(1u64)).unwrap();
        assert_eq!(m, BigUint::from(5u64).pow(6));
        // length mismatch
        assert!(compose_bound(2, 2, 2, &[1], 0, &BigUint::from(1u64)).is_err());
    }
}
