//! Exact strength of quadratic forms from the rank of the symmetric
//! coefficient matrix, with collapse certificates built by splitting a rank
//! normal form. Certificates requiring square roots outside the base field
//! live formally in an extension by variables `w` with `w^2 = r`.

use super::collapse::{
    CollapseCertificate, MethodTag, StrengthEstimate, StrengthError, StrengthValue,
};
use crate::poly::{Polynomial, ScalarMatrix};
use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Symmetric matrix of a quadratic form: `A_ii = coeff(x_i^2)`,
/// `A_ij = coeff(x_i x_j) / 2`.
pub fn quadric_matrix(q: &Polynomial) -> ScalarMatrix {
    let ring = q.ring();
    let n = ring.nvars();
    let field = ring.field();
    let mut m = ScalarMatrix::zero(n, n, field);
    let half = Scalar::from_fraction(field, 1, 2);
    for (mono, c) in q.terms() {
        let supp: Vec<(usize, u32)> = mono
            .exps()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (i, e))
            .collect();
        match supp.as_slice() {
            [(i, 2)] => m.set(*i, *i, c.clone()),
            [(i, 1), (j, 1)] => {
                let v = c.checked_mul(&half).unwrap();
                m.set(*i, *j, v.clone());
                m.set(*j, *i, v);
            }
            _ => unreachable!("quadratic form term with bad support"),
        }
    }
    m
}

pub fn quadric_rank(q: &Polynomial) -> usize {
    quadric_matrix(q).rank()
}

fn coeff_of_square(q: &Polynomial, v: usize) -> Scalar {
    for (m, c) in q.terms() {
        if m.exp(v) == 2 && m.degree() == 2 && m.exps().iter().map(|&e| e as u64).sum::<u64>() == 2
        {
            return c.clone();
        }
    }
    Scalar::zero(q.field())
}

fn coeff_of_cross(q: &Polynomial, i: usize, j: usize) -> Scalar {
    for (m, c) in q.terms() {
        if m.exp(i) == 1 && m.exp(j) == 1 {
            return c.clone();
        }
    }
    Scalar::zero(q.field())
}

/// Decompose a quadratic form into hyperbolic products and squares:
/// `Q = sum G_k H_k + sum c_k L_k^2` over the base field, removing rank 2
/// per product and rank 1 per square.
fn decompose(q: &Polynomial) -> (Vec<(Polynomial, Polynomial)>, Vec<(Scalar, Polynomial)>) {
    let ring = q.ring().clone();
    let field = ring.field();
    let mut rem = q.clone();
    let mut pairs = Vec::new();
    let mut squares = Vec::new();
    while !rem.is_zero() {
        // prefer a diagonal entry: complete the square
        let diag = (0..ring.nvars()).find(|&v| !coeff_of_square(&rem, v).is_zero());
        if let Some(v) = diag {
            let c = coeff_of_square(&rem, v);
            let inv2c = c
                .checked_mul(&Scalar::from_int(field, 2))
                .unwrap()
                .inv()
                .unwrap();
            let l = rem.derivative(v).mul_scalar(&inv2c);
            rem = rem.sub(&l.mul(&l).mul_scalar(&c));
            squares.push((c, l));
            continue;
        }
        // all squares absent: hyperbolic extraction on the first cross term
        let mut found = None;
        'outer: for i in 0..ring.nvars() {
            for j in i + 1..ring.nvars() {
                let a = coeff_of_cross(&rem, i, j);
                if !a.is_zero() {
                    found = Some((i, j, a));
                    break 'outer;
                }
            }
        }
        let (i, j, a) = found.expect("nonzero quadratic form has some term");
        let g = rem.derivative(i).mul_scalar(&a.inv().unwrap());
        let h = rem.derivative(j);
        rem = rem.sub(&g.mul(&h));
        pairs.push((g, h));
    }
    (pairs, squares)
}

/// Exact square root of a nonnegative rational, if it exists in Q.
fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(BigRational::zero());
    }
    let num = r.numer();
    let den = r.denom();
    let sn: BigInt = num.sqrt();
    let sd: BigInt = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

/// Exact strength of a homogeneous quadratic form: `ceil(rank/2) - 1`. The
/// certificate splits the rank normal form; when a needed square root is
/// not rational the certificate lives over a formal extension and is marked
/// as such.
pub fn quadric_strength(q: &Polynomial) -> Result<StrengthEstimate, StrengthError> {
    if q.is_zero() {
        return Ok(StrengthEstimate::zero_form());
    }
    if q.homogeneous_degree() != Some(2) {
        return Err(StrengthError::WrongDegree(format!(
            "quadric strength needs a homogeneous degree-2 form, got degree {:?}",
            q.homogeneous_degree()
        )));
    }
    let rank = quadric_rank(q) as u64;
    let strength = rank.div_ceil(2) - 1;
    let (pairs, squares) = decompose(q);
    assert_eq!(
        2 * pairs.len() as u64 + squares.len() as u64,
        rank,
        "decomposition rank mismatch"
    );
    // pair up the squares, adjoining formal roots when needed
    let ring = q.ring().clone();
    let field = ring.field();
    let mut formal_values: Vec<Scalar> = Vec::new();
    enum Piece {
        Exact(Polynomial, Polynomial),
        Formal { c1: Scalar, l1: Polynomial, l2: Polynomial, root: usize },
    }
    let mut pieces: Vec<Piece> = pairs
        .into_iter()
        .map(|(g, h)| Piece::Exact(g, h))
        .collect();
    let mut it = squares.into_iter();
    while let Some((c1, l1)) = it.next() {
        match it.next() {
            None => {
                // lone square: c*L^2 = (c*L) * L
                pieces.push(Piece::Exact(l1.mul_scalar(&c1), l1));
            }
            Some((c2, l2)) => {
                // c1 L1^2 + c2 L2^2 = c1 (L1 - w L2)(L1 + w L2), w^2 = -c2/c1
                let ratio = c2.checked_div(&c1).unwrap().neg();
                let rational_root = ratio.as_rational().and_then(|r| rational_sqrt(&r));
                match rational_root {
                    Some(s) => {
                        let sw = Scalar::from_rational(field, s);
                        let g = l1.sub(&l2.mul_scalar(&sw)).mul_scalar(&c1);
                        let h = l1.add(&l2.mul_scalar(&sw));
                        pieces.push(Piece::Exact(g, h));
                    }
                    None => {
                        let root = formal_values.len();
                        formal_values.push(ratio);
                        pieces.push(Piece::Formal { c1, l1, l2, root });
                    }
                }
            }
        }
    }
    // build the certificate ring (extended when formal roots are present)
    let (cert_ring, formal_roots) = if formal_values.is_empty() {
        (ring.clone(), vec![])
    } else {
        let names: Vec<String> = (0..formal_values.len())
            .map(|k| ring.fresh_var(&format!("wroot{}", k)))
            .collect();
        let ext = ring.extend_many(&names).expect("fresh root variables");
        let base = ring.nvars();
        let roots = formal_values
            .iter()
            .enumerate()
            .map(|(k, r)| (base + k, r.clone()))
            .collect();
        (ext, roots)
    };
    let mut cert_pairs = Vec::new();
    for piece in pieces {
        match piece {
            Piece::Exact(g, h) => cert_pairs.push((
                g.transfer(&cert_ring).expect("subring transfer"),
                h.transfer(&cert_ring).expect("subring transfer"),
            )),
            Piece::Formal { c1, l1, l2, root } => {
                let w = Polynomial::var(&cert_ring, ring.nvars() + root);
                let l1e = l1.transfer(&cert_ring).unwrap();
                let l2e = l2.transfer(&cert_ring).unwrap();
                let g = l1e.sub(&w.mul(&l2e)).mul_scalar(&c1.embed(field).unwrap());
                let h = l1e.add(&w.mul(&l2e));
                cert_pairs.push((g, h));
            }
        }
    }
    let cert = CollapseCertificate {
        ring: cert_ring,
        pairs: cert_pairs,
        formal_roots,
    };
    debug_assert!(cert.verify(q).expect("certificate verification"));
    assert_eq!(cert.count() as u64, strength + 1);
    Ok(StrengthEstimate {
        lower: StrengthValue::Finite(strength),
        upper: StrengthValue::Finite(strength),
        methods: vec![MethodTag::QuadricRank],
        certificate: Some(cert),
    })
}
