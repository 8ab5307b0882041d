//! Minimum strength of graded vector spaces: exact for low-dimensional
//! quadratic pieces through minor analysis of the symmetric-matrix pencil,
//! sampled upper bounds elsewhere.

use super::collapse::{
    collapse_search, MethodTag, StrengthEstimate, StrengthError, StrengthValue,
};
use super::quadric::{quadric_matrix, quadric_strength};
use crate::ideal::radical_member;
use crate::poly::{GradedVectorSpace, Polynomial, RingContext};
use crate::scalar::Scalar;
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct MinStrengthReport {
    /// `s_min` of the zero space is infinite by convention.
    pub zero_space: bool,
    pub per_degree: BTreeMap<u64, StrengthEstimate>,
}

/// Enumerate small integer coefficient combinations of the basis, basis
/// elements first; the scan is deterministic.
pub(crate) fn combo_scan(basis: &[Polynomial], radius: i64) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = basis.to_vec();
    let k = basis.len();
    if (2..=4).contains(&k) {
        let span = (2 * radius + 1) as u64;
        let total = span.pow(k as u32);
        if total <= 4096 {
            for code in 0..total {
                let mut c = code;
                let mut acc = Polynomial::zero(basis[0].ring());
                for b in basis {
                    let coef = (c % span) as i64 - radius;
                    c /= span;
                    if coef != 0 {
                        acc = acc.add(&b.mul_scalar(&Scalar::from_int(b.field(), coef)));
                    }
                }
                if !acc.is_zero() {
                    out.push(acc);
                }
            }
        }
    }
    out
}

/// Determinant by cofactor expansion; fine for the small minors that pencil
/// analysis needs.
fn cofactor_det(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    let ring = m[0][0].ring().clone();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Polynomial::zero(&ring);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&c| c != j)
                    .map(|c| m[i][c].clone())
                    .collect()
            })
            .collect();
        let sub = cofactor_det(&minor);
        let signed = if j % 2 == 0 { sub } else { sub.neg() };
        acc = acc.add(&m[0][j].mul(&signed));
    }
    acc
}

/// Exact minimum rank over the projectivized pencil of symmetric matrices:
/// the least rho such that the (rho+1)-minors have a common nonzero root,
/// decided by radical membership of the pencil coordinates.
fn pencil_min_rank(quadrics: &[Polynomial]) -> Result<usize, StrengthError> {
    let k = quadrics.len();
    let base_ring = quadrics[0].ring().clone();
    let n = base_ring.nvars();
    let lam_ring = RingContext::new(
        (0..k).map(|i| format!("lam{}", i)).collect(),
        None,
        base_ring.field(),
    )
    .expect("pencil parameter ring");
    // pencil matrix with entries linear in the lambda variables
    let mats: Vec<crate::poly::ScalarMatrix> = quadrics.iter().map(quadric_matrix).collect();
    let entry = |i: usize, j: usize| -> Polynomial {
        let mut acc = Polynomial::zero(&lam_ring);
        for (t, m) in mats.iter().enumerate() {
            let c = m.get(i, j).clone();
            if !c.is_zero() {
                acc = acc.add(&Polynomial::var(&lam_ring, t).mul_scalar(&c));
            }
        }
        acc
    };
    let pencil: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| (0..n).map(|j| entry(i, j)).collect())
        .collect();
    for rho in 0..n {
        // minors of size rho+1
        let size = rho + 1;
        let rows = combinations(n, size);
        let mut minors = Vec::new();
        for r in &rows {
            for c in &rows {
                let sub: Vec<Vec<Polynomial>> = r
                    .iter()
                    .map(|&i| c.iter().map(|&j| pencil[i][j].clone()).collect())
                    .collect();
                let det = cofactor_det(&sub);
                if !det.is_zero() {
                    minors.push(det);
                }
            }
        }
        if minors.is_empty() {
            // all minors vanish identically: every pencil member has rank <= rho
            return Ok(rho);
        }
        // exists nonzero lambda with all minors zero iff some coordinate is
        // outside the radical of the minor ideal
        let mut nonempty = false;
        for t in 0..k {
            let lam = Polynomial::var(&lam_ring, t);
            if !radical_member(&lam, &minors, None)
                .map_err(|e| StrengthError::Undecided(e.to_string()))?
            {
                nonempty = true;
                break;
            }
        }
        if nonempty {
            return Ok(rho);
        }
    }
    Ok(n)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return out;
            }
        }
    }
}

/// Per-degree minimum strength of the space. Degree-2 pieces of dimension
/// <= 3 are exact (pencil minors for the lower bound, a scanned witness for
/// the certificate); other pieces carry sampled upper bounds.
pub fn min_strength(
    space: &GradedVectorSpace,
    radius: u64,
) -> Result<MinStrengthReport, StrengthError> {
    if space.is_empty() {
        return Ok(MinStrengthReport {
            zero_space: true,
            per_degree: BTreeMap::new(),
        });
    }
    let mut per_degree = BTreeMap::new();
    for degree in 1..=space.max_degree() {
        let piece = space.graded_piece(degree);
        if piece.is_empty() {
            continue;
        }
        let est = min_strength_piece(&piece, degree, radius)?;
        per_degree.insert(degree, est);
    }
    Ok(MinStrengthReport {
        zero_space: false,
        per_degree,
    })
}

pub(crate) fn min_strength_piece(
    piece: &[Polynomial],
    degree: u64,
    radius: u64,
) -> Result<StrengthEstimate, StrengthError> {
    if degree == 1 {
        return Ok(StrengthEstimate::linear());
    }
    if degree == 2 {
        if piece.len() == 1 {
            return quadric_strength(&piece[0]);
        }
        // scanned upper bound with witness
        let mut best: Option<StrengthEstimate> = None;
        for cand in combo_scan(piece, radius.min(2) as i64) {
            let est = quadric_strength(&cand)?;
            if best
                .as_ref()
                .is_none_or(|b| est.upper < b.upper)
            {
                best = Some(est);
            }
        }
        let mut best = best.expect("nonempty piece");
        if piece.len() <= 3 {
            let exact = pencil_min_rank(piece)?;
            let exact_strength = if exact == 0 {
                // a nonzero combination with rank 0 cannot exist for an
                // independent basis
                StrengthValue::Finite(0)
            } else {
                StrengthValue::Finite((exact as u64).div_ceil(2) - 1)
            };
            best.methods.push(MethodTag::PencilMinors);
            best.lower = exact_strength;
            if best.lower > best.upper {
                return Err(StrengthError::Undecided(format!(
                    "pencil minimum {} exceeds scanned upper bound {}",
                    best.lower, best.upper
                )));
            }
        } else {
            best.methods.push(MethodTag::Sampled);
            best.lower = StrengthValue::Finite(0);
        }
        return Ok(best);
    }
    // degree >= 3: sampled upper bounds only
    let mut best: Option<StrengthEstimate> = None;
    for cand in combo_scan(piece, 1) {
        let est = collapse_search(&cand, radius)?;
        if best.as_ref().is_none_or(|b| est.upper < b.upper) {
            best = Some(est);
        }
    }
    let mut best = best.expect("nonempty piece");
    best.lower = StrengthValue::Finite(0);
    best.methods.push(MethodTag::Sampled);
    Ok(best)
}
