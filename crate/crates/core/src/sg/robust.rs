//! Robust linear SG checks for sets of degree-1 forms, with the dimension
//! bounds `ceil(4/delta) - 1` (plain) and `c + 1 + 8/delta` (over a vector
//! space W).

use crate::ideal::IdealError;
use crate::poly::{span_dimension, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug)]
pub struct RobustReport {
    pub m: usize,
    pub c: usize,
    pub delta: BigRational,
    pub condition_holds: bool,
    /// Indices failing the counting condition, if any.
    pub failing: Vec<usize>,
    pub span_dimension: usize,
    /// The applicable bound: `ceil(4/delta) - 1` when no W is supplied and
    /// c = 0, otherwise `floor(c + 1 + 8/delta)`.
    pub bound: BigInt,
    pub bound_formula: String,
    pub violated: bool,
}

impl RobustReport {
    pub fn to_structured(&self) -> String {
        let mut out = String::new();
        out.push_str("rsg-report v1\n");
        out.push_str("kind = robust-linear\n");
        out.push_str(&format!("m = {}\n", self.m));
        out.push_str(&format!("c = {}\n", self.c));
        out.push_str(&format!("delta = {}\n", self.delta));
        out.push_str(&format!("condition_holds = {}\n", self.condition_holds));
        for f in &self.failing {
            out.push_str(&format!("failing = {}\n", f));
        }
        out.push_str(&format!("span = {}\n", self.span_dimension));
        out.push_str(&format!("bound = {}\n", self.bound));
        out.push_str(&format!("bound_formula = {}\n", self.bound_formula));
        out.push_str(&format!("violated = {}\n", self.violated));
        out
    }
}

fn in_span(candidate: &Polynomial, space: &[Polynomial]) -> bool {
    if candidate.is_zero() {
        return true;
    }
    let base = span_dimension(space).unwrap_or(0);
    let mut all = space.to_vec();
    all.push(candidate.clone());
    span_dimension(&all).map(|r| r == base).unwrap_or(false)
}

/// Verify the (c, delta) robust linear SG condition for the supplied forms
/// against an optional vector space `W` (caller-supplied; no existence
/// search). With no `W`, `c` is forced to 0 and the plain delta-SG condition
/// is checked.
pub fn robust_linear_check(
    points: &[Polynomial],
    delta: &BigRational,
    w: Option<&[Polynomial]>,
) -> Result<RobustReport, IdealError> {
    if delta <= &BigRational::zero() || delta > &BigRational::from_integer(BigInt::from(1)) {
        return Err(IdealError::BadInput(format!(
            "delta must lie in (0, 1], got {}",
            delta
        )));
    }
    let m = points.len();
    for (i, p) in points.iter().enumerate() {
        if p.homogeneous_degree() != Some(1) {
            return Err(IdealError::BadInput(format!(
                "point {} is not a nonzero linear form",
                i
            )));
        }
        for (j, q) in points.iter().enumerate().skip(i + 1) {
            if span_dimension(&[p.clone(), q.clone()])? < 2 {
                return Err(IdealError::BadInput(format!(
                    "points {} and {} are associate",
                    i, j
                )));
            }
        }
    }
    let w_basis: Vec<Polynomial> = w.map(|s| s.to_vec()).unwrap_or_default();
    let c = span_dimension(&w_basis)?;

    // threshold: at least delta*(m-1) good indices j
    let threshold = delta * BigRational::from_integer(BigInt::from(m as i64 - 1));
    let mut failing = Vec::new();
    for i in 0..m {
        if !w_basis.is_empty() && in_span(&points[i], &w_basis) {
            continue; // condition only quantifies over forms outside W
        }
        let mut good = 0i64;
        for j in 0..m {
            if j == i {
                continue;
            }
            if !w_basis.is_empty() && in_span(&points[j], &w_basis) {
                continue;
            }
            // |span(l_i, l_j) ∩ F| >= 3: a third configuration form lies in
            // the pencil
            let pencil = [points[i].clone(), points[j].clone()];
            let mut has_third = false;
            for (k, cand) in points.iter().enumerate() {
                if k == i || k == j {
                    continue;
                }
                if in_span(cand, &pencil) {
                    has_third = true;
                    break;
                }
            }
            let mut meets_w = false;
            if !has_third && !w_basis.is_empty() {
                // span(l_i, l_j) ∩ W != 0 iff ranks drop when combined
                let mut all = w_basis.clone();
                all.extend_from_slice(&pencil);
                let combined = span_dimension(&all)?;
                meets_w = combined < c + 2;
            }
            if has_third || meets_w {
                good += 1;
            }
        }
        if BigRational::from_integer(BigInt::from(good)) < threshold {
            failing.push(i);
        }
    }
    let condition_holds = failing.is_empty();
    let span = span_dimension(points)?;
    let (bound, formula) = if w.is_none() {
        // ceil(4/delta) - 1
        let four = BigRational::from_integer(BigInt::from(4));
        let q = &four / delta;
        let ceil = q.ceil().to_integer();
        (ceil - BigInt::from(1), "ceil(4/delta) - 1".to_string())
    } else {
        // floor(c + 1 + 8/delta)
        let eight = BigRational::from_integer(BigInt::from(8));
        let v = BigRational::from_integer(BigInt::from(c as i64 + 1)) + &eight / delta;
        (v.floor().to_integer(), "c + 1 + 8/delta".to_string())
    };
    let violated = condition_holds && BigInt::from(span as i64) > bound.clone().max(BigInt::zero());
    Ok(RobustReport {
        m,
        c,
        delta: delta.clone(),
        condition_holds,
        failing,
        span_dimension: span,
        bound: bound.abs().max(BigInt::zero()),
        bound_formula: formula,
        violated,
    })
}
