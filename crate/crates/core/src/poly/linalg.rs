//! Exact linear algebra over the scalar field: rank, determinant, nullspace,
//! span dimension of polynomial sets, and the monomial Vandermonde
//! determinant.

use super::{Monomial, PolyError, Polynomial};
use crate::scalar::{FieldDescriptor, Scalar};
use std::collections::BTreeSet;

/// Dense matrix of scalars with exact Gaussian elimination.
#[derive(Clone, Debug)]
pub struct ScalarMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
    field: FieldDescriptor,
}

impl ScalarMatrix {
    pub fn zero(rows: usize, cols: usize, field: FieldDescriptor) -> Self {
        ScalarMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(field); rows * cols],
            field,
        }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, field: FieldDescriptor) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row);
        }
        ScalarMatrix {
            rows: r,
            cols: c,
            data,
            field,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    /// Rank by exact Gaussian elimination; consumes a working copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            // find pivot
            let pivot = (row..m.rows).find(|&i| !m.get(i, col).is_zero());
            let Some(p) = pivot else { continue };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().unwrap();
            for j in col..m.cols {
                let v = m.get(row, j).checked_mul(&inv).unwrap();
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i != row && !m.get(i, col).is_zero() {
                    let factor = m.get(i, col).clone();
                    for j in col..m.cols {
                        let v = m
                            .get(i, j)
                            .checked_sub(&factor.checked_mul(m.get(row, j)).unwrap())
                            .unwrap();
                        m.set(i, j, v);
                    }
                }
            }
            rank += 1;
            row += 1;
            if row == m.rows {
                break;
            }
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Exact determinant of a square matrix.
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut m = self.clone();
        let mut det = Scalar::one(self.field);
        for col in 0..m.cols {
            let pivot = (col..m.rows).find(|&i| !m.get(i, col).is_zero());
            let Some(p) = pivot else {
                return Scalar::zero(self.field);
            };
            if p != col {
                m.swap_rows(col, p);
                det = det.neg();
            }
            let pv = m.get(col, col).clone();
            det = det.checked_mul(&pv).unwrap();
            let inv = pv.inv().unwrap();
            for i in col + 1..m.rows {
                if m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col).checked_mul(&inv).unwrap();
                for j in col..m.cols {
                    let v = m
                        .get(i, j)
                        .checked_sub(&factor.checked_mul(m.get(col, j)).unwrap())
                        .unwrap();
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Solve `M x = rhs` exactly; `None` when inconsistent. With several
    /// solutions the free variables are set to zero.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(rhs.len(), self.rows);
        let mut m = ScalarMatrix::zero(self.rows, self.cols + 1, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            m.set(i, self.cols, rhs[i].clone());
        }
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let pivot = (row..m.rows).find(|&i| !m.get(i, col).is_zero());
            let Some(p) = pivot else { continue };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().unwrap();
            for j in col..=self.cols {
                let v = m.get(row, j).checked_mul(&inv).unwrap();
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i != row && !m.get(i, col).is_zero() {
                    let factor = m.get(i, col).clone();
                    for j in col..=self.cols {
                        let v = m
                            .get(i, j)
                            .checked_sub(&factor.checked_mul(m.get(row, j)).unwrap())
                            .unwrap();
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push((row, col));
            row += 1;
            if row == m.rows {
                break;
            }
        }
        // inconsistent when a zero row has nonzero rhs
        for i in row..m.rows {
            if !m.get(i, self.cols).is_zero() {
                return None;
            }
        }
        let mut x = vec![Scalar::zero(self.field); self.cols];
        for &(r, c) in &pivots {
            x[c] = m.get(r, self.cols).clone();
        }
        Some(x)
    }

    /// Basis of the right nullspace (solutions of M v = 0), as column
    /// vectors. Deterministic: free columns in ascending order.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
        let mut row = 0;
        for col in 0..m.cols {
            let pivot = (row..m.rows).find(|&i| !m.get(i, col).is_zero());
            let Some(p) = pivot else { continue };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().unwrap();
            for j in col..m.cols {
                let v = m.get(row, j).checked_mul(&inv).unwrap();
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i != row && !m.get(i, col).is_zero() {
                    let factor = m.get(i, col).clone();
                    for j in col..m.cols {
                        let v = m
                            .get(i, j)
                            .checked_sub(&factor.checked_mul(m.get(row, j)).unwrap())
                            .unwrap();
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push((row, col));
            row += 1;
            if row == m.rows {
                break;
            }
        }
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..m.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(self.field); m.cols];
            v[free] = Scalar::one(self.field);
            for &(r, c) in &pivots {
                v[c] = m.get(r, free).neg();
            }
            basis.push(v);
        }
        basis
    }
}

/// Collect the monomial support of a set of polynomials, descending.
fn monomial_support(polys: &[Polynomial]) -> Vec<Monomial> {
    let mut set: BTreeSet<Monomial> = BTreeSet::new();
    for p in polys {
        for (m, _) in p.terms() {
            set.insert(m.clone());
        }
    }
    set.into_iter().rev().collect()
}

/// Coefficient matrix of the polynomials over their combined monomial
/// support (one row per polynomial).
pub fn coefficient_matrix(polys: &[Polynomial]) -> (ScalarMatrix, Vec<Monomial>) {
    let field = polys
        .first()
        .map(|p| p.field())
        .unwrap_or(FieldDescriptor::Rationals);
    let support = monomial_support(polys);
    let mut m = ScalarMatrix::zero(polys.len(), support.len(), field);
    for (i, p) in polys.iter().enumerate() {
        for (mono, c) in p.terms() {
            let j = support
                .binary_search_by(|probe| mono.cmp(probe))
                .expect("support contains every monomial");
            m.set(i, j, c.clone());
        }
    }
    (m, support)
}

/// Dimension of the K-linear span of the polynomials (exact rank of the
/// coefficient matrix). Empty input gives 0.
pub fn span_dimension(polys: &[Polynomial]) -> Result<usize, PolyError> {
    if polys.is_empty() {
        return Ok(0);
    }
    let ring = polys[0].ring();
    for p in polys {
        if !super::RingContext::same_ring(ring, p.ring()) {
            return Err(PolyError::RingMismatch);
        }
    }
    let (m, _) = coefficient_matrix(polys);
    Ok(m.rank())
}

/// Determinant of the r x r matrix `M_ij = monomial_i(point_j)`, exact.
pub fn vandermonde_det(
    monomials: &[Monomial],
    points: &[Vec<Scalar>],
    field: FieldDescriptor,
) -> Result<Scalar, PolyError> {
    let r = monomials.len();
    if points.len() != r {
        return Err(PolyError::DimensionMismatch(format!(
            "{} monomials vs {} points",
            r,
            points.len()
        )));
    }
    let nvars = monomials.first().map_or(0, |m| m.exps().len());
    for p in points {
        if p.len() != nvars {
            return Err(PolyError::DimensionMismatch(format!(
                "point dimension {} != variable count {}",
                p.len(),
                nvars
            )));
        }
    }
    let mut m = ScalarMatrix::zero(r, r, field);
    for (i, mono) in monomials.iter().enumerate() {
        for (j, pt) in points.iter().enumerate() {
            let mut v = Scalar::one(field);
            for (k, &e) in mono.exps().iter().enumerate() {
                if e > 0 {
                    v = v.checked_mul(&pt[k].pow(e as u64)).expect("same field");
                }
            }
            m.set(i, j, v);
        }
    }
    Ok(m.det())
}
