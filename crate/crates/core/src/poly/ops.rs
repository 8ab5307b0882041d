//! Squarefree parts, resultants, discriminants and homogenization.

use super::{poly_gcd, Monomial, PolyError, Polynomial, RingRef};
use crate::scalar::Scalar;

/// `f / gcd(f, df/dx_1, ..., df/dx_N)`: squarefree, same radical (char 0).
pub fn squarefree_part(f: &Polynomial) -> Result<Polynomial, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroInput("squarefree_part"));
    }
    let mut g = f.clone();
    for v in f.support_vars() {
        let d = f.derivative(v);
        if !d.is_zero() {
            g = poly_gcd(&g, &d)?;
        }
        if g.is_constant() {
            break;
        }
    }
    if g.is_constant() {
        return Ok(f.normalize_monic());
    }
    Ok(f.div_exact(&g)
        .expect("gcd with partials divides f")
        .normalize_monic())
}

/// True when `f` equals its squarefree part up to a scalar.
pub fn is_squarefree(f: &Polynomial) -> Result<bool, PolyError> {
    Ok(squarefree_part(f)?.is_associate(&f.normalize_monic()))
}

/// Sylvester-matrix resultant of `f` and `g` with respect to `var`, computed
/// by fraction-free (Bareiss) elimination over the coefficient subring.
///
/// If one input is independent of `var`, the standard power convention
/// applies: `Res(f, c) = c^deg_var(f)`.
pub fn resultant(f: &Polynomial, g: &Polynomial, var: usize) -> Result<Polynomial, PolyError> {
    let ring = f.ring();
    let n = f.degree_in(var).unwrap_or(0) as usize;
    let m = g.degree_in(var).unwrap_or(0) as usize;
    if n == 0 && m == 0 {
        return Err(PolyError::DegreeError(
            "resultant needs at least one input of positive degree in the variable".into(),
        ));
    }
    if f.is_zero() || g.is_zero() {
        return Ok(Polynomial::zero(ring));
    }
    if n == 0 {
        return Ok(f.pow(m as u32));
    }
    if m == 0 {
        return Ok(g.pow(n as u32));
    }
    let fc = f.coeffs_in_var(var);
    let gc = g.coeffs_in_var(var);
    // Sylvester matrix, size (n+m): m rows of f's coefficients, n rows of g's.
    let size = n + m;
    let zero = Polynomial::zero(ring);
    let mut mat = vec![vec![zero.clone(); size]; size];
    for row in 0..m {
        for (k, c) in fc.iter().enumerate() {
            mat[row][row + (n - k)] = c.clone();
        }
    }
    for row in 0..n {
        for (k, c) in gc.iter().enumerate() {
            mat[m + row][row + (m - k)] = c.clone();
        }
    }
    Ok(bareiss_det(mat))
}

/// Fraction-free determinant of a square polynomial matrix.
fn bareiss_det(mut m: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(m.first().map(|r| r[0].ring()).unwrap());
    }
    let ring = m[0][0].ring().clone();
    let mut sign_neg = false;
    let mut prev = Polynomial::one(&ring);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // pivot search below row k
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_neg = !sign_neg;
                }
                None => return Polynomial::zero(&ring),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .div_exact(&prev)
                    .expect("Bareiss pivot divides exactly");
            }
            m[i][k] = Polynomial::zero(&ring);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_neg {
        det.neg()
    } else {
        det
    }
}

/// `Res_var(f, df/dvar)` with no leading-coefficient division. Zero exactly
/// when `f` has a multiple factor involving `var` (characteristic 0).
pub fn discriminant(f: &Polynomial, var: usize) -> Result<Polynomial, PolyError> {
    if f.degree_in(var).unwrap_or(0) == 0 {
        return Err(PolyError::DegreeError(
            "discriminant requires the polynomial to depend on the variable".into(),
        ));
    }
    let df = f.derivative(var);
    resultant(f, &df, var)
}

/// Homogenize with respect to a fresh weight-1 variable appended to the
/// ring. Returns the extended ring and the homogeneous polynomial.
pub fn homogenize(f: &Polynomial, var: &str) -> Result<(RingRef, Polynomial), PolyError> {
    let ring = f.ring();
    let ext = ring
        .extend(var)
        .map_err(|_| PolyError::UnknownVariable(format!("variable collision: {}", var)))?;
    if f.is_zero() {
        return Ok((ext.clone(), Polynomial::zero(&ext)));
    }
    let d = f.degree().unwrap();
    let new_idx = ext.nvars() - 1;
    let mut terms = Vec::with_capacity(f.nterms());
    for (m, c) in f.terms() {
        let mut exps = m.exps().to_vec();
        exps.push((d - m.degree()) as u32);
        let _ = new_idx;
        terms.push((Monomial::new(exps, &ext), c.clone()));
    }
    let h = Polynomial::from_terms(&ext, terms);
    Ok((ext, h))
}

/// Set the last ring variable to 1 and drop it: the inverse of `homogenize`.
pub fn dehomogenize(f: &Polynomial, target: &RingRef) -> Polynomial {
    let ring = f.ring();
    let n = ring.nvars();
    assert_eq!(target.nvars() + 1, n);
    let mut images: Vec<Polynomial> = (0..n - 1).map(|i| Polynomial::var(target, i)).collect();
    images.push(Polynomial::one(target));
    f.substitute(target, &images)
}

#[allow(dead_code)]
pub fn poly_pow(f: &Polynomial, e: u32) -> Polynomial {
    f.pow(e)
}

impl Polynomial {
    /// Convenience: scalar multiple helper used by tests.
    pub fn scaled(&self, num: i64, den: i64) -> Polynomial {
        self.mul_scalar(&Scalar::from_fraction(self.field(), num, den))
    }
}
