//! Sparse multivariate polynomials with exact coefficients, plus the
//! primitive operations the rest of the crate is built on: arithmetic, GCD,
//! squarefree parts, resultants, homogenization and exact linear algebra.

mod gcd;
mod graded;
mod linalg;
mod ops;
mod parse;
mod ring;

pub use gcd::poly_gcd;
pub use graded::GradedVectorSpace;
pub use linalg::coefficient_matrix;
pub use linalg::{span_dimension, vandermonde_det, ScalarMatrix};
pub use ops::{dehomogenize, discriminant, homogenize, is_squarefree, resultant, squarefree_part};
pub use parse::{parse_polynomial, ParseError};
pub use ring::{Monomial, RingContext, RingError, RingRef};

use crate::scalar::{FieldDescriptor, Scalar};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    RingMismatch,
    ZeroInput(&'static str),
    UnknownVariable(String),
    DegreeError(String),
    DimensionMismatch(String),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::RingMismatch => write!(f, "polynomials live in different rings"),
            PolyError::ZeroInput(op) => write!(f, "zero input not allowed in {}", op),
            PolyError::UnknownVariable(v) => write!(f, "unknown variable `{}`", v),
            PolyError::DegreeError(m) => write!(f, "{}", m),
            PolyError::DimensionMismatch(m) => write!(f, "{}", m),
        }
    }
}

impl std::error::Error for PolyError {}

/// A polynomial as a finite map monomial -> nonzero scalar. Terms are kept
/// sorted descending in the ring's default (weighted grevlex) order.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: RingRef,
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero(ring: &RingRef) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![],
        }
    }

    pub fn one(ring: &RingRef) -> Self {
        Polynomial::constant(ring, Scalar::one(ring.field()))
    }

    pub fn constant(ring: &RingRef, c: Scalar) -> Self {
        assert_eq!(c.descriptor(), ring.field());
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::one(ring), c)],
        }
    }

    pub fn from_int(ring: &RingRef, v: i64) -> Self {
        Polynomial::constant(ring, Scalar::from_int(ring.field(), v))
    }

    pub fn var(ring: &RingRef, index: usize) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: vec![(Monomial::var(index, ring), Scalar::one(ring.field()))],
        }
    }

    pub fn var_named(ring: &RingRef, name: &str) -> Result<Self, PolyError> {
        let i = ring
            .var_index(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Polynomial::var(ring, i))
    }

    pub fn monomial(ring: &RingRef, m: Monomial, c: Scalar) -> Self {
        if c.is_zero() {
            return Polynomial::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(m, c)],
        }
    }

    /// Canonicalize an arbitrary term list: merge duplicates, drop zeros,
    /// sort descending.
    pub fn from_terms(ring: &RingRef, terms: Vec<(Monomial, Scalar)>) -> Self {
        let mut map: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match map.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get().checked_add(&c).expect("same field");
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
        Polynomial {
            ring: ring.clone(),
            terms: map.into_iter().rev().collect(),
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn field(&self) -> FieldDescriptor {
        self.ring.field()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending default order.
    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    /// Leading term under the default (weighted grevlex) order.
    pub fn leading(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    /// Weighted total degree; `None` encodes the -infinity of the zero
    /// polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.exp(var)).max()
    }

    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(var) > 0)
    }

    /// Indices of variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.depends_on(i))
            .collect()
    }

    /// `Some(d)` when nonzero and every term has weighted degree d.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let d = self.terms.first()?.0.degree();
        if self.terms.iter().all(|(m, _)| m.degree() == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn coeff_of(&self, m: &Monomial) -> Scalar {
        match self
            .terms
            .binary_search_by(|(t, _)| m.cmp(t))
        {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Scalar::zero(self.field()),
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if RingContext::same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other).expect("ring mismatch in add");
        // Merge two descending term lists.
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let s = ca.checked_add(cb).expect("same field");
                    if !s.is_zero() {
                        out.push((ma.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().cloned());
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul_scalar(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.checked_mul(c).expect("same field")))
                .collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a.checked_mul(c).expect("same field")))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_ring(other).expect("ring mismatch in mul");
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let mut map: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca.checked_mul(cb).expect("same field");
                match map.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = e.get().checked_add(&c).expect("same field");
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                }
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: map.into_iter().rev().collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[var] = e - 1;
            let factor = Scalar::from_int(self.field(), e as i64);
            terms.push((
                Monomial::new(exps, &self.ring),
                c.checked_mul(&factor).expect("same field"),
            ));
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Divide by the leading coefficient so the grevlex leading term is
    /// monic. The canonical representative of the associate class.
    pub fn normalize_monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some((_, lc)) => {
                if lc.is_one() {
                    self.clone()
                } else {
                    self.mul_scalar(&lc.inv().expect("nonzero leading coefficient"))
                }
            }
        }
    }

    /// Multivariate long division by a single divisor: `self = q*div + r`
    /// where no monomial of `r` is divisible by the leading monomial of
    /// `div`. For a single divisor the remainder vanishes exactly when `div`
    /// divides `self`.
    pub fn div_rem(&self, div: &Polynomial) -> (Polynomial, Polynomial) {
        self.check_ring(div).expect("ring mismatch in div_rem");
        assert!(!div.is_zero(), "division by zero polynomial");
        let (dm, dc) = div.leading().unwrap();
        let dc_inv = dc.inv().expect("nonzero");
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(&self.ring);
        let mut tail: Vec<(Monomial, Scalar)> = Vec::new();
        while let Some((lm, lc)) = rem.leading().cloned() {
            if dm.divides(&lm) {
                let qm = dm.div_into(&lm);
                let qc = lc.checked_mul(&dc_inv).expect("same field");
                let qt = Polynomial::monomial(&self.ring, qm, qc);
                rem = rem.sub(&qt.mul(div));
                quot = quot.add(&qt);
            } else {
                tail.push((lm.clone(), lc.clone()));
                rem.terms.remove(0);
            }
        }
        tail.extend(rem.terms);
        (
            quot,
            Polynomial {
                ring: self.ring.clone(),
                terms: tail,
            },
        )
    }

    /// Exact quotient, or `None` if not divisible.
    pub fn div_exact(&self, div: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.div_rem(div);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn divides(&self, other: &Polynomial) -> bool {
        other.div_exact(self).is_some()
    }

    /// Two polynomials equal up to a nonzero scalar.
    pub fn is_associate(&self, other: &Polynomial) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.normalize_monic() == other.normalize_monic()
    }

    /// Reinterpret in another ring with the same field: variables are mapped
    /// by name; fails if a used variable is missing in the target.
    pub fn transfer(&self, target: &RingRef) -> Result<Polynomial, PolyError> {
        assert_eq!(self.field(), target.field());
        let map: Vec<Option<usize>> = self
            .ring
            .vars()
            .iter()
            .map(|v| target.var_index(v))
            .collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.nvars()];
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    match map[i] {
                        Some(j) => exps[j] = e,
                        None => {
                            return Err(PolyError::UnknownVariable(
                                self.ring.vars()[i].clone(),
                            ))
                        }
                    }
                }
            }
            terms.push((Monomial::new(exps, target), c.clone()));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Substitute every variable by the given image polynomial (all images in
    /// one common target ring).
    pub fn substitute(&self, target: &RingRef, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Coefficients of `self` seen as univariate in `var`: entry k is the
    /// coefficient of `var^k`, a polynomial not involving `var`.
    pub fn coeffs_in_var(&self, var: usize) -> Vec<Polynomial> {
        let d = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Polynomial::zero(&self.ring); d + 1];
        for (m, c) in &self.terms {
            let k = m.exp(var) as usize;
            let mut exps = m.exps().to_vec();
            exps[var] = 0;
            let t = Polynomial::monomial(&self.ring, Monomial::new(exps, &self.ring), c.clone());
            out[k] = out[k].add(&t);
        }
        out
    }

    /// Evaluate at scalar points (full evaluation).
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.ring.nvars());
        let mut acc = Scalar::zero(self.field());
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = t.checked_mul(&point[i].pow(e as u64)).expect("same field");
                }
            }
            acc = acc.checked_add(&t).expect("same field");
        }
        acc
    }

    /// Stable content hash of the canonical form.
    pub fn content_hash(&self) -> u64 {
        crate::util::hash_str(&format!("{}|{}", self.ring, self))
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text form. `parse_polynomial` of the output returns the
    /// identical polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = match c.as_rational() {
                Some(q) => {
                    use num_traits::Signed;
                    if q.is_negative() {
                        (true, Scalar::from_rational(c.descriptor(), -q))
                    } else {
                        (false, c.clone())
                    }
                }
                None => (false, c.clone()),
            };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_str = if mag.is_rational() {
                crate::scalar::format_rational(&mag.as_rational().unwrap())
            } else {
                format!("({})", mag)
            };
            if m.is_one() {
                write!(f, "{}", coeff_str)?;
            } else {
                if coeff_str != "1" {
                    write!(f, "{}*", coeff_str)?;
                }
                let mut first = true;
                for (i, &e) in m.exps().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, "*")?;
                    }
                    first = false;
                    write!(f, "{}", self.ring.vars()[i])?;
                    if e > 1 {
                        write!(f, "^{}", e)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
