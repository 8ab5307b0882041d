//! Exact field arithmetic over the rationals and cyclotomic extensions
//! `Q(zeta_n)`.
//!
//! A cyclotomic element is stored as a rational-coefficient residue modulo
//! the n-th cyclotomic polynomial `Phi_n`, so representations are canonical:
//! two scalars are equal iff their stored vectors are identical. Orders 1 and
//! 2 degenerate to the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Identifies the coefficient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldDescriptor {
    Rationals,
    /// `Q(zeta_n)` for n >= 3; orders 1 and 2 are canonicalized away.
    Cyclotomic(u32),
}

impl FieldDescriptor {
    pub fn rationals() -> Self {
        FieldDescriptor::Rationals
    }

    /// Cyclotomic field of the given order; n = 1, 2 collapse to `Rationals`.
    pub fn cyclotomic(n: u32) -> Self {
        assert!(n >= 1, "cyclotomic order must be positive");
        if n <= 2 {
            FieldDescriptor::Rationals
        } else {
            FieldDescriptor::Cyclotomic(n)
        }
    }

    /// Degree of the field over Q: 1 or phi(n).
    pub fn degree(&self) -> usize {
        match self {
            FieldDescriptor::Rationals => 1,
            FieldDescriptor::Cyclotomic(n) => cyclo_table(*n).phi,
        }
    }

    pub fn order(&self) -> u32 {
        match self {
            FieldDescriptor::Rationals => 1,
            FieldDescriptor::Cyclotomic(n) => *n,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "rationals"),
            FieldDescriptor::Cyclotomic(n) => write!(f, "cyclotomic({})", n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarError {
    IncompatibleFields(FieldDescriptor, FieldDescriptor),
    DivisionByZero,
    FieldTooSmall { needed_order: u32, actual: FieldDescriptor },
}

impl fmt::Display for ScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarError::IncompatibleFields(a, b) => {
                write!(f, "incompatible fields: {} vs {}", a, b)
            }
            ScalarError::DivisionByZero => write!(f, "division by zero"),
            ScalarError::FieldTooSmall { needed_order, actual } => write!(
                f,
                "field too small: need cyclotomic order divisible by {}, have {}",
                needed_order, actual
            ),
        }
    }
}

impl std::error::Error for ScalarError {}

/// Cached data for one cyclotomic order.
struct CycloTable {
    phi: usize,
    /// Monic `Phi_n` as rational coefficients, constant first, length phi+1.
    minpoly: Vec<BigRational>,
}

fn cyclo_cache() -> &'static Mutex<HashMap<u32, Arc<CycloTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cyclo_table(n: u32) -> Arc<CycloTable> {
    if let Some(t) = cyclo_cache().lock().unwrap().get(&n) {
        return t.clone();
    }
    let poly = cyclotomic_polynomial(n);
    let table = Arc::new(CycloTable {
        phi: poly.len() - 1,
        minpoly: poly,
    });
    cyclo_cache()
        .lock()
        .unwrap()
        .entry(n)
        .or_insert(table)
        .clone()
}

/// `Phi_n` with integer coefficients, computed as `(x^n - 1) / prod Phi_d`
/// over proper divisors d of n. Constant term first, monic.
fn cyclotomic_polynomial(n: u32) -> Vec<BigRational> {
    assert!(n >= 1);
    // x^n - 1
    let mut num = vec![BigRational::zero(); n as usize + 1];
    num[0] = -BigRational::one();
    num[n as usize] = BigRational::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    num
}

/// Exact division of univariate rational polynomials, constant term first.
/// Panics if the division is not exact; internal use only.
fn poly_div_exact(num: &[BigRational], den: &[BigRational]) -> Vec<BigRational> {
    let mut rem: Vec<BigRational> = num.to_vec();
    let dd = den.len() - 1;
    let lead = &den[dd];
    assert!(!lead.is_zero());
    let nd = rem.len() - 1;
    if nd < dd {
        assert!(rem.iter().all(|c| c.is_zero()));
        return vec![BigRational::zero()];
    }
    let mut quot = vec![BigRational::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = &rem[k + dd] / lead;
        if !c.is_zero() {
            for j in 0..=dd {
                let t = &den[j] * &c;
                rem[k + j] -= t;
            }
        }
        quot[k] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "inexact division");
    quot
}

/// Remainder of a rational polynomial modulo a monic divisor.
fn poly_rem(num: &mut Vec<BigRational>, den: &[BigRational]) {
    let dd = den.len() - 1;
    while num.len() > dd {
        let k = num.len() - 1;
        let c = num[k].clone();
        if !c.is_zero() {
            for j in 0..dd {
                let t = &den[j] * &c;
                num[k - dd + j] -= t;
            }
        }
        num.pop();
    }
    while num.last().is_some_and(|c| c.is_zero()) {
        num.pop();
    }
}

/// An exact element of the declared field. Immutable value type.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    desc: FieldDescriptor,
    /// Coefficients of powers of the generator, constant first, no trailing
    /// zeros. Empty means zero. For `Rationals` the length is at most 1.
    coeffs: Vec<BigRational>,
}

impl Scalar {
    pub fn zero(desc: FieldDescriptor) -> Self {
        Scalar { desc, coeffs: vec![] }
    }

    pub fn one(desc: FieldDescriptor) -> Self {
        Scalar {
            desc,
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn from_rational(desc: FieldDescriptor, q: BigRational) -> Self {
        let mut s = Scalar { desc, coeffs: vec![q] };
        s.trim();
        s
    }

    pub fn from_int(desc: FieldDescriptor, v: i64) -> Self {
        Scalar::from_rational(desc, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_fraction(desc: FieldDescriptor, num: i64, den: i64) -> Self {
        assert!(den != 0);
        Scalar::from_rational(
            desc,
            BigRational::new(BigInt::from(num), BigInt::from(den)),
        )
    }

    /// The generator `zeta` of a cyclotomic field.
    pub fn zeta(desc: FieldDescriptor) -> Result<Self, ScalarError> {
        match desc {
            FieldDescriptor::Rationals => Err(ScalarError::FieldTooSmall {
                needed_order: 3,
                actual: desc,
            }),
            FieldDescriptor::Cyclotomic(_) => {
                let mut s = Scalar {
                    desc,
                    coeffs: vec![BigRational::zero(), BigRational::one()],
                };
                s.reduce();
                Ok(s)
            }
        }
    }

    /// Build from an explicit coefficient vector (constant first); reduces
    /// modulo `Phi_n` and trims.
    pub fn from_coeffs(desc: FieldDescriptor, coeffs: Vec<BigRational>) -> Self {
        let mut s = Scalar { desc, coeffs };
        s.reduce();
        s
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        self.desc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True if the value lies in the rational subfield.
    pub fn is_rational(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// The rational value, if this element lies in the prime field.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    fn reduce(&mut self) {
        if let FieldDescriptor::Cyclotomic(n) = self.desc {
            let table = cyclo_table(n);
            if self.coeffs.len() > table.phi {
                poly_rem(&mut self.coeffs, &table.minpoly);
            }
        }
        self.trim();
        if self.desc == FieldDescriptor::Rationals {
            assert!(self.coeffs.len() <= 1, "rational scalar out of range");
        }
    }

    fn check_desc(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.desc == other.desc {
            Ok(())
        } else {
            Err(ScalarError::IncompatibleFields(self.desc, other.desc))
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_desc(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
            coeffs.push(a + b);
        }
        let mut s = Scalar { desc: self.desc, coeffs };
        s.trim();
        Ok(s)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_desc(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Scalar::zero(self.desc));
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        let mut s = Scalar { desc: self.desc, coeffs };
        s.reduce();
        Ok(s)
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            desc: self.desc,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Multiplicative inverse by the extended Euclidean algorithm on
    /// `(value, Phi_n)` over `Q[x]`.
    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        match self.desc {
            FieldDescriptor::Rationals => Ok(Scalar {
                desc: self.desc,
                coeffs: vec![self.coeffs[0].recip()],
            }),
            FieldDescriptor::Cyclotomic(n) => {
                let table = cyclo_table(n);
                let inv = poly_mod_inverse(&self.coeffs, &table.minpoly)
                    .expect("nonzero residue must be invertible modulo Phi_n");
                let mut s = Scalar { desc: self.desc, coeffs: inv };
                s.reduce();
                Ok(s)
            }
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.desc);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base).unwrap();
            }
            base = base.checked_mul(&base).unwrap();
            e >>= 1;
        }
        acc
    }

    /// Map this scalar into a larger cyclotomic field whose order is a
    /// multiple of the current order (or any field, if rational).
    pub fn embed(&self, target: FieldDescriptor) -> Result<Scalar, ScalarError> {
        if self.desc == target {
            return Ok(self.clone());
        }
        if let Some(q) = self.as_rational() {
            return Ok(Scalar::from_rational(target, q));
        }
        let (n, m) = (self.desc.order(), target.order());
        if m % n != 0 {
            return Err(ScalarError::FieldTooSmall {
                needed_order: n,
                actual: target,
            });
        }
        // zeta_n = zeta_m^(m/n)
        let step = (m / n) as u64;
        let gen = Scalar::zeta(target)?.pow(step);
        let mut acc = Scalar::zero(target);
        for c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(&gen).unwrap();
            acc = acc
                .checked_add(&Scalar::from_rational(target, c.clone()))
                .unwrap();
        }
        Ok(acc)
    }
}

/// Inverse of `a` modulo the monic polynomial `m` over Q, via extended Euclid.
fn poly_mod_inverse(a: &[BigRational], m: &[BigRational]) -> Option<Vec<BigRational>> {
    // Invariants: r0 = s0*a mod m-ideal combos; we track only the s column.
    let mut r0: Vec<BigRational> = m.to_vec();
    let mut r1: Vec<BigRational> = a.to_vec();
    let mut s0: Vec<BigRational> = vec![];
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    loop {
        trim_poly(&mut r1);
        if r1.is_empty() {
            return None;
        }
        if r1.len() == 1 {
            // r1 is a nonzero constant: inverse = s1 / r1
            let c = r1[0].recip();
            return Some(s1.iter().map(|x| x * &c).collect());
        }
        let (q, r) = poly_div_rem(&r0, &r1);
        let s_new = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s_new;
    }
}

fn trim_poly(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_div_rem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = num.to_vec();
    trim_poly(&mut rem);
    let dd = den.len() - 1;
    let lead = &den[dd];
    if rem.len() <= dd {
        return (vec![], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    while rem.len() > dd {
        let k = rem.len() - 1 - dd;
        let c = &rem[rem.len() - 1] / lead;
        quot[k] = c.clone();
        for j in 0..=dd {
            let t = &den[j] * &c;
            rem[k + j] -= t;
        }
        trim_poly(&mut rem);
        if rem.len() <= dd {
            break;
        }
    }
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
        out.push(x - y);
    }
    trim_poly(&mut out);
    out
}

/// A primitive n-th root of -1, realized as `zeta_{2n}` inside the declared
/// field. Requires the cyclotomic order to be divisible by 2n (n = 1 works
/// over the rationals, where the answer is -1).
pub fn primitive_root_of_minus_one(
    n: u32,
    desc: FieldDescriptor,
) -> Result<Scalar, ScalarError> {
    assert!(n >= 1);
    if n == 1 {
        return Ok(Scalar::from_int(desc, -1));
    }
    let m = desc.order();
    if !m.is_multiple_of(2 * n) {
        return Err(ScalarError::FieldTooSmall {
            needed_order: 2 * n,
            actual: desc,
        });
    }
    let omega = Scalar::zeta(desc)?.pow((m / (2 * n)) as u64);
    debug_assert!(omega.pow(n as u64) == Scalar::from_int(desc, -1).embed(desc).unwrap());
    Ok(omega)
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    /// Canonical text form; parses back to the identical value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", format_rational(&q));
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            if i == 0 {
                write!(f, "{}", format_rational(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", format_rational(&mag))?;
                }
                if i == 1 {
                    write!(f, "zeta")?;
                } else {
                    write!(f, "zeta^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.desc)
    }
}
