//! Ring contexts and monomials.

use crate::scalar::FieldDescriptor;
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Declares the ambient polynomial ring: named variables, per-variable
/// positive weights (the grading), and the coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingContext {
    vars: Vec<String>,
    weights: Vec<u32>,
    field: FieldDescriptor,
}

pub type RingRef = Arc<RingContext>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingError {
    DuplicateVariable(String),
    ZeroWeight(String),
    VariableCollision(String),
    UnknownVariable(String),
}

impl fmt::Display for RingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingError::DuplicateVariable(v) => write!(f, "duplicate variable `{}`", v),
            RingError::ZeroWeight(v) => write!(f, "weight of `{}` must be >= 1", v),
            RingError::VariableCollision(v) => {
                write!(f, "variable `{}` already present in the ring", v)
            }
            RingError::UnknownVariable(v) => write!(f, "unknown variable `{}`", v),
        }
    }
}

impl std::error::Error for RingError {}

impl RingContext {
    pub fn new(
        vars: Vec<String>,
        weights: Option<Vec<u32>>,
        field: FieldDescriptor,
    ) -> Result<RingRef, RingError> {
        let weights = weights.unwrap_or_else(|| vec![1; vars.len()]);
        assert_eq!(vars.len(), weights.len(), "one weight per variable");
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(RingError::DuplicateVariable(v.clone()));
            }
        }
        for (v, w) in vars.iter().zip(&weights) {
            if *w == 0 {
                return Err(RingError::ZeroWeight(v.clone()));
            }
        }
        Ok(Arc::new(RingContext { vars, weights, field }))
    }

    /// Standard-graded ring over the given field.
    pub fn standard(vars: &[&str], field: FieldDescriptor) -> RingRef {
        RingContext::new(vars.iter().map(|s| s.to_string()).collect(), None, field)
            .expect("valid variable list")
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Extend by a fresh variable of weight 1, appended last.
    pub fn extend(&self, var: &str) -> Result<RingRef, RingError> {
        if self.vars.iter().any(|v| v == var) {
            return Err(RingError::VariableCollision(var.to_string()));
        }
        let mut vars = self.vars.clone();
        vars.push(var.to_string());
        let mut weights = self.weights.clone();
        weights.push(1);
        RingContext::new(vars, Some(weights), self.field)
    }

    /// Extend by several fresh variables of weight 1.
    pub fn extend_many(&self, new_vars: &[String]) -> Result<RingRef, RingError> {
        let mut ring = Arc::new(self.clone());
        for v in new_vars {
            ring = ring.extend(v)?;
        }
        Ok(ring)
    }

    /// Restrict to a subset of the variables (kept in ring order).
    pub fn restrict(&self, keep: &[usize]) -> RingRef {
        let vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let weights = keep.iter().map(|&i| self.weights[i]).collect();
        RingContext::new(vars, Some(weights), self.field).expect("subset of a valid ring")
    }

    /// A variable name not yet used, derived from the stem.
    pub fn fresh_var(&self, stem: &str) -> String {
        if !self.vars.iter().any(|v| v == stem) {
            return stem.to_string();
        }
        for k in 0.. {
            let cand = format!("{}{}", stem, k);
            if !self.vars.iter().any(|v| v == &cand) {
                return cand;
            }
        }
        unreachable!()
    }

    pub fn same_ring(a: &RingRef, b: &RingRef) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

impl fmt::Display for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.field)?;
        for (i, v) in self.vars.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v)?;
            if self.weights[i] != 1 {
                write!(f, ":{}", self.weights[i])?;
            }
        }
        write!(f, "]")
    }
}

/// A power product with its weighted degree cached. Exponents align with the
/// owning ring's variable list; the ring is not stored here.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u64,
}

impl Monomial {
    pub fn new(exps: Vec<u32>, ring: &RingContext) -> Self {
        assert_eq!(exps.len(), ring.nvars());
        let degree = exps
            .iter()
            .zip(ring.weights())
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum();
        Monomial { exps, degree }
    }

    pub fn one(ring: &RingContext) -> Self {
        Monomial {
            exps: vec![0; ring.nvars()],
            degree: 0,
        }
    }

    pub fn var(index: usize, ring: &RingContext) -> Self {
        let mut exps = vec![0; ring.nvars()];
        exps[index] = 1;
        Monomial::new(exps, ring)
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    /// Cached weighted degree.
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm_in(&self, other: &Monomial, ring: &RingContext) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
            ring,
        )
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Weighted graded reverse lexicographic comparison: higher weighted
    /// degree wins; on ties the monomial whose last differing exponent is
    /// smaller is the larger one.
    pub fn cmp_grevlex(&self, other: &Monomial) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.exps.len()).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }

    /// Lexicographic comparison in ring variable order.
    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        for i in 0..self.exps.len() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// The ring default order: weighted grevlex.
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_grevlex(other)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{:?}", self.exps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring3() -> RingRef {
        RingContext::standard(&["x", "y", "z"], FieldDescriptor::Rationals)
    }

    #[test]
    fn grevlex_basics() {
        let r = ring3();
        let x2 = Monomial::new(vec![2, 0, 0], &r);
        let xy = Monomial::new(vec![1, 1, 0], &r);
        let y2 = Monomial::new(vec![0, 2, 0], &r);
        let xz = Monomial::new(vec![1, 0, 1], &r);
        assert!(x2 > xy);
        assert!(xy > y2);
        assert!(y2 > xz);
    }

    #[test]
    fn weighted_degree_cached() {
        let r = RingContext::new(
            vec!["a".into(), "b".into()],
            Some(vec![2, 3]),
            FieldDescriptor::Rationals,
        )
        .unwrap();
        let m = Monomial::new(vec![1, 2], &r);
        assert_eq!(m.degree(), 2 + 6);
    }

    #[test]
    fn order_is_multiplicative_on_random_triples() {
        use crate::util::SplitMix64;
        let r = ring3();
        let mut rng = SplitMix64::new(5);
        let rand_mono = |rng: &mut SplitMix64| {
            Monomial::new(
                (0..3).map(|_| rng.below(4) as u32).collect(),
                &r,
            )
        };
        for _ in 0..300 {
            let a = rand_mono(&mut rng);
            let b = rand_mono(&mut rng);
            let c = rand_mono(&mut rng);
            if a < b {
                assert!(a.mul(&c) < b.mul(&c));
            }
            // well-order: 1 is minimal
            assert!(Monomial::one(&r) <= a);
        }
    }

    #[test]
    fn ring_rejects_duplicates_and_zero_weights() {
        assert!(RingContext::new(
            vec!["x".into(), "x".into()],
            None,
            FieldDescriptor::Rationals
        )
        .is_err());
        assert!(RingContext::new(
            vec!["x".into()],
            Some(vec![0]),
            FieldDescriptor::Rationals
        )
        .is_err());
    }
}
