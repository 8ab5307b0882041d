//! Collapse certificates and strength estimates, plus the bounded collapse
//! search for forms of degree >= 3.

use crate::poly::{Monomial, PolyError, Polynomial, RingRef};
use crate::scalar::Scalar;
use std::fmt;

/// Strength values: the zero form has strength -1 by convention, linear
/// forms are infinitely strong.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum StrengthValue {
    MinusOne,
    Finite(u64),
    Infinite,
}

impl fmt::Display for StrengthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrengthValue::MinusOne => write!(f, "-1"),
            StrengthValue::Finite(s) => write!(f, "{}", s),
            StrengthValue::Infinite => write!(f, "inf"),
        }
    }
}

/// Witnesses an s-collapse: `sum_i G_i * H_i = F` with `1 <= deg G_i < deg F`.
/// Certificates may live in an extension of the base ring by formal square
/// roots `w^2 = r`; such certificates are marked `formal`.
#[derive(Clone, Debug)]
pub struct CollapseCertificate {
    pub ring: RingRef,
    pub pairs: Vec<(Polynomial, Polynomial)>,
    /// `(variable index in `ring`, r)` with the relation `w^2 = r`.
    pub formal_roots: Vec<(usize, Scalar)>,
}

impl CollapseCertificate {
    pub fn count(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_formal(&self) -> bool {
        !self.formal_roots.is_empty()
    }

    /// Reduce the formal root variables: every `w^(2a+b)` becomes `r^a w^b`.
    fn reduce_formal(&self, p: &Polynomial) -> Polynomial {
        if self.formal_roots.is_empty() {
            return p.clone();
        }
        let ring = &self.ring;
        let mut terms = Vec::with_capacity(p.nterms());
        for (m, c) in p.terms() {
            let mut exps = m.exps().to_vec();
            let mut coef = c.clone();
            for &(w, ref r) in &self.formal_roots {
                let e = exps[w];
                if e >= 2 {
                    coef = coef
                        .checked_mul(&r.pow((e / 2) as u64))
                        .expect("same field");
                    exps[w] = e % 2;
                }
            }
            terms.push((Monomial::new(exps, ring), coef));
        }
        Polynomial::from_terms(ring, terms)
    }

    /// Exact re-expansion check: `sum G_i H_i`, reduced modulo the formal
    /// root relations, equals the target.
    pub fn verify(&self, target: &Polynomial) -> Result<bool, PolyError> {
        let mut acc = Polynomial::zero(&self.ring);
        for (g, h) in &self.pairs {
            acc = acc.add(&g.mul(h));
        }
        let acc = self.reduce_formal(&acc);
        let lifted = target.transfer(&self.ring)?;
        Ok(acc == lifted)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MethodTag {
    ZeroForm,
    LinearInfinite,
    QuadricRank,
    CollapseFound,
    SearchExhausted { radius: u64 },
    Sampled,
    PencilMinors,
}

impl fmt::Display for MethodTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodTag::ZeroForm => write!(f, "zero-form"),
            MethodTag::LinearInfinite => write!(f, "linear-infinite"),
            MethodTag::QuadricRank => write!(f, "quadric-rank"),
            MethodTag::CollapseFound => write!(f, "collapse-found"),
            MethodTag::SearchExhausted { radius } => write!(f, "search-exhausted({})", radius),
            MethodTag::Sampled => write!(f, "sampled"),
            MethodTag::PencilMinors => write!(f, "pencil-minors"),
        }
    }
}

/// Bounds on the strength of one form, with the witnessing collapse when an
/// upper bound is known.
#[derive(Clone, Debug)]
pub struct StrengthEstimate {
    pub lower: StrengthValue,
    pub upper: StrengthValue,
    pub methods: Vec<MethodTag>,
    pub certificate: Option<CollapseCertificate>,
}

impl StrengthEstimate {
    pub fn exact(&self) -> Option<StrengthValue> {
        if self.lower == self.upper {
            Some(self.lower)
        } else {
            None
        }
    }

    pub fn zero_form() -> Self {
        StrengthEstimate {
            lower: StrengthValue::MinusOne,
            upper: StrengthValue::MinusOne,
            methods: vec![MethodTag::ZeroForm],
            certificate: None,
        }
    }

    pub fn linear() -> Self {
        StrengthEstimate {
            lower: StrengthValue::Infinite,
            upper: StrengthValue::Infinite,
            methods: vec![MethodTag::LinearInfinite],
            certificate: None,
        }
    }
}

#[derive(Clone, Debug)]
pub enum StrengthError {
    WrongDegree(String),
    Poly(PolyError),
    Undecided(String),
}

impl fmt::Display for StrengthError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrengthError::WrongDegree(m) => write!(f, "{}", m),
            StrengthError::Poly(e) => write!(f, "{}", e),
            StrengthError::Undecided(m) => write!(f, "undecided: {}", m),
        }
    }
}

impl std::error::Error for StrengthError {}

impl From<PolyError> for StrengthError {
    fn from(e: PolyError) -> Self {
        StrengthError::Poly(e)
    }
}

/// Enumerate monic linear forms with support in the form's variables and
/// nonzero coefficients bounded by `radius`, and test divisibility: a linear
/// divisor is a 1-collapse.
fn linear_divisor_search(f: &Polynomial, radius: i64) -> Option<(Polynomial, Polynomial)> {
    let ring = f.ring();
    let supp = f.support_vars();
    if supp.is_empty() {
        return None;
    }
    // candidate = x_lead + sum c_v x_v over later support vars, |c| <= radius
    for (pos, &lead) in supp.iter().enumerate() {
        let tail: Vec<usize> = supp[pos + 1..].to_vec();
        let span = (2 * radius + 1) as u64;
        let total = span.pow(tail.len() as u32);
        if total > 100_000 {
            // keep the sweep bounded; larger supports are covered by the
            // variable-extraction route
            continue;
        }
        for code in 0..total {
            let mut cand = Polynomial::var(ring, lead);
            let mut c = code;
            for &v in &tail {
                let coef = (c % span) as i64 - radius;
                c /= span;
                if coef != 0 {
                    cand = cand.add(
                        &Polynomial::var(ring, v)
                            .mul_scalar(&Scalar::from_int(ring.field(), coef)),
                    );
                }
            }
            if let Some(q) = f.div_exact(&cand) {
                return Some((cand, q));
            }
        }
    }
    None
}

/// Greedy variable extraction: write `F = sum_v x_v * Q_v` over the support,
/// a collapse with one product per needed variable.
fn variable_extraction(f: &Polynomial) -> Vec<(Polynomial, Polynomial)> {
    let ring = f.ring();
    let mut rem = f.clone();
    let mut pairs = Vec::new();
    // most frequent variable first keeps the count low
    let mut order: Vec<usize> = f.support_vars();
    order.sort_by_key(|&v| {
        std::cmp::Reverse(f.terms().iter().filter(|(m, _)| m.exp(v) > 0).count())
    });
    for v in order {
        if rem.is_zero() {
            break;
        }
        let xv = Polynomial::var(ring, v);
        let mut keep = Vec::new();
        let mut quotient_terms = Vec::new();
        for (m, c) in rem.terms() {
            if m.exp(v) > 0 {
                let mut exps = m.exps().to_vec();
                exps[v] -= 1;
                quotient_terms.push((Monomial::new(exps, ring), c.clone()));
            } else {
                keep.push((m.clone(), c.clone()));
            }
        }
        if quotient_terms.is_empty() {
            continue;
        }
        let q = Polynomial::from_terms(ring, quotient_terms);
        pairs.push((xv, q));
        rem = Polynomial::from_terms(ring, keep);
    }
    debug_assert!(rem.is_zero());
    pairs
}

/// Bounded collapse search: exact for degree 2 (through the quadric rank),
/// upper bounds from found collapses otherwise. Degree-1 forms are
/// infinitely strong; the zero form carries the distinguished -1 tag.
pub fn collapse_search(f: &Polynomial, radius: u64) -> Result<StrengthEstimate, StrengthError> {
    if f.is_zero() {
        return Ok(StrengthEstimate::zero_form());
    }
    let d = f.homogeneous_degree().ok_or_else(|| {
        StrengthError::WrongDegree("collapse search requires a homogeneous form".into())
    })?;
    if d == 1 {
        return Ok(StrengthEstimate::linear());
    }
    if d < 2 {
        return Err(StrengthError::WrongDegree(
            "collapse search requires degree >= 2".into(),
        ));
    }
    if d == 2 {
        return super::quadric::quadric_strength(f);
    }
    let ring = f.ring().clone();
    let mut methods = vec![];
    // 1-collapse via a bounded linear-divisor sweep
    if let Some((g, h)) = linear_divisor_search(f, radius as i64) {
        let cert = CollapseCertificate {
            ring: ring.clone(),
            pairs: vec![(g, h)],
            formal_roots: vec![],
        };
        debug_assert!(cert.verify(f).unwrap());
        methods.push(MethodTag::CollapseFound);
        return Ok(StrengthEstimate {
            lower: StrengthValue::Finite(0),
            upper: StrengthValue::Finite(0),
            methods,
            certificate: Some(cert),
        });
    }
    methods.push(MethodTag::SearchExhausted { radius });
    // fallback: variable extraction always collapses
    let pairs = variable_extraction(f);
    let count = pairs.len() as u64;
    let cert = CollapseCertificate {
        ring,
        pairs,
        formal_roots: vec![],
    };
    debug_assert!(cert.verify(f).unwrap());
    methods.push(MethodTag::CollapseFound);
    Ok(StrengthEstimate {
        lower: StrengthValue::Finite(0),
        upper: StrengthValue::Finite(count.saturating_sub(1)),
        methods,
        certificate: Some(cert),
    })
}
