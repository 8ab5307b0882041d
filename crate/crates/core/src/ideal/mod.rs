//! Groebner-basis engine and the ideal-theoretic queries built on it:
//! membership, radical membership (Rabinowitsch), elimination, Krull
//! dimension, regular sequences, quotient contexts and subalgebra
//! membership.

mod cache;
mod groebner;
mod order;
mod radical;

pub use cache::{cache_len, load_cache_file, save_cache_file};
pub use order::MonomialOrder;
pub use radical::{discriminant_radicality, is_radical_pair, DiscriminantVerdict, RadicalPairVerdict};

use crate::poly::{GradedVectorSpace, Monomial, PolyError, Polynomial, RingContext, RingRef};

use std::fmt;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub enum IdealError {
    Poly(PolyError),
    OrderMismatch(String),
    UnitIdeal(&'static str),
    BadInput(String),
}

impl fmt::Display for IdealError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealError::Poly(e) => write!(f, "{}", e),
            IdealError::OrderMismatch(m) => write!(f, "{}", m),
            IdealError::UnitIdeal(op) => write!(f, "{} undefined for the unit ideal", op),
            IdealError::BadInput(m) => write!(f, "{}", m),
        }
    }
}

impl std::error::Error for IdealError {}

impl From<PolyError> for IdealError {
    fn from(e: PolyError) -> Self {
        IdealError::Poly(e)
    }
}

/// A reduced Groebner basis with its input generators and, when computed
/// through the public `groebner` entry point, cofactor records expressing
/// each basis element in terms of the generators.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: RingRef,
    order: MonomialOrder,
    generators: Vec<Polynomial>,
    basis: Vec<Polynomial>,
    cofactors: Option<Vec<Vec<Polynomial>>>,
    is_unit: bool,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// The reduced basis, monic, sorted ascending by leading monomial.
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.is_unit
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.basis.is_empty()
    }

    /// Cofactor record for basis element `i`: polynomials `c_j` with
    /// `basis[i] = sum_j c_j * generators[j]`.
    pub fn cofactors(&self, i: usize) -> Option<&[Polynomial]> {
        self.cofactors.as_ref().map(|c| c[i].as_slice())
    }

    /// Full normal form modulo the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        if self.basis.is_empty() {
            return f.clone();
        }
        groebner::reduce_by_basis(&self.ring, f, &self.basis, &self.order, false).0
    }

    /// Normal form together with the quotients against the basis:
    /// `f = sum_i q_i * basis[i] + nf`.
    pub fn normal_form_with_quotients(&self, f: &Polynomial) -> (Polynomial, Vec<Polynomial>) {
        if self.basis.is_empty() {
            return (f.clone(), vec![]);
        }
        groebner::reduce_by_basis(&self.ring, f, &self.basis, &self.order, true)
    }

    /// Stable content hash of (ring, order, generators).
    pub fn key(&self) -> u64 {
        cache::basis_key(&self.ring, &self.order, &self.generators)
    }

    /// Dimension of `S/I` as a vector space: the number of monomials under
    /// the leading-term staircase. `None` when the quotient is
    /// infinite-dimensional, `Some(0)` for the unit ideal.
    pub fn quotient_vector_dimension(&self) -> Option<usize> {
        if self.is_unit {
            return Some(0);
        }
        let n = self.ring.nvars();
        let leading: Vec<Monomial> = self
            .basis
            .iter()
            .map(|b| self.order.sorted_terms(b)[0].0.clone())
            .collect();
        // finite iff every variable appears as a pure power among the
        // leading monomials
        for v in 0..n {
            let pure = leading.iter().any(|m| {
                m.exp(v) > 0 && (0..n).all(|w| w == v || m.exp(w) == 0)
            });
            if !pure {
                return None;
            }
        }
        // count standard monomials by bounded enumeration
        let bounds: Vec<u32> = (0..n)
            .map(|v| {
                leading
                    .iter()
                    .filter(|m| (0..n).all(|w| w == v || m.exp(w) == 0))
                    .map(|m| m.exp(v))
                    .min()
                    .unwrap()
            })
            .collect();
        let mut count = 0usize;
        let mut exps = vec![0u32; n];
        loop {
            let mono = Monomial::new(exps.clone(), &self.ring);
            if !leading.iter().any(|lm| lm.divides(&mono)) {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == n {
                    return Some(count);
                }
                exps[i] += 1;
                if exps[i] < bounds[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }

    /// Recheck that every S-polynomial of basis pairs reduces to zero.
    pub fn spoly_check(&self) -> bool {
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                let s = groebner::s_polynomial(&self.ring, &self.basis[i], &self.basis[j], &self.order);
                if !self.normal_form(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Compute the reduced Groebner basis with cofactor records, consulting the
/// process-wide cache.
pub fn groebner(
    generators: &[Polynomial],
    order: MonomialOrder,
) -> Result<Arc<GroebnerBasis>, IdealError> {
    groebner_opts(generators, order, true)
}

/// As `groebner` but letting hot paths skip cofactor tracking.
pub fn groebner_opts(
    generators: &[Polynomial],
    order: MonomialOrder,
    with_cofactors: bool,
) -> Result<Arc<GroebnerBasis>, IdealError> {
    let ring = match generators.first() {
        Some(g) => g.ring().clone(),
        None => {
            return Err(IdealError::BadInput(
                "groebner needs at least one polynomial to fix the ring".into(),
            ))
        }
    };
    for g in generators {
        if !RingContext::same_ring(&ring, g.ring()) {
            return Err(PolyError::RingMismatch.into());
        }
    }
    order
        .validate(&ring)
        .map_err(IdealError::OrderMismatch)?;
    let key = cache::basis_key(&ring, &order, generators);
    if let Some(hit) = cache::lookup(key) {
        if hit.cofactors.is_some() || !with_cofactors {
            return Ok(hit);
        }
    }
    let result = groebner::buchberger(&ring, generators, &order, with_cofactors);
    let gb = Arc::new(GroebnerBasis {
        ring,
        order,
        generators: generators.to_vec(),
        basis: result.basis,
        cofactors: result.cofactors,
        is_unit: result.is_unit,
    });
    cache::store(key, gb.clone());
    Ok(gb)
}

/// Outcome of an ideal membership test: either a cofactor certificate over
/// the reduced basis or the nonzero normal form.
#[derive(Clone, Debug)]
pub enum MembershipCertificate {
    Member { quotients: Vec<Polynomial> },
    NotMember { normal_form: Polynomial },
}

/// `f` in the ideal? The certificate re-verifies by expansion.
pub fn ideal_member(
    f: &Polynomial,
    gb: &GroebnerBasis,
) -> Result<(bool, MembershipCertificate), IdealError> {
    if !RingContext::same_ring(f.ring(), &gb.ring) {
        return Err(PolyError::RingMismatch.into());
    }
    let (nf, quotients) = gb.normal_form_with_quotients(f);
    if nf.is_zero() {
        Ok((true, MembershipCertificate::Member { quotients }))
    } else {
        Ok((false, MembershipCertificate::NotMember { normal_form: nf }))
    }
}

/// Ring-and-quotient pair: `R = S/(U)` represented by the base ring, the
/// defining graded vector space and a cached grevlex basis of `(U)`.
/// Elements are handled through canonical normal forms of lifts.
#[derive(Clone, Debug)]
pub struct QuotientContext {
    ring: RingRef,
    defining: GradedVectorSpace,
    gb: Arc<GroebnerBasis>,
}

impl QuotientContext {
    /// The trivial quotient `S/(0)`.
    pub fn polynomial_ring(ring: &RingRef) -> Self {
        QuotientContext {
            ring: ring.clone(),
            defining: GradedVectorSpace::empty(ring),
            gb: Arc::new(GroebnerBasis {
                ring: ring.clone(),
                order: MonomialOrder::Grevlex,
                generators: vec![],
                basis: vec![],
                cofactors: Some(vec![]),
                is_unit: false,
            }),
        }
    }

    pub fn new(defining: GradedVectorSpace) -> Result<Self, IdealError> {
        let ring = defining.ring().clone();
        if defining.is_empty() {
            return Ok(QuotientContext::polynomial_ring(&ring));
        }
        let gb = groebner(defining.basis(), MonomialOrder::Grevlex)?;
        Ok(QuotientContext {
            ring,
            defining,
            gb,
        })
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn defining_space(&self) -> &GradedVectorSpace {
        &self.defining
    }

    pub fn defining_basis(&self) -> &[Polynomial] {
        self.defining.basis()
    }

    pub fn groebner_basis(&self) -> &Arc<GroebnerBasis> {
        &self.gb
    }

    pub fn is_trivial(&self) -> bool {
        self.defining.is_empty()
    }

    /// Canonical representative of the residue class of `f`.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.gb.normal_form(f)
    }

    pub fn is_zero(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn krull_dim(&self) -> Result<usize, IdealError> {
        if self.defining.is_empty() {
            return Ok(self.ring.nvars());
        }
        krull_dimension(&self.gb)
    }
}

/// Radical membership via the Rabinowitsch trick: `f` lies in `rad(I)` iff
/// `1` lies in `I + (1 - t*f)` after adjoining a fresh variable `t`. When an
/// ambient quotient is supplied, its defining equations join the ideal.
pub fn radical_member(
    f: &Polynomial,
    generators: &[Polynomial],
    ambient: Option<&QuotientContext>,
) -> Result<bool, IdealError> {
    let ring = f.ring().clone();
    // Cheap routes first: actual ideal membership implies radical
    // membership, and so does membership of any small power (computed by
    // repeated squaring of normal forms, without a new basis).
    let mut gens: Vec<Polynomial> = generators.to_vec();
    if let Some(q) = ambient {
        if !RingContext::same_ring(&ring, q.ring()) {
            return Err(PolyError::RingMismatch.into());
        }
        gens.extend(q.defining_basis().iter().cloned());
    }
    if f.is_zero() {
        return Ok(true);
    }
    let rab_seed: Vec<Polynomial> = gens.clone();
    if !gens.is_empty() {
        let gb = groebner_opts(&gens, MonomialOrder::Grevlex, false)?;
        if gb.is_unit_ideal() {
            return Ok(true);
        }
        // membership, or a small power reducing to zero, certifies radical
        // membership without touching the Rabinowitsch extension
        if power_membership_hint(f, &gb, 8) {
            return Ok(true);
        }
        let _ = &rab_seed;
    }
    let tname = ring.fresh_var("t");
    let ext = ring.extend(&tname).expect("fresh variable");
    let t = Polynomial::var_named(&ext, &tname).unwrap();
    let mut ext_gens: Vec<Polynomial> = Vec::with_capacity(rab_seed.len() + 1);
    for g in &rab_seed {
        ext_gens.push(g.transfer(&ext)?);
    }
    let f_ext = f.transfer(&ext)?;
    ext_gens.push(Polynomial::one(&ext).sub(&t.mul(&f_ext)));
    let gb = groebner_opts(&ext_gens, MonomialOrder::Grevlex, false)?;
    Ok(gb.is_unit_ideal())
}

/// Positive radical-membership hint: square the normal form repeatedly; a
/// zero normal form of `f^(2^k)` certifies `f ∈ rad(I)`. Inconclusive when
/// the normal forms grow or never vanish. Sound, never complete.
pub fn power_membership_hint(f: &Polynomial, gb: &GroebnerBasis, max_squarings: usize) -> bool {
    let mut r = gb.normal_form(f);
    if r.is_zero() {
        return true;
    }
    for _ in 0..max_squarings {
        // only chase very sparse normal forms; dense ones blow up in both
        // term count and coefficient size without ever collapsing
        if r.nterms() > 4 {
            return false;
        }
        r = gb.normal_form(&r.mul(&r));
        if r.is_zero() {
            return true;
        }
    }
    false
}

/// Generators of the elimination ideal `I ∩ K[remaining vars]`, returned as
/// a Groebner basis over the restricted ring.
pub fn eliminate(
    gb_or_gens: &[Polynomial],
    vars: &[usize],
) -> Result<Arc<GroebnerBasis>, IdealError> {
    let ring = match gb_or_gens.first() {
        Some(g) => g.ring().clone(),
        None => {
            return Err(IdealError::BadInput(
                "eliminate needs at least one generator".into(),
            ))
        }
    };
    if vars.len() >= ring.nvars() {
        return Err(IdealError::BadInput(
            "cannot eliminate all variables".into(),
        ));
    }
    let order = MonomialOrder::Block {
        eliminated: vars.to_vec(),
    };
    let gb = groebner_opts(gb_or_gens, order, false)?;
    let keep: Vec<usize> = (0..ring.nvars()).filter(|i| !vars.contains(i)).collect();
    let restricted = ring.restrict(&keep);
    let mut kept: Vec<Polynomial> = Vec::new();
    for b in gb.basis() {
        if vars.iter().all(|&v| !b.depends_on(v)) {
            kept.push(b.transfer(&restricted)?);
        }
    }
    // The kept elements form a Groebner basis of the intersection ideal for
    // the induced (grevlex) order; rebuilding through the engine keeps the
    // struct invariants (reduced, sorted) intact.
    if kept.is_empty() {
        return Ok(Arc::new(GroebnerBasis {
            ring: restricted,
            order: MonomialOrder::Grevlex,
            generators: vec![],
            basis: vec![],
            cofactors: None,
            is_unit: false,
        }));
    }
    groebner_opts(&kept, MonomialOrder::Grevlex, false)
}

/// Krull dimension of `S/I` via maximal variable sets independent modulo
/// the initial ideal.
pub fn krull_dimension(gb: &GroebnerBasis) -> Result<usize, IdealError> {
    if gb.is_unit_ideal() {
        return Err(IdealError::UnitIdeal("krull dimension"));
    }
    let n = gb.ring().nvars();
    if gb.basis.is_empty() {
        return Ok(n);
    }
    assert!(n <= 24, "dimension scan limited to 24 variables");
    let leading_masks: Vec<u32> = gb
        .basis
        .iter()
        .map(|b| {
            let terms = gb.order.sorted_terms(b);
            let lm = &terms[0].0;
            (0..n).filter(|&i| lm.exp(i) > 0).fold(0u32, |m, i| m | 1 << i)
        })
        .collect();
    // A variable subset T is independent iff no leading monomial is
    // supported inside T.
    let mut best = 0usize;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        if leading_masks.iter().all(|&supp| supp & !mask != 0) {
            best = size;
        }
    }
    Ok(best)
}

/// Homogeneous regular-sequence test: length equals the drop in Krull
/// dimension.
pub fn is_regular_sequence(
    forms: &[Polynomial],
    ambient: Option<&QuotientContext>,
) -> Result<bool, IdealError> {
    if forms.is_empty() {
        return Ok(true);
    }
    let ring = forms[0].ring().clone();
    for f in forms {
        match f.homogeneous_degree() {
            Some(d) if d > 0 => {}
            _ => {
                return Err(IdealError::BadInput(format!(
                    "regular-sequence test needs homogeneous forms of positive degree, got `{}`",
                    f
                )))
            }
        }
    }
    let (dim_ambient, mut gens) = match ambient {
        Some(q) => {
            if !RingContext::same_ring(&ring, q.ring()) {
                return Err(PolyError::RingMismatch.into());
            }
            (q.krull_dim()?, q.defining_basis().to_vec())
        }
        None => (ring.nvars(), vec![]),
    };
    gens.extend(forms.iter().cloned());
    let gb = groebner_opts(&gens, MonomialOrder::Grevlex, false)?;
    if gb.is_unit_ideal() {
        // cannot happen for homogeneous positive-degree input
        return Ok(false);
    }
    let dim_quot = krull_dimension(&gb)?;
    Ok(dim_ambient == dim_quot + forms.len())
}

/// Subalgebra membership by tag-variable elimination: `f` lies in
/// `K[g_1,...,g_k]` iff its normal form modulo `(y_i - g_i)` under an order
/// eliminating the original variables involves only tags.
pub fn subalgebra_member(
    f: &Polynomial,
    generators: &[Polynomial],
) -> Result<bool, IdealError> {
    let ring = f.ring().clone();
    if generators.is_empty() {
        return Ok(f.is_constant());
    }
    for g in generators {
        if !RingContext::same_ring(&ring, g.ring()) {
            return Err(PolyError::RingMismatch.into());
        }
    }
    let n = ring.nvars();
    let tags: Vec<String> = (0..generators.len())
        .map(|i| ring.fresh_var(&format!("y_tag{}", i)))
        .collect();
    let ext = ring.extend_many(&tags).expect("fresh tags");
    let mut gens_ext = Vec::with_capacity(generators.len());
    for (i, g) in generators.iter().enumerate() {
        let tag = Polynomial::var(&ext, n + i);
        gens_ext.push(tag.sub(&g.transfer(&ext)?));
    }
    let order = MonomialOrder::Block {
        eliminated: (0..n).collect(),
    };
    let gb = groebner_opts(&gens_ext, order, false)?;
    let nf = gb.normal_form(&f.transfer(&ext)?);
    Ok((0..n).all(|v| !nf.depends_on(v)))
}
