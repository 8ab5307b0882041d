//! Radicality criteria for pairs of forms: the discriminant certificate for
//! principal squarefree ideals, and a three-valued pair test that searches
//! for explicit non-radicality witnesses before attempting certification.

use super::{groebner_opts, ideal_member, radical_member, IdealError, MonomialOrder, QuotientContext};
use crate::poly::{discriminant, poly_gcd, squarefree_part, Monomial, Polynomial, RingRef};
use crate::scalar::Scalar;
use std::collections::BTreeMap;

/// Outcome of the discriminant criterion.
#[derive(Clone, Debug)]
pub enum DiscriminantVerdict {
    /// `(P, Q)` is radical; records the variable split that certified it.
    Radical {
        z_vars: Vec<String>,
        x_vars: Vec<String>,
    },
    /// Some discriminant shares a factor with `Q`: the criterion's
    /// hypotheses fail and nothing is concluded.
    NotApplicable {
        failing_var: String,
        gcd: Polynomial,
    },
}

/// Per-precondition failures, reported individually.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SplitViolation {
    PNotHomogeneous,
    QNotHomogeneous,
    QDependsOnZPart(String),
    QNotSquarefree,
    PNotSquarefree,
    PInsideXPartIdeal,
    BadPartition(String),
}

impl std::fmt::Display for SplitViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SplitViolation::PNotHomogeneous => write!(f, "P is not homogeneous under the declared weights"),
            SplitViolation::QNotHomogeneous => write!(f, "Q is not homogeneous under the declared weights"),
            SplitViolation::QDependsOnZPart(v) => write!(f, "Q depends on z-part variable `{}`", v),
            SplitViolation::QNotSquarefree => write!(f, "Q is not squarefree"),
            SplitViolation::PNotSquarefree => write!(f, "P is not squarefree"),
            SplitViolation::PInsideXPartIdeal => {
                write!(f, "P lies in the ideal generated by the x-part variables")
            }
            SplitViolation::BadPartition(m) => write!(f, "bad variable partition: {}", m),
        }
    }
}

/// Check the split preconditions; empty list means applicable.
pub fn split_violations(
    p: &Polynomial,
    q: &Polynomial,
    z_part: &[usize],
    x_part: &[usize],
) -> Vec<SplitViolation> {
    let ring = p.ring();
    let mut out = Vec::new();
    let mut seen = vec![false; ring.nvars()];
    for &v in z_part.iter().chain(x_part) {
        if v >= ring.nvars() || seen[v] {
            out.push(SplitViolation::BadPartition(
                "parts must be disjoint subsets of the ring variables".into(),
            ));
            return out;
        }
        seen[v] = true;
    }
    if !seen.iter().all(|&b| b) {
        out.push(SplitViolation::BadPartition(
            "parts must cover every ring variable".into(),
        ));
        return out;
    }
    if p.homogeneous_degree().is_none() {
        out.push(SplitViolation::PNotHomogeneous);
    }
    if q.homogeneous_degree().is_none() {
        out.push(SplitViolation::QNotHomogeneous);
    }
    for &v in z_part {
        if q.depends_on(v) {
            out.push(SplitViolation::QDependsOnZPart(ring.vars()[v].clone()));
        }
    }
    if let Ok(sf) = squarefree_part(q) {
        if !sf.is_associate(&q.normalize_monic()) {
            out.push(SplitViolation::QNotSquarefree);
        }
    }
    if let Ok(sf) = squarefree_part(p) {
        if !sf.is_associate(&p.normalize_monic()) {
            out.push(SplitViolation::PNotSquarefree);
        }
    }
    // P not in (x-part) iff some term of P avoids all x-part variables.
    let escapes = p
        .terms()
        .iter()
        .any(|(m, _)| x_part.iter().all(|&v| m.exp(v) == 0));
    if !escapes {
        out.push(SplitViolation::PInsideXPartIdeal);
    }
    out
}

/// Discriminant criterion for the radicality of `(P, Q)` with principal
/// squarefree `Q` in the x-part subring: radical when every discriminant of
/// `P` in a z-part variable is coprime to `Q`.
pub fn discriminant_radicality(
    p: &Polynomial,
    q: &Polynomial,
    z_part: &[usize],
    x_part: &[usize],
) -> Result<DiscriminantVerdict, Vec<SplitViolation>> {
    let violations = split_violations(p, q, z_part, x_part);
    if !violations.is_empty() {
        return Err(violations);
    }
    let ring = p.ring();
    for &z in z_part {
        if !p.depends_on(z) {
            continue;
        }
        let disc = discriminant(p, z).expect("P depends on z");
        if disc.is_zero() {
            // cannot happen for squarefree P, kept as a guard
            return Ok(DiscriminantVerdict::NotApplicable {
                failing_var: ring.vars()[z].clone(),
                gcd: Polynomial::zero(ring),
            });
        }
        let g = poly_gcd(&disc, q).expect("nonzero inputs");
        if !g.is_constant() {
            return Ok(DiscriminantVerdict::NotApplicable {
                failing_var: ring.vars()[z].clone(),
                gcd: g,
            });
        }
    }
    Ok(DiscriminantVerdict::Radical {
        z_vars: z_part.iter().map(|&v| ring.vars()[v].clone()).collect(),
        x_vars: x_part.iter().map(|&v| ring.vars()[v].clone()).collect(),
    })
}

/// Three-valued radicality for the pair ideal `(F, P)`.
#[derive(Clone, Debug)]
pub enum RadicalPairVerdict {
    /// Certified by the discriminant criterion; records which input played
    /// the role of `P` (index 0 = first argument) and the split used.
    Radical {
        p_role: usize,
        z_vars: Vec<String>,
        x_vars: Vec<String>,
    },
    /// Explicit witness: in the radical but not in the ideal.
    NotRadical { witness: Polynomial },
    Unknown,
}

fn all_monomials(ring: &RingRef, max_degree: u64) -> Vec<Monomial> {
    let n = ring.nvars();
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    loop {
        let m = Monomial::new(exps.clone(), ring);
        if m.degree() >= 1 && m.degree() <= max_degree {
            out.push(m);
        }
        // odometer increment bounded by total degree
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            exps[i] += 1;
            if Monomial::new(exps.clone(), ring).degree() <= max_degree {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// Decide whether `(F, P)` is radical: first look for cheap explicit
/// witnesses, then try coordinate-split discriminant certification, then an
/// exhaustive monomial witness sweep up to `search_degree`.
///
/// In a nontrivial quotient ambient only the witness route is available and
/// `Unknown` is returned when it fails.
pub fn is_radical_pair(
    f: &Polynomial,
    p: &Polynomial,
    ambient: Option<&QuotientContext>,
    search_degree: u64,
) -> Result<RadicalPairVerdict, IdealError> {
    let ring = f.ring().clone();
    let trivial_ambient = ambient.is_none_or(|q| q.is_trivial());
    if trivial_ambient {
        let g = poly_gcd(f, p)?;
        if !g.is_constant() {
            return Err(IdealError::BadInput(format!(
                "is_radical_pair needs coprime inputs; gcd = {}",
                g
            )));
        }
    }
    let mut gens = vec![f.clone(), p.clone()];
    if let Some(q) = ambient {
        gens.extend(q.defining_basis().iter().cloned());
    }
    let gb = groebner_opts(&gens, MonomialOrder::Grevlex, false)?;
    if gb.is_unit_ideal() {
        return Err(IdealError::BadInput(
            "pair generates the unit ideal".into(),
        ));
    }

    let try_witness = |cand: &Polynomial| -> Result<Option<Polynomial>, IdealError> {
        if cand.is_constant() {
            return Ok(None);
        }
        let (member, _) = ideal_member(cand, &gb)?;
        if member {
            return Ok(None);
        }
        if radical_member(cand, &[f.clone(), p.clone()], ambient)? {
            return Ok(Some(cand.clone()));
        }
        Ok(None)
    };

    // 1. cheap candidates: squarefree parts of the basis elements
    let mut cheap: Vec<Polynomial> = Vec::new();
    for b in gb.basis() {
        if let Ok(sf) = squarefree_part(b) {
            if !sf.is_associate(&b.normalize_monic()) {
                cheap.push(sf);
            }
        }
    }
    cheap.sort_by_key(|c| (c.degree().unwrap_or(0), c.to_string()));
    for cand in &cheap {
        if let Some(w) = try_witness(cand)? {
            return Ok(RadicalPairVerdict::NotRadical { witness: w });
        }
    }

    // 2. discriminant certification over coordinate splits
    if trivial_ambient {
        for (role, big, small) in [(1usize, f, p), (0usize, p, f)] {
            // `small` plays Q and must sit inside the x-part.
            let qvars = small.support_vars();
            let n = ring.nvars();
            let free: Vec<usize> = (0..n).filter(|v| !qvars.contains(v)).collect();
            if free.is_empty() {
                continue;
            }
            for mask in 0u32..(1 << free.len()) {
                let mut x_part = qvars.clone();
                for (bit, &v) in free.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        x_part.push(v);
                    }
                }
                if x_part.len() == n {
                    continue;
                }
                x_part.sort_unstable();
                let z_part: Vec<usize> = (0..n).filter(|v| !x_part.contains(v)).collect();
                match discriminant_radicality(big, small, &z_part, &x_part) {
                    Ok(DiscriminantVerdict::Radical { z_vars, x_vars }) => {
                        return Ok(RadicalPairVerdict::Radical {
                            p_role: role,
                            z_vars,
                            x_vars,
                        });
                    }
                    Ok(DiscriminantVerdict::NotApplicable { .. }) => {}
                    Err(_) => {}
                }
            }
        }
    }

    // 3. exhaustive low-degree witness sweep: variables, then monomials,
    // then monomial multiples of the cheap squarefree candidates.
    let mut candidates: BTreeMap<String, Polynomial> = BTreeMap::new();
    for v in 0..ring.nvars() {
        let pv = Polynomial::var(&ring, v);
        candidates.insert(pv.to_string(), pv);
    }
    for m in all_monomials(&ring, search_degree) {
        let pm = Polynomial::monomial(&ring, m, Scalar::one(ring.field()));
        candidates.insert(pm.to_string(), pm);
    }
    for c in &cheap {
        candidates.insert(c.to_string(), c.clone());
    }
    let mut ordered: Vec<Polynomial> = candidates.into_values().collect();
    ordered.sort_by_key(|c| (c.degree().unwrap_or(0), c.to_string()));
    for cand in &ordered {
        if let Some(w) = try_witness(cand)? {
            return Ok(RadicalPairVerdict::NotRadical { witness: w });
        }
    }
    Ok(RadicalPairVerdict::Unknown)
}
