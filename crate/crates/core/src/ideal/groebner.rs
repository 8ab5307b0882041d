//! Buchberger's algorithm with Gebauer-Moeller pair pruning and sugar
//! selection, producing reduced bases with cofactor records back to the
//! input generators.

use super::order::MonomialOrder;
use crate::poly::{Monomial, Polynomial, RingContext, RingRef};
use crate::scalar::Scalar;
use std::cmp::Ordering;

/// Term list sorted descending under the engine's order.
type Terms = Vec<(Monomial, Scalar)>;

struct Cmp<'a> {
    order: &'a MonomialOrder,
    ring: &'a RingContext,
}

impl<'a> Cmp<'a> {
    fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b, self.ring)
    }
}

fn terms_of(p: &Polynomial, cmp: &Cmp) -> Terms {
    match cmp.order {
        MonomialOrder::Grevlex => p.terms().to_vec(),
        _ => cmp.order.sorted_terms(p),
    }
}

fn terms_to_poly(ring: &RingRef, t: &Terms) -> Polynomial {
    Polynomial::from_terms(ring, t.clone())
}

/// `a - c * m * b` on sorted term lists.
fn sub_mul(a: &Terms, c: &Scalar, m: &Monomial, b: &Terms, cmp: &Cmp) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() && j < b.len() {
        let bm = b[j].0.mul(m);
        match cmp.cmp(&a[i].0, &bm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let coef = c.checked_mul(&b[j].1).unwrap().neg();
                if !coef.is_zero() {
                    out.push((bm, coef));
                }
                j += 1;
            }
            Ordering::Equal => {
                let coef = a[i]
                    .1
                    .checked_sub(&c.checked_mul(&b[j].1).unwrap())
                    .unwrap();
                if !coef.is_zero() {
                    out.push((bm, coef));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    while j < b.len() {
        let coef = c.checked_mul(&b[j].1).unwrap().neg();
        if !coef.is_zero() {
            out.push((b[j].0.mul(m), coef));
        }
        j += 1;
    }
    out
}

fn scale(t: &mut Terms, c: &Scalar) {
    for (_, coef) in t.iter_mut() {
        *coef = coef.checked_mul(c).unwrap();
    }
}

struct Entry {
    terms: Terms, // monic
    rep: Option<Vec<Polynomial>>,
    sugar: u64,
}

impl Entry {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }
}

#[derive(Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

/// Full normal form of `terms` against the basis entries, tracking the
/// quotients when `reps` is requested. Returns (normal form, quotient per
/// basis element, sugar of the reduction).
fn normal_form_terms(
    mut work: Terms,
    mut sugar: u64,
    basis: &[Entry],
    active: &[bool],
    cmp: &Cmp,
    track: bool,
) -> (Terms, Vec<Terms>, u64) {
    let mut quots: Vec<Terms> = if track {
        vec![vec![]; basis.len()]
    } else {
        vec![]
    };
    let mut result: Terms = Vec::new();
    'outer: while !work.is_empty() {
        let (lm, lc) = work[0].clone();
        for (bi, b) in basis.iter().enumerate() {
            if !active[bi] {
                continue;
            }
            if b.lm().divides(&lm) {
                let m = b.lm().div_into(&lm);
                work = sub_mul(&work, &lc, &m, &b.terms, cmp);
                sugar = sugar.max(b.sugar + m.degree());
                if track {
                    quots[bi].push((m, lc));
                }
                continue 'outer;
            }
        }
        // head irreducible: move to result
        result.push(work.remove(0));
    }
    (result, quots, sugar)
}

pub struct BuchbergerResult {
    pub basis: Vec<Polynomial>,
    pub cofactors: Option<Vec<Vec<Polynomial>>>,
    pub is_unit: bool,
}

/// Reduced Groebner basis of the generators under the order. Deterministic
/// for fixed inputs. When `with_cofactors` is set, each output basis element
/// carries its expression in terms of the input generators.
pub fn buchberger(
    ring: &RingRef,
    generators: &[Polynomial],
    order: &MonomialOrder,
    with_cofactors: bool,
) -> BuchbergerResult {
    let cmp = Cmp { order, ring };
    let ngens = generators.len();
    let mut basis: Vec<Entry> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let insert = |poly_terms: Terms,
                      rep: Option<Vec<Polynomial>>,
                      sugar: u64,
                      basis: &mut Vec<Entry>,
                      active: &mut Vec<bool>,
                      pairs: &mut Vec<Pair>|
     -> bool {
        if poly_terms.is_empty() {
            return false;
        }
        // make monic, scaling the representation identically
        let lc = poly_terms[0].1.clone();
        let mut terms = poly_terms;
        let mut rep = rep;
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            scale(&mut terms, &inv);
            if let Some(r) = rep.as_mut() {
                let s = Scalar::one(ring.field());
                let _ = s;
                for p in r.iter_mut() {
                    *p = p.mul_scalar(&inv);
                }
            }
        }
        if terms[0].0.is_one() {
            // constant: unit ideal
            basis.clear();
            active.clear();
            pairs.clear();
            basis.push(Entry {
                terms,
                rep,
                sugar,
            });
            active.push(true);
            return true; // unit
        }
        let t = basis.len();
        let lm_t = terms[0].0.clone();
        basis.push(Entry { terms, rep, sugar });
        active.push(true);

        // Gebauer-Moeller update
        let mut candidates: Vec<Pair> = Vec::new();
        for i in 0..t {
            if !active[i] {
                continue;
            }
            let lcm = basis[i].lm().lcm_in(&lm_t, ring);
            let sug = (basis[i].sugar + basis[i].lm().div_into(&lcm).degree())
                .max(basis[t].sugar + lm_t.div_into(&lcm).degree());
            candidates.push(Pair {
                i,
                j: t,
                lcm,
                sugar: sug,
            });
        }
        // M criterion: drop candidates whose lcm is a proper multiple of
        // another candidate's lcm; for equal lcms keep the first.
        let mut keep = vec![true; candidates.len()];
        for a in 0..candidates.len() {
            if !keep[a] {
                continue;
            }
            for b in 0..candidates.len() {
                if a == b || !keep[a] || !keep[b] {
                    continue;
                }
                if candidates[b].lcm.divides(&candidates[a].lcm) {
                    if candidates[a].lcm == candidates[b].lcm {
                        if b < a {
                            keep[a] = false;
                        }
                    } else {
                        keep[a] = false;
                    }
                }
            }
        }
        // B (coprime) criterion
        let mut new_pairs: Vec<Pair> = Vec::new();
        for (k, p) in candidates.into_iter().enumerate() {
            if !keep[k] {
                continue;
            }
            if basis[p.i].lm().coprime(&lm_t) {
                continue;
            }
            new_pairs.push(p);
        }
        // prune old pairs strictly divisible by the new leading monomial
        pairs.retain(|p| {
            if !lm_t.divides(&p.lcm) {
                return true;
            }
            let lcm_it = basis[p.i].lm().lcm_in(&lm_t, ring);
            let lcm_jt = basis[p.j].lm().lcm_in(&lm_t, ring);
            lcm_it == p.lcm || lcm_jt == p.lcm
        });
        pairs.extend(new_pairs);
        false
    };

    // seed with the input generators, reduced against the growing basis
    let mut is_unit = false;
    for (gi, g) in generators.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let sugar = g.degree().unwrap_or(0);
        let rep = if with_cofactors {
            let mut r = vec![Polynomial::zero(ring); ngens];
            r[gi] = Polynomial::one(ring);
            Some(r)
        } else {
            None
        };
        let terms = terms_of(g, &cmp);
        if insert(terms, rep, sugar, &mut basis, &mut active, &mut pairs) {
            is_unit = true;
            break;
        }
    }

    // main loop
    while !is_unit && !pairs.is_empty() {
        // sugar selection: min (sugar, lcm under order, i, j)
        let mut best = 0usize;
        for k in 1..pairs.len() {
            let a = &pairs[k];
            let b = &pairs[best];
            let c = a
                .sugar
                .cmp(&b.sugar)
                .then_with(|| cmp.cmp(&a.lcm, &b.lcm))
                .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)));
            if c == Ordering::Less {
                best = k;
            }
        }
        let pair = pairs.swap_remove(best);
        // S-polynomial of two monic entries: mi*fi - mj*fj
        let mi = basis[pair.i].lm().div_into(&pair.lcm);
        let mj = basis[pair.j].lm().div_into(&pair.lcm);
        let one = Scalar::one(ring.field());
        let mut s_terms: Terms = basis[pair.i]
            .terms
            .iter()
            .map(|(m, c)| (m.mul(&mi), c.clone()))
            .collect();
        s_terms.sort_by(|(a, _), (b, _)| cmp.cmp(b, a));
        s_terms = sub_mul(&s_terms, &one, &mj, &basis[pair.j].terms, &cmp);
        let s_sugar = pair.sugar;
        let rep = if with_cofactors {
            let ri = basis[pair.i].rep.as_ref().unwrap();
            let rj = basis[pair.j].rep.as_ref().unwrap();
            let mi_p = Polynomial::monomial(ring, mi.clone(), one.clone());
            let mj_p = Polynomial::monomial(ring, mj.clone(), one.clone());
            Some(
                ri.iter()
                    .zip(rj)
                    .map(|(a, b)| a.mul(&mi_p).sub(&b.mul(&mj_p)))
                    .collect(),
            )
        } else {
            None
        };
        let (nf, quots, sugar) =
            normal_form_terms(s_terms, s_sugar, &basis, &active, &cmp, with_cofactors);
        if nf.is_empty() {
            continue;
        }
        let rep = if with_cofactors {
            let mut r: Vec<Polynomial> = rep.unwrap();
            for (bi, q) in quots.iter().enumerate() {
                if q.is_empty() {
                    continue;
                }
                let qp = terms_to_poly(ring, q);
                let brep = basis[bi].rep.as_ref().unwrap().clone();
                for (slot, b) in r.iter_mut().zip(&brep) {
                    *slot = slot.sub(&qp.mul(b));
                }
            }
            Some(r)
        } else {
            None
        };
        if insert(nf, rep, sugar, &mut basis, &mut active, &mut pairs) {
            is_unit = true;
        }
    }

    if is_unit {
        return BuchbergerResult {
            basis: vec![Polynomial::one(ring)],
            cofactors: basis[0].rep.clone().map(|r| vec![r]),
            is_unit: true,
        };
    }

    // minimalize: keep only entries whose lm is not divisible by another's
    let live: Vec<usize> = (0..basis.len()).filter(|&i| active[i]).collect();
    let mut minimal: Vec<usize> = Vec::new();
    for &i in &live {
        let lm_i = basis[i].lm();
        let divisible = live.iter().any(|&j| {
            j != i && basis[j].lm().divides(lm_i) && (basis[j].lm() != lm_i || j < i)
        });
        if !divisible {
            minimal.push(i);
        }
    }

    // tail-reduce each minimal element against the others
    let mut reduced: Vec<(Terms, Option<Vec<Polynomial>>)> = Vec::new();
    for &i in &minimal {
        let mut mask = vec![false; basis.len()];
        for &j in &minimal {
            if j != i {
                mask[j] = true;
            }
        }
        let (nf, quots, _) = normal_form_terms(
            basis[i].terms.clone(),
            basis[i].sugar,
            &basis,
            &mask,
            &cmp,
            with_cofactors,
        );
        assert!(!nf.is_empty(), "minimal basis element reduced to zero");
        let rep = if with_cofactors {
            let mut r = basis[i].rep.as_ref().unwrap().clone();
            for (bi, q) in quots.iter().enumerate() {
                if q.is_empty() {
                    continue;
                }
                let qp = terms_to_poly(ring, q);
                let brep = basis[bi].rep.as_ref().unwrap().clone();
                for (slot, b) in r.iter_mut().zip(&brep) {
                    *slot = slot.sub(&qp.mul(b));
                }
            }
            Some(r)
        } else {
            None
        };
        // re-normalize monic after tail reduction
        let lc = nf[0].1.clone();
        let mut nf = nf;
        let mut rep = rep;
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            scale(&mut nf, &inv);
            if let Some(r) = rep.as_mut() {
                for p in r.iter_mut() {
                    *p = p.mul_scalar(&inv);
                }
            }
        }
        reduced.push((nf, rep));
    }

    // deterministic output order: ascending leading monomial
    reduced.sort_by(|(a, _), (b, _)| cmp.cmp(&a[0].0, &b[0].0));

    let mut out_basis = Vec::with_capacity(reduced.len());
    let mut out_cof = if with_cofactors { Some(Vec::new()) } else { None };
    for (t, rep) in reduced {
        out_basis.push(terms_to_poly(ring, &t));
        if let (Some(c), Some(r)) = (out_cof.as_mut(), rep) {
            c.push(r);
        }
    }
    BuchbergerResult {
        basis: out_basis,
        cofactors: out_cof,
        is_unit: false,
    }
}

/// Normal form of `f` against an already-computed basis (sorted term lists
/// rebuilt on the fly), with optional quotient certificate.
pub fn reduce_by_basis(
    ring: &RingRef,
    f: &Polynomial,
    basis: &[Polynomial],
    order: &MonomialOrder,
    track: bool,
) -> (Polynomial, Vec<Polynomial>) {
    let cmp = Cmp { order, ring };
    let entries: Vec<Entry> = basis
        .iter()
        .map(|b| Entry {
            terms: terms_of(b, &cmp),
            rep: None,
            sugar: b.degree().unwrap_or(0),
        })
        .collect();
    let active = vec![true; entries.len()];
    let (nf, quots, _) = normal_form_terms(
        terms_of(f, &cmp),
        f.degree().unwrap_or(0),
        &entries,
        &active,
        &cmp,
        track,
    );
    let quotients = if track {
        quots.iter().map(|q| terms_to_poly(ring, q)).collect()
    } else {
        vec![]
    };
    (terms_to_poly(ring, &nf), quotients)
}

/// S-polynomial of two polynomials under an order (for external checks).
pub fn s_polynomial(
    ring: &RingRef,
    f: &Polynomial,
    g: &Polynomial,
    order: &MonomialOrder,
) -> Polynomial {
    let cmp = Cmp { order, ring };
    let ft = terms_of(f, &cmp);
    let gt = terms_of(g, &cmp);
    let (fl, fc) = &ft[0];
    let (gl, gc) = &gt[0];
    let lcm = fl.lcm_in(gl, ring);
    let mf = fl.div_into(&lcm);
    let mg = gl.div_into(&lcm);
    let a = f.mul_term(&mf, &fc.inv().unwrap());
    let b = g.mul_term(&mg, &gc.inv().unwrap());
    a.sub(&b)
}
