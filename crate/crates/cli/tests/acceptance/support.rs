//! Shared generators and independent oracles for the acceptance suite.

use num_bigint::BigUint;
use rsg_core::ideal::{groebner_opts, MonomialOrder};
use rsg_core::poly::{
    coefficient_matrix, Monomial, Polynomial, RingContext, RingRef, ScalarMatrix,
};
use rsg_core::scalar::{FieldDescriptor, Scalar};
use rsg_core::util::SplitMix64;

pub fn rational_ring(vars: &[&str]) -> RingRef {
    RingContext::standard(vars, FieldDescriptor::Rationals)
}

/// Random homogeneous polynomial of the exact degree with small integer
/// coefficients; never zero.
pub fn random_form(ring: &RingRef, degree: u64, rng: &mut SplitMix64) -> Polynomial {
    let monos = monomials_of_degree(ring, degree);
    loop {
        let mut terms = Vec::new();
        for m in &monos {
            let c = rng.range_inclusive(-2, 2);
            if c != 0 && rng.below(100) < 60 {
                terms.push((m.clone(), Scalar::from_int(ring.field(), c)));
            }
        }
        let p = Polynomial::from_terms(ring, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// All monomials of one weighted degree (standard grading assumed).
pub fn monomials_of_degree(ring: &RingRef, degree: u64) -> Vec<Monomial> {
    let n = ring.nvars();
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn rec(
        ring: &RingRef,
        exps: &mut Vec<u32>,
        pos: usize,
        left: u64,
        out: &mut Vec<Monomial>,
    ) {
        if pos + 1 == exps.len() {
            exps[pos] = left as u32;
            out.push(Monomial::new(exps.clone(), ring));
            return;
        }
        for e in 0..=left {
            exps[pos] = e as u32;
            rec(ring, exps, pos + 1, left - e, out);
        }
    }
    rec(ring, &mut exps, 0, degree, &mut out);
    out
}

/// Macaulay-matrix membership oracle for homogeneous ideals: a homogeneous
/// `f` of degree D lies in the ideal iff it lies in the span of the degree-D
/// multiples of the generators. Exact rank comparison, independent of the
/// reduction path.
pub fn macaulay_member(f: &Polynomial, generators: &[Polynomial]) -> bool {
    let ring = f.ring();
    let d = match f.homogeneous_degree() {
        Some(d) => d,
        None => return false,
    };
    let mut rows: Vec<Polynomial> = Vec::new();
    for g in generators {
        let gd = match g.homogeneous_degree() {
            Some(x) => x,
            None => continue,
        };
        if gd > d {
            continue;
        }
        for m in monomials_of_degree(ring, d - gd) {
            rows.push(g.mul_term(&m, &Scalar::one(ring.field())));
        }
    }
    if rows.is_empty() {
        return f.is_zero();
    }
    let (mat, _) = coefficient_matrix(&rows);
    let base_rank = mat.rank();
    rows.push(f.clone());
    let (mat2, _) = coefficient_matrix(&rows);
    mat2.rank() == base_rank
}

/// Exhaustive k-collapse decision for a quadric over the algebraic closure:
/// `q` has a k-collapse iff it vanishes on some codimension-k linear
/// subspace. Every such subspace has defining equations in row-echelon form
/// with respect to some pivot set, so sweeping pivot sets and checking the
/// consistency of the induced polynomial system (weak Nullstellensatz: the
/// system is solvable iff its ideal is proper) is exhaustive.
pub fn quadric_has_k_collapse(q: &Polynomial, k: usize) -> bool {
    let ring = q.ring();
    let n = ring.nvars();
    if k >= n {
        return true; // vanishing on the origin-only space is vacuous
    }
    for pivots in combinations(n, k) {
        let free: Vec<usize> = (0..n).filter(|v| !pivots.contains(v)).collect();
        // unknown coefficients c_{j,q}: x_{pivot_j} = sum_q c_{j,q} x_free_q
        let cvars: Vec<String> = (0..k)
            .flat_map(|j| (0..free.len()).map(move |q| format!("c_{}_{}", j, q)))
            .collect();
        let cring = RingContext::new(cvars, None, ring.field()).unwrap();
        // substitute into q: work symbolically in the joint ring c + x_free
        let joint_vars: Vec<String> = cring
            .vars()
            .iter()
            .cloned()
            .chain(free.iter().map(|&v| ring.vars()[v].clone()))
            .collect();
        let joint = RingContext::new(joint_vars, None, ring.field()).unwrap();
        let images: Vec<Polynomial> = (0..n)
            .map(|v| {
                if let Some(j) = pivots.iter().position(|&p| p == v) {
                    // x_pivot -> sum_q c_{j,q} * x_free_q
                    let mut acc = Polynomial::zero(&joint);
                    for (qi, &fv) in free.iter().enumerate() {
                        let c = Polynomial::var_named(&joint, &format!("c_{}_{}", j, qi))
                            .unwrap();
                        let xf = Polynomial::var_named(&joint, &ring.vars()[fv]).unwrap();
                        acc = acc.add(&c.mul(&xf));
                    }
                    acc
                } else {
                    Polynomial::var_named(&joint, &ring.vars()[v]).unwrap()
                }
            })
            .collect();
        let substituted = q.substitute(&joint, &images);
        // equations: coefficients of the free-variable monomials must vanish
        let free_joint: Vec<usize> = free
            .iter()
            .map(|&v| joint.var_index(&ring.vars()[v]).unwrap())
            .collect();
        let mut equations: std::collections::BTreeMap<Vec<u32>, Vec<(Monomial, Scalar)>> =
            Default::default();
        for (m, c) in substituted.terms() {
            let key: Vec<u32> = free_joint.iter().map(|&v| m.exp(v)).collect();
            let mut cexps = m.exps().to_vec();
            for &v in &free_joint {
                cexps[v] = 0;
            }
            equations
                .entry(key)
                .or_default()
                .push((Monomial::new(cexps, &joint), c.clone()));
        }
        let system: Vec<Polynomial> = equations
            .into_values()
            .map(|terms| Polynomial::from_terms(&joint, terms))
            .filter(|p| !p.is_zero())
            .collect();
        if system.is_empty() {
            return true; // identically zero on the subspace
        }
        let gb = groebner_opts(&system, MonomialOrder::Grevlex, false).unwrap();
        if !gb.is_unit_ideal() {
            return true;
        }
    }
    false
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                return out;
            }
        }
    }
}

/// Exact span dimension as BigUint for integer-exact comparisons.
pub fn span_big(polys: &[Polynomial]) -> BigUint {
    BigUint::from(rsg_core::poly::span_dimension(polys).unwrap() as u64)
}

#[allow(dead_code)]
pub fn rank_of(mat: &ScalarMatrix) -> usize {
    mat.rank()
}
