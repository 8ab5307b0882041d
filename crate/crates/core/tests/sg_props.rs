//! Configuration-layer invariants: witness re-verification, agreement with
//! the collinearity predicate for linear configurations, the span bound for
//! verified linear configurations, embedding equivalence, and the
//! Grad-set pigeonhole bound on a decided fixture.

use rsg_core::ideal::{radical_member, QuotientContext};
use rsg_core::poly::{parse_polynomial, span_dimension, Polynomial, RingContext, RingRef};
use rsg_core::scalar::{FieldDescriptor, Scalar};
use rsg_core::sg::{sg_sets, verify_sg, ConfigKind, SGConfig, Witness};
use rsg_core::util::SplitMix64;

fn p(r: &RingRef, s: &str) -> Polynomial {
    parse_polynomial(s, r).unwrap()
}

fn random_linear_config(
    ring: &RingRef,
    rng: &mut SplitMix64,
    count: usize,
) -> Option<SGConfig> {
    let mut forms: Vec<Polynomial> = Vec::new();
    for _ in 0..count * 4 {
        if forms.len() == count {
            break;
        }
        let mut terms = Vec::new();
        for v in 0..ring.nvars() {
            let c = rng.range_inclusive(-2, 2);
            if c != 0 {
                terms.push((
                    rsg_core::poly::Monomial::var(v, ring),
                    Scalar::from_int(ring.field(), c),
                ));
            }
        }
        let cand = Polynomial::from_terms(ring, terms);
        if cand.is_zero() {
            continue;
        }
        if forms.iter().any(|f| f.is_associate(&cand)) {
            continue;
        }
        forms.push(cand);
    }
    if forms.len() != count {
        return None;
    }
    Some(SGConfig::basic(
        QuotientContext::polynomial_ring(ring),
        forms,
        1,
    ))
}

/// For linear configurations in a polynomial ring, the SG pair outcome
/// is exactly the collinearity predicate: some third form lies in the pair's
/// span (coefficient-matrix rank <= 2).
#[test]
fn linear_verification_agrees_with_collinearity() {
    let ring = RingContext::standard(&["x", "y", "z"], FieldDescriptor::Rationals);
    let mut rng = SplitMix64::new(71);
    for _ in 0..15 {
        let count = 4 + rng.below(3) as usize;
        let Some(config) = random_linear_config(&ring, &mut rng, count) else {
            continue;
        };
        let report = verify_sg(&config, 1, 1).unwrap();
        for pair in &report.pairs {
            let (i, j) = (pair.i, pair.j);
            let mut collinear_witness = false;
            for k in 0..config.forms.len() {
                if k == i || k == j {
                    continue;
                }
                let rank = span_dimension(&[
                    config.forms[i].clone(),
                    config.forms[j].clone(),
                    config.forms[k].clone(),
                ])
                .unwrap();
                if rank <= 2 {
                    collinear_witness = true;
                    break;
                }
            }
            assert_eq!(
                pair.witness.is_some(),
                collinear_witness,
                "pair ({}, {}) disagrees with the collinearity predicate",
                i,
                j
            );
        }
    }
}

/// Every witness in a passing report re-verifies under radical membership
/// and never names one of the pair's own indices.
#[test]
fn witnesses_reverify() {
    let ring = RingContext::standard(&["x", "y"], FieldDescriptor::Rationals);
    let config = SGConfig::basic(
        QuotientContext::polynomial_ring(&ring),
        vec![p(&ring, "x"), p(&ring, "y"), p(&ring, "x + y"), p(&ring, "x - y")],
        1,
    );
    let report = verify_sg(&config, 1, 1).unwrap();
    assert!(report.pass);
    for pair in &report.pairs {
        let (w, _) = pair.witness.expect("passing report");
        match w {
            Witness::Form(k) => {
                assert!(k != pair.i && k != pair.j);
                let gens = vec![
                    config.forms[pair.i].clone(),
                    config.forms[pair.j].clone(),
                ];
                assert!(radical_member(&config.forms[k], &gens, None).unwrap());
            }
            Witness::DistinguishedZ => panic!("basic configurations have no z"),
        }
    }
}

/// A verified linear SG configuration with delta = 1 spans at most
/// ceil(4/1) - 1 = 3 dimensions.
#[test]
fn verified_linear_configs_span_at_most_three() {
    let ring = RingContext::standard(&["x", "y", "z", "w"], FieldDescriptor::Rationals);
    let mut rng = SplitMix64::new(73);
    let mut verified = 0;
    for _ in 0..200 {
        let count = 3 + rng.below(4) as usize;
        let Some(config) = random_linear_config(&ring, &mut rng, count) else {
            continue;
        };
        let report = verify_sg(&config, 1, 1).unwrap();
        if report.pass {
            verified += 1;
            assert!(
                report.span_dimension <= 3,
                "verified linear configuration spans {} > 3",
                report.span_dimension
            );
        }
    }
    assert!(verified > 0, "no verified configuration sampled");
}

/// Embedding a basic configuration preserves the pair outcomes exactly.
#[test]
fn embedding_preserves_outcomes_on_the_recursive_example() {
    let ring = RingContext::standard(&["x", "y", "z"], FieldDescriptor::Rationals);
    let basic = SGConfig::basic(
        QuotientContext::polynomial_ring(&ring),
        vec![
            p(&ring, "x"),
            p(&ring, "y"),
            p(&ring, "x*z + y^2"),
            p(&ring, "x*(x*z + y^2) + y^3"),
        ],
        3,
    );
    let general = basic.embed_basic(Some("zc")).unwrap();
    let rb = verify_sg(&basic, 3, 1).unwrap();
    let rg = verify_sg(&general, 3, 1).unwrap();
    assert!(rb.pass && rg.pass);
    assert_eq!(rb.pairs.len(), rg.pairs.len());
    for (a, b) in rb.pairs.iter().zip(&rg.pairs) {
        assert_eq!((a.i, a.j), (b.i, b.j));
        assert_eq!(a.witness.is_some(), b.witness.is_some());
    }
}

/// Grad-set pigeonhole bound on a fixture where every radicality call is
/// decided: |Grad(F)| <= 2^(d^2) * max(1, |Frad(F)|).
#[test]
fn grad_set_respects_pigeonhole_bound() {
    // general config over K[x, y][zc]: top-degree F = x^2 + y^2 (d = 2) with
    // lower-degree partners x and y; all pair radicality decided.
    let base = RingContext::standard(&["x", "y"], FieldDescriptor::Rationals);
    let ring = base.extend("zc").unwrap();
    let z = p(&ring, "zc");
    let config = SGConfig::general(
        QuotientContext::polynomial_ring(&ring),
        z,
        vec![
            p(&ring, "x^2 + y^2"),
            p(&ring, "x^2 - y^2"),
            p(&ring, "x"),
            p(&ring, "y"),
        ],
        2,
    );
    let sets = sg_sets(&config, 0, 3).unwrap();
    assert!(
        sets.unknown.is_empty(),
        "fixture must be fully decided, undecided: {:?}",
        sets.unknown
    );
    let d = 2u64;
    let bound = (1u64 << (d * d)) * (sets.frad.len().max(1) as u64);
    assert!(
        (sets.grad.len() as u64) <= bound,
        "|Grad| = {} exceeds 2^(d^2) * max(1, |Frad|) = {}",
        sets.grad.len(),
        bound
    );
}

/// Potential arithmetic on small fixtures.
#[test]
fn potential_arithmetic() {
    // m_1 = 2, m_2 = 3 -> phi = 1*2 + 2*3 = 8
    let base = RingContext::standard(&["x", "y", "w"], FieldDescriptor::Rationals);
    let ring = base.extend("zc").unwrap();
    let z = p(&ring, "zc");
    let config = SGConfig::general(
        QuotientContext::polynomial_ring(&ring),
        z,
        vec![
            p(&ring, "x"),
            p(&ring, "y"),
            p(&ring, "x^2 + y*w"),
            p(&ring, "y^2 + x*w"),
            p(&ring, "w^2 + x*y"),
        ],
        2,
    );
    assert_eq!(rsg_core::sg::potential(&config), 8);
    let empty = SGConfig::general(
        QuotientContext::polynomial_ring(&ring),
        p(&ring, "zc"),
        vec![],
        1,
    );
    assert_eq!(rsg_core::sg::potential(&empty), 0);
    // recursive example m = 6: degrees 1, 1, 2, 3, 5, 10
    let r3 = RingContext::standard(&["x", "y", "z"], FieldDescriptor::Rationals);
    let f3 = p(&r3, "x*z + y^2");
    let f4 = p(&r3, "x*(x*z + y^2) + y^3");
    let f5 = f3.mul(&f4).add(&p(&r3, "y^5"));
    let f6 = f3.mul(&f4).mul(&f5).add(&p(&r3, "y^10"));
    let basic = SGConfig::basic(
        QuotientContext::polynomial_ring(&r3),
        vec![p(&r3, "x"), p(&r3, "y"), f3, f4, f5, f6],
        10,
    );
    let general = basic.embed_basic(Some("zc")).unwrap();
    assert_eq!(general.kind, ConfigKind::General);
    // phi = 1+1+2+3+5+10 = 22
    assert_eq!(rsg_core::sg::potential(&general), 22);
}

/// On the recursive example with F = F_6, every lower-degree pair (F_6, P)
/// is decided NOT_RADICAL by an explicit witness, so Grad(F_6) is empty
/// with nothing undecided.
#[test]
fn recursive_example_grad_fully_decided() {
    let r3 = RingContext::standard(&["x", "y", "z"], FieldDescriptor::Rationals);
    let f3 = p(&r3, "x*z + y^2");
    let f4 = p(&r3, "x*(x*z + y^2) + y^3");
    let f5 = f3.mul(&f4).add(&p(&r3, "y^5"));
    let f6 = f3.mul(&f4).mul(&f5).add(&p(&r3, "y^10"));
    let basic = SGConfig::basic(
        QuotientContext::polynomial_ring(&r3),
        vec![p(&r3, "x"), p(&r3, "y"), f3, f4, f5, f6],
        10,
    );
    let general = basic.embed_basic(Some("zc")).unwrap();
    let sets = sg_sets(&general, 5, 2).unwrap();
    assert!(
        sets.unknown.is_empty(),
        "all radicality calls must be decided, undecided: {:?}",
        sets.unknown
    );
    // e.g. rad(F_6, x) = (x, y) strictly contains (F_6, x), so x is not in
    // Grad; the same failure mode holds for every lower-degree partner here
    assert!(sets.grad.is_empty(), "grad: {:?}", sets.grad);
}

/// Witnesses of general configurations re-verify through radical
/// membership of the z-multiplied elements, covering both witness kinds:
/// a third form, and the distinguished form itself.
#[test]
fn general_config_witnesses_reverify() {
    let base = RingContext::standard(&["x", "y", "w"], FieldDescriptor::Rationals);
    let ring = base.extend("zc").unwrap();
    let z = p(&ring, "zc");
    // four pairwise-coprime linear residuals: every pair spans a third
    let linear = SGConfig::general(
        QuotientContext::polynomial_ring(&ring),
        z.clone(),
        vec![p(&ring, "x"), p(&ring, "y"), p(&ring, "x + y"), p(&ring, "x - y")],
        1,
    );
    // residuals x and x + zc: the pair's vanishing locus sits inside V(zc),
    // so the distinguished form itself is the witness
    let z_witnessed = SGConfig::general(
        QuotientContext::polynomial_ring(&ring),
        z.clone(),
        vec![p(&ring, "x"), p(&ring, "x + zc")],
        1,
    );
    let mut seen_z_witness = false;
    for config in [&linear, &z_witnessed] {
        let report = verify_sg(config, 9, 1).unwrap();
        assert!(report.pass, "violations: {:?}", report.violations);
        for pair in &report.pairs {
            let (w, _) = pair.witness.expect("passing report");
            let gens = vec![
                z.mul(&config.forms[pair.i]),
                z.mul(&config.forms[pair.j]),
            ];
            let witness_poly = match w {
                Witness::DistinguishedZ => {
                    seen_z_witness = true;
                    z.clone()
                }
                Witness::Form(k) => {
                    assert!(k != pair.i && k != pair.j);
                    z.mul(&config.forms[k])
                }
            };
            assert!(
                radical_member(&witness_poly, &gens, Some(&config.ambient)).unwrap(),
                "witness for pair ({}, {}) must re-verify",
                pair.i,
                pair.j
            );
        }
    }
    assert!(seen_z_witness, "the z-witness path must be exercised");
}
