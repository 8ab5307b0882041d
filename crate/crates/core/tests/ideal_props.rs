//! Property tests for the ideal engine: Rabinowitsch soundness against
//! explicit powers, the elimination-of-radical consequence, and the
//! subalgebra transfer principle on variable subrings.

use rsg_core::ideal::{
    eliminate, groebner, ideal_member, radical_member, MonomialOrder,
};
use rsg_core::poly::{parse_polynomial, Polynomial, RingContext, RingRef};
use rsg_core::scalar::{FieldDescriptor, Scalar};
use rsg_core::util::SplitMix64;

fn p(r: &RingRef, s: &str) -> Polynomial {
    parse_polynomial(s, r).unwrap()
}

/// Whenever radical membership holds on the desk fixtures, some small power
/// lies in the ideal; whenever it fails, no power up to 8 does.
#[test]
fn rabinowitsch_agrees_with_explicit_powers() {
    let r = RingContext::standard(&["x", "y", "z"], FieldDescriptor::Rationals);
    let fixtures: Vec<(Vec<Polynomial>, Polynomial)> = vec![
        (vec![p(&r, "x^2")], p(&r, "x")),
        (vec![p(&r, "x^2*y^3")], p(&r, "x*y")),
        (vec![p(&r, "x^2 - y"), p(&r, "y^2 - x")], p(&r, "x^4 - x")),
        (vec![p(&r, "x*y"), p(&r, "x*z")], p(&r, "x")),
        (vec![p(&r, "x*y"), p(&r, "x*z")], p(&r, "y")),
        (vec![p(&r, "x^3 + y^3")], p(&r, "x + y")),
        (vec![p(&r, "(x + y)^2 * z")], p(&r, "x*z + y*z")),
        (vec![p(&r, "x^2 + y^2")], p(&r, "x")),
    ];
    for (gens, f) in fixtures {
        let in_radical = radical_member(&f, &gens, None).unwrap();
        let gb = groebner(&gens, MonomialOrder::Grevlex).unwrap();
        let mut power_in = false;
        let mut acc = Polynomial::one(&r);
        for _k in 1..=8 {
            acc = acc.mul(&f);
            if ideal_member(&acc, &gb).unwrap().0 {
                power_in = true;
                break;
            }
        }
        assert_eq!(
            in_radical, power_in,
            "Rabinowitsch disagreement for f = {} modulo {:?}",
            f,
            gens.iter().map(|g| g.to_string()).collect::<Vec<_>>()
        );
    }
}

/// The elimination-of-radical consequence: for P depending on x1 with
/// leading coefficient a non-zero-divisor modulo the radical ideal
/// (Q_1, ..., Q_k) in the remaining variables, the elimination ideal of
/// (P, Q_1, ..., Q_k) with respect to x1 is contained in (Q_1, ..., Q_k),
/// and radical members free of x1 are actual members.
#[test]
fn principal_elimination_consequence() {
    let r = RingContext::standard(&["x1", "y1", "y2"], FieldDescriptor::Rationals);
    // Q = y1*y2 is radical (squarefree); P = x1^2 + y1 has leading
    // coefficient 1 in x1.
    let q = p(&r, "y1*y2");
    let pp = p(&r, "x1^2 + y1");
    let elim = eliminate(&[pp.clone(), q.clone()], &[0]).unwrap();
    let gbq = groebner(std::slice::from_ref(&q), MonomialOrder::Grevlex).unwrap();
    for b in elim.basis() {
        let lifted = b.transfer(&r).unwrap();
        assert!(
            ideal_member(&lifted, &gbq).unwrap().0,
            "elimination ideal escaped (Q): {}",
            b
        );
    }
    // random h in K[y1, y2]: h in rad(P, Q) implies h in (Q)
    let mut rng = SplitMix64::new(61);
    let mut tested = 0;
    while tested < 40 {
        let mut terms = Vec::new();
        for _ in 0..1 + rng.below(3) {
            let e1 = rng.below(3) as u32;
            let e2 = rng.below(3) as u32;
            terms.push((
                rsg_core::poly::Monomial::new(vec![0, e1, e2], &r),
                Scalar::from_int(FieldDescriptor::Rationals, rng.range_inclusive(-2, 2)),
            ));
        }
        let h = Polynomial::from_terms(&r, terms);
        if h.is_zero() {
            continue;
        }
        tested += 1;
        if radical_member(&h, &[pp.clone(), q.clone()], None).unwrap() {
            assert!(
                ideal_member(&h, &gbq).unwrap().0,
                "h = {} in rad(P, Q) but not in (Q)",
                h
            );
        }
    }
}

/// Transfer principle on variable subalgebras: when A = K[subset of the
/// variables], radical membership of an A-element in an A-ideal computed in
/// the big ring agrees with the computation in the restricted ring.
#[test]
fn transfer_principle_on_variable_subrings() {
    let big = RingContext::standard(&["x", "y", "z", "w"], FieldDescriptor::Rationals);
    let small = RingContext::standard(&["x", "y"], FieldDescriptor::Rationals);
    let fixtures: Vec<(Vec<&str>, &str)> = vec![
        (vec!["x^2"], "x"),
        (vec!["x*y"], "x"),
        (vec!["x^2 - y^2", "x*y"], "x + y"),
        (vec!["x^2 + y^2"], "y"),
        (vec!["x^3", "y^2"], "x*y"),
    ];
    for (gens, cand) in fixtures {
        let gens_big: Vec<Polynomial> = gens.iter().map(|s| p(&big, s)).collect();
        let gens_small: Vec<Polynomial> = gens.iter().map(|s| p(&small, s)).collect();
        let in_big = radical_member(&p(&big, cand), &gens_big, None).unwrap();
        let in_small = radical_member(&p(&small, cand), &gens_small, None).unwrap();
        assert_eq!(
            in_big, in_small,
            "transfer principle failed for {} modulo {:?}",
            cand, gens
        );
    }
}

/// Elimination of x from (x^2 - y, y^2 - x), cross-checked against the
/// plain lex route.
#[test]
fn elimination_matches_lex_route() {
    let r = RingContext::standard(&["x", "y"], FieldDescriptor::Rationals);
    let gens = [p(&r, "x^2 - y"), p(&r, "y^2 - x")];
    // lex x > y basis contains x - y^2 and y^4 - y
    let gb_lex = groebner(&gens, MonomialOrder::Lex).unwrap();
    let y_only: Vec<&Polynomial> = gb_lex
        .basis()
        .iter()
        .filter(|b| !b.depends_on(0))
        .collect();
    assert_eq!(y_only.len(), 1);
    assert_eq!(y_only[0].to_string(), "y^4 - y");
    let elim = eliminate(&gens, &[0]).unwrap();
    assert_eq!(elim.basis().len(), 1);
    assert_eq!(elim.basis()[0].to_string(), "y^4 - y");
}

/// Normal-form reduction is idempotent.
#[test]
fn reduction_is_idempotent() {
    let r = RingContext::standard(&["x", "y", "z"], FieldDescriptor::Rationals);
    let gens = [p(&r, "x^2 - y*z"), p(&r, "x*y - z^2"), p(&r, "y^2 - x*z")];
    let gb = groebner(&gens, MonomialOrder::Grevlex).unwrap();
    let mut rng = SplitMix64::new(103);
    for _ in 0..40 {
        let mut terms = Vec::new();
        for _ in 0..1 + rng.below(5) {
            let exps: Vec<u32> = (0..3).map(|_| rng.below(4) as u32).collect();
            terms.push((
                rsg_core::poly::Monomial::new(exps, &r),
                Scalar::from_int(FieldDescriptor::Rationals, rng.range_inclusive(-3, 3)),
            ));
        }
        let f = Polynomial::from_terms(&r, terms);
        let nf = gb.normal_form(&f);
        assert_eq!(gb.normal_form(&nf), nf, "reduce must be idempotent");
        // and the certificate reconstructs f
        let (nf2, quots) = gb.normal_form_with_quotients(&f);
        let mut acc = nf2.clone();
        for (q, b) in quots.iter().zip(gb.basis()) {
            acc = acc.add(&q.mul(b));
        }
        assert_eq!(acc, f);
    }
}

/// The engine is exact over cyclotomic coefficient fields: membership and
/// radical membership over Q(i).
#[test]
fn groebner_over_gaussian_rationals() {
    use rsg_core::scalar::Scalar;
    let d4 = FieldDescriptor::cyclotomic(4);
    let r = RingContext::standard(&["x", "y"], d4);
    let i = Polynomial::constant(&r, Scalar::zeta(d4).unwrap());
    let x = p(&r, "x");
    let y = p(&r, "y");
    // (x + iy)(x - iy) = x^2 + y^2
    let f = x.add(&i.mul(&y));
    let g = x.sub(&i.mul(&y));
    let q = p(&r, "x^2 + y^2");
    assert_eq!(f.mul(&g), q);
    let gb = groebner(&[f.clone(), g.clone()], MonomialOrder::Grevlex).unwrap();
    // the ideal (x + iy, x - iy) = (x, y)
    assert!(ideal_member(&x, &gb).unwrap().0);
    assert!(ideal_member(&y, &gb).unwrap().0);
    assert!(gb.spoly_check());
    // x lies in rad(x^2 + y^2, x*y): the variety is the origin over Q-bar
    assert!(radical_member(&x, &[q, p(&r, "x*y")], None).unwrap());
}

/// The discriminant criterion under a nonstandard grading: weights make
/// z^2 - x^2*y^2 homogeneous of degree 4 with deg(z) = 2.
#[test]
fn discriminant_criterion_with_weights() {
    use rsg_core::ideal::{discriminant_radicality, DiscriminantVerdict};
    let ring = RingContext::new(
        vec!["z".into(), "x".into(), "y".into()],
        Some(vec![2, 1, 1]),
        FieldDescriptor::Rationals,
    )
    .unwrap();
    let pp = p(&ring, "z^2 - x^2*y^2");
    assert_eq!(pp.homogeneous_degree(), Some(4));
    let q = p(&ring, "x - y");
    match discriminant_radicality(&pp, &q, &[0], &[1, 2]).unwrap() {
        DiscriminantVerdict::Radical { z_vars, .. } => assert_eq!(z_vars, vec!["z"]),
        other => panic!("expected Radical, got {:?}", other),
    }
    // and the certified pair really is radical: every small radical member
    // is an actual member
    let gens = [pp.clone(), q.clone()];
    let gb = groebner(&gens, MonomialOrder::Grevlex).unwrap();
    for cand in ["z - x^2", "z + x^2", "x - y", "z*x - z*y"] {
        let c = p(&ring, cand);
        if radical_member(&c, &gens, None).unwrap() {
            assert!(
                ideal_member(&c, &gb).unwrap().0,
                "radical member {} must be an ideal member in a radical pair",
                cand
            );
        }
    }
}

/// Classic zero-dimensional cross-check: cyclic-3 has a six-dimensional
/// quotient algebra.
#[test]
fn cyclic3_quotient_dimension() {
    let r = RingContext::standard(&["x", "y", "z"], FieldDescriptor::Rationals);
    let gens = [
        p(&r, "x + y + z"),
        p(&r, "x*y + y*z + z*x"),
        p(&r, "x*y*z - 1"),
    ];
    let gb = groebner(&gens, MonomialOrder::Grevlex).unwrap();
    assert!(gb.spoly_check());
    assert_eq!(rsg_core::ideal::krull_dimension(&gb).unwrap(), 0);
    assert_eq!(gb.quotient_vector_dimension(), Some(6));
    // positive-dimensional ideals have no finite staircase
    let gb2 = groebner(&[p(&r, "x*y")], MonomialOrder::Grevlex).unwrap();
    assert_eq!(gb2.quotient_vector_dimension(), None);
    // the same count under the lex order
    let gb_lex = groebner(&gens, MonomialOrder::Lex).unwrap();
    assert_eq!(gb_lex.quotient_vector_dimension(), Some(6));
}

/// Ideal equality between input and basis: every generator reduces to zero
/// against the reduced basis, and every basis element reconstructs from its
/// cofactor record.
#[test]
fn basis_and_generators_present_the_same_ideal() {
    let r = RingContext::standard(&["x", "y", "z"], FieldDescriptor::Rationals);
    let mut rng = SplitMix64::new(107);
    for _ in 0..25 {
        let mut gens = Vec::new();
        for _ in 0..2 + rng.below(2) {
            let mut terms = Vec::new();
            for _ in 0..1 + rng.below(4) {
                let exps: Vec<u32> = (0..3).map(|_| rng.below(3) as u32).collect();
                terms.push((
                    rsg_core::poly::Monomial::new(exps, &r),
                    Scalar::from_int(FieldDescriptor::Rationals, rng.range_inclusive(-2, 2)),
                ));
            }
            let g = Polynomial::from_terms(&r, terms);
            if !g.is_zero() {
                gens.push(g);
            }
        }
        if gens.is_empty() {
            continue;
        }
        let gb = groebner(&gens, MonomialOrder::Grevlex).unwrap();
        for g in &gens {
            assert!(
                gb.normal_form(g).is_zero(),
                "generator {} must reduce to zero against the basis",
                g
            );
        }
        for (i, b) in gb.basis().iter().enumerate() {
            let cof = gb.cofactors(i).expect("cofactors recorded");
            let mut acc = Polynomial::zero(&r);
            for (c, g) in cof.iter().zip(&gens) {
                acc = acc.add(&c.mul(g));
            }
            assert_eq!(&acc, b, "cofactor record must reconstruct basis element");
        }
    }
}
