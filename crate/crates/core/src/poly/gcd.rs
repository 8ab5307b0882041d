//! Multivariate GCD by recursive content / primitive-part reduction to a
//! univariate subresultant remainder sequence. No factorization involved.

use super::{Monomial, PolyError, Polynomial};
use crate::scalar::Scalar;

/// GCD of two polynomials in the same ring, normalized so the grevlex
/// leading coefficient is 1. `gcd(f, 0) = f` normalized; both zero is an
/// error.
pub fn poly_gcd(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, PolyError> {
    if !super::RingContext::same_ring(f.ring(), g.ring()) {
        return Err(PolyError::RingMismatch);
    }
    if f.is_zero() && g.is_zero() {
        return Err(PolyError::ZeroInput("poly_gcd"));
    }
    Ok(gcd_impl(f, g).normalize_monic())
}

fn gcd_impl(f: &Polynomial, g: &Polynomial) -> Polynomial {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    if f.is_constant() || g.is_constant() {
        return Polynomial::one(f.ring());
    }
    let vf = f.support_vars();
    let vg = g.support_vars();
    let common: Vec<usize> = vf.iter().copied().filter(|v| vg.contains(v)).collect();
    if common.is_empty() {
        // Nonconstant with disjoint supports: any common divisor is constant.
        return Polynomial::one(f.ring());
    }
    let main = common[0];
    let (cont_f, pp_f) = content_primitive(f, main);
    let (cont_g, pp_g) = content_primitive(g, main);
    let cont = gcd_impl(&cont_f, &cont_g);
    let prs = subresultant_gcd(&pp_f, &pp_g, main);
    let (_, pp) = content_primitive(&prs, main);
    cont.mul(&pp)
}

/// Split `f` into (content, primitive part) with respect to `var`: the
/// content is the GCD of the coefficients of the powers of `var`.
fn content_primitive(f: &Polynomial, var: usize) -> (Polynomial, Polynomial) {
    let coeffs = f.coeffs_in_var(var);
    let mut cont = Polynomial::zero(f.ring());
    for c in &coeffs {
        if c.is_zero() {
            continue;
        }
        cont = gcd_impl(&cont, c);
        if cont.is_constant() {
            break;
        }
    }
    if cont.is_constant() {
        return (Polynomial::one(f.ring()), f.clone());
    }
    let pp = f.div_exact(&cont).expect("content divides");
    (cont, pp)
}

/// Leading coefficient of `f` viewed as univariate in `var`.
fn lead_coeff_in(f: &Polynomial, var: usize) -> Polynomial {
    let d = f.degree_in(var).unwrap_or(0);
    let mut terms = Vec::new();
    for (m, c) in f.terms() {
        if m.exp(var) == d {
            let mut exps = m.exps().to_vec();
            exps[var] = 0;
            terms.push((Monomial::new(exps, f.ring()), c.clone()));
        }
    }
    Polynomial::from_terms(f.ring(), terms)
}

fn var_power(f: &Polynomial, var: usize, e: u32) -> Polynomial {
    let ring = f.ring();
    let mut exps = vec![0u32; ring.nvars()];
    exps[var] = e;
    Polynomial::monomial(
        ring,
        Monomial::new(exps, ring),
        Scalar::one(ring.field()),
    )
}

/// Standard pseudo-remainder: returns `r` with
/// `lc(g)^(deg f - deg g + 1) * f = q*g + r` and `deg_var r < deg_var g`.
fn pseudo_rem(f: &Polynomial, g: &Polynomial, var: usize) -> Polynomial {
    let n = g.degree_in(var).unwrap_or(0);
    let lc_g = lead_coeff_in(g, var);
    let mut r = f.clone();
    let mut e: i64 = f.degree_in(var).unwrap_or(0) as i64 - n as i64 + 1;
    while !r.is_zero() && r.degree_in(var).unwrap_or(0) >= n {
        let k = r.degree_in(var).unwrap();
        let lc_r = lead_coeff_in(&r, var);
        let shift = var_power(&r, var, k - n);
        r = r.mul(&lc_g).sub(&lc_r.mul(&shift).mul(g));
        e -= 1;
    }
    // Bring the multiplier up to the full power so the subresultant
    // divisors stay exact.
    for _ in 0..e.max(0) {
        r = r.mul(&lc_g);
    }
    r
}

/// Subresultant polynomial remainder sequence; returns the last nonzero
/// remainder (a GCD of the primitive inputs up to content in `var`).
fn subresultant_gcd(f: &Polynomial, g: &Polynomial, var: usize) -> Polynomial {
    let ring = f.ring();
    let one = Polynomial::one(ring);
    let (mut a, mut b) = if f.degree_in(var).unwrap_or(0) >= g.degree_in(var).unwrap_or(0) {
        (f.clone(), g.clone())
    } else {
        (g.clone(), f.clone())
    };
    if b.is_zero() {
        return a;
    }
    let mut deg_a = a.degree_in(var).unwrap_or(0);
    let mut deg_b = b.degree_in(var).unwrap_or(0);
    // g2 = prem(a, b) / (-1)^(d+1), then the Brown-Traub recurrences.
    let mut h = one.clone();
    let mut lead = one.clone();
    loop {
        if b.is_zero() {
            return a;
        }
        if deg_b == 0 {
            // a nonzero element independent of var divides nothing further
            return b;
        }
        let delta = deg_a - deg_b;
        let rem = pseudo_rem(&a, &b, var);
        if rem.is_zero() {
            return b;
        }
        // divisor = lead * h^delta  (Brown-Traub), with sign folded in
        let mut divisor = lead.clone();
        for _ in 0..delta {
            divisor = divisor.mul(&h);
        }
        let sign_neg = true; // prem convention makes each divisor -lead*h^delta
        let mut next = rem
            .div_exact(&divisor)
            .expect("subresultant divisor must divide exactly");
        if sign_neg {
            next = next.neg();
        }
        lead = lead_coeff_in(&b, var);
        // h = lead^delta * h^(1-delta), kept exact via the two directions
        h = if delta == 0 {
            h
        } else {
            let mut num = lead.clone();
            for _ in 1..delta {
                num = num.mul(&lead);
            }
            if delta > 1 {
                let mut den = h.clone();
                for _ in 2..delta {
                    den = den.mul(&h);
                }
                num.div_exact(&den).expect("h update exact")
            } else {
                num
            }
        };
        a = b;
        deg_a = deg_b;
        b = next;
        deg_b = b.degree_in(var).unwrap_or(0);
        if b.is_zero() {
            return a;
        }
        if !b.depends_on(var) {
            // Nonzero remainder of degree 0 in var: the inputs are coprime
            // as univariate polynomials in var.
            return b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, RingContext, RingRef};
    use crate::scalar::FieldDescriptor;

    fn ring() -> RingRef {
        RingContext::standard(&["x", "y", "z"], FieldDescriptor::Rationals)
    }

    fn p(r: &RingRef, s: &str) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let g = poly_gcd(&p(&r, "x^2 - y^2"), &p(&r, "x^2 + 2*x*y + y^2")).unwrap();
        assert_eq!(g, p(&r, "x + y"));
    }

    #[test]
    fn gcd_with_zero_normalizes() {
        let r = ring();
        let f = p(&r, "2*x + 2*y");
        assert_eq!(poly_gcd(&f, &Polynomial::zero(&r)).unwrap(), p(&r, "x + y"));
        assert!(poly_gcd(&Polynomial::zero(&r), &Polynomial::zero(&r)).is_err());
    }

    #[test]
    fn coprime_inputs() {
        let r5 = RingContext::standard(
            &["x1", "x2", "x3", "x4", "x5"],
            FieldDescriptor::Rationals,
        );
        let g = poly_gcd(
            &parse_polynomial("x1*x2 + x5^2", &r5).unwrap(),
            &parse_polynomial("x3*x4", &r5).unwrap(),
        )
        .unwrap();
        assert!(g.is_one());
    }

    #[test]
    fn univariate_euclidean_case() {
        let r = ring();
        let f = p(&r, "x^4 - 1");
        let g = p(&r, "x^2 - 1");
        assert_eq!(poly_gcd(&f, &g).unwrap(), p(&r, "x^2 - 1"));
    }

    #[test]
    fn gcd_divides_both_and_cofactors_coprime() {
        use crate::util::SplitMix64;
        let r = ring();
        let mut rng = SplitMix64::new(17);
        let rand_poly = |rng: &mut SplitMix64, maxdeg: u64| loop {
            let mut terms = Vec::new();
            for _ in 0..1 + rng.below(3) {
                let mut exps = vec![0u32; 3];
                let mut left = maxdeg;
                for e in exps.iter_mut() {
                    *e = rng.below(left + 1) as u32;
                    left -= *e as u64;
                }
                terms.push((
                    Monomial::new(exps, &r),
                    Scalar::from_int(FieldDescriptor::Rationals, rng.range_inclusive(-3, 3)),
                ));
            }
            let q = Polynomial::from_terms(&r, terms);
            if !q.is_zero() {
                return q;
            }
        };
        for _ in 0..500 {
            let a = rand_poly(&mut rng, 2);
            let b = rand_poly(&mut rng, 2);
            let c = rand_poly(&mut rng, 2);
            let f = a.mul(&c);
            let g = b.mul(&c);
            let d = poly_gcd(&f, &g).unwrap();
            assert!(d.divides(&f), "gcd must divide f");
            assert!(d.divides(&g), "gcd must divide g");
            // c divides the gcd
            assert!(c.divides(&f.div_exact(&d).unwrap().mul(&d)));
            let cf = f.div_exact(&d).unwrap();
            let cg = g.div_exact(&d).unwrap();
            let dd = poly_gcd(&cf, &cg).unwrap();
            assert!(dd.is_one(), "cofactors must be coprime, got {}", dd);
        }
    }
}
