//! Built-in example configurations, fully materialized with the correct
//! field, ambient quotient and forms.

use rsg_core::ideal::QuotientContext;
use rsg_core::poly::{parse_polynomial, GradedVectorSpace, Polynomial, RingContext};
use rsg_core::scalar::{primitive_root_of_minus_one, FieldDescriptor, Scalar};
use rsg_core::sg::SGConfig;

#[derive(Clone, Debug)]
pub struct ExampleError(pub String);

impl std::fmt::Display for ExampleError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `3n` dual linear forms of the Fermat point configuration over the
/// cyclotomic field containing a primitive n-th root of -1.
pub fn fermat(n: u32) -> Result<SGConfig, ExampleError> {
    if !(3..=6).contains(&n) {
        return Err(ExampleError(format!(
            "fermat supports n in [3, 6], got {}",
            n
        )));
    }
    let field = FieldDescriptor::cyclotomic(2 * n);
    let ring = RingContext::standard(&["x", "y", "z"], field);
    let omega = primitive_root_of_minus_one(n, field)
        .map_err(|e| ExampleError(e.to_string()))?;
    // epsilon = omega^2 is a primitive n-th root of unity; the 3n points are
    // [0 : 1 : -eps^j], [-eps^j : 0 : 1], [1 : -eps^j : 0]. For odd n the
    // values -eps^j range over the n-th roots of -1, i.e. the powers of
    // omega that put the points on the degree-n Fermat curve.
    let eps = omega.checked_mul(&omega).unwrap();
    let x = Polynomial::var(&ring, 0);
    let y = Polynomial::var(&ring, 1);
    let z = Polynomial::var(&ring, 2);
    let mut forms = Vec::with_capacity(3 * n as usize);
    for j in 1..=n as u64 {
        let c = eps.pow(j).neg();
        forms.push(y.add(&z.mul_scalar(&c)));
        forms.push(x.mul_scalar(&c).add(&z));
        forms.push(x.add(&y.mul_scalar(&c)));
    }
    Ok(SGConfig::basic(
        QuotientContext::polynomial_ring(&ring),
        forms,
        1,
    ))
}

/// The twelve-point configuration over Q(i), with a = (1+i)/2.
pub fn kelly_nwankpa() -> Result<SGConfig, ExampleError> {
    let field = FieldDescriptor::cyclotomic(4);
    let ring = RingContext::standard(&["x", "y", "z"], field);
    let i = Scalar::zeta(field).map_err(|e| ExampleError(e.to_string()))?;
    let one = Scalar::one(field);
    let half = Scalar::from_fraction(field, 1, 2);
    let a = one.checked_add(&i).unwrap().checked_mul(&half).unwrap();
    let b = one.checked_sub(&i).unwrap().checked_mul(&half).unwrap();
    let zero = Scalar::zero(field);
    let points: Vec<[Scalar; 3]> = vec![
        [zero.clone(), zero.clone(), one.clone()],
        [zero.clone(), one.clone(), one.clone()],
        [one.clone(), zero.clone(), one.clone()],
        [one.clone(), one.clone(), one.clone()],
        [a.clone(), a.clone(), one.clone()],
        [a.clone(), b.clone(), one.clone()],
        [b.clone(), a.clone(), one.clone()],
        [b.clone(), b.clone(), one.clone()],
        // intersections with the line at infinity of the lines through p1
        // and p2, p3, [1:i:1], [1:-i:1]
        [zero.clone(), one.clone(), zero.clone()],
        [one.clone(), zero.clone(), zero.clone()],
        [one.clone(), i.clone(), zero.clone()],
        [one.clone(), i.neg(), zero.clone()],
    ];
    let forms = points
        .into_iter()
        .map(|[px, py, pz]| {
            Polynomial::var(&ring, 0)
                .mul_scalar(&px)
                .add(&Polynomial::var(&ring, 1).mul_scalar(&py))
                .add(&Polynomial::var(&ring, 2).mul_scalar(&pz))
        })
        .collect();
    Ok(SGConfig::basic(
        QuotientContext::polynomial_ring(&ring),
        forms,
        1,
    ))
}

/// The recursive higher-degree configuration in K[x, y, z]:
/// `F_1 = x`, `F_2 = y`, `F_3 = xz + y^2`, `F_4 = x F_3 + y^3`, and
/// `F_k = F_3 ... F_{k-1} + y^(sum of their degrees)` for k >= 5.
pub fn recursive(m: u32) -> Result<SGConfig, ExampleError> {
    if !(4..=8).contains(&m) {
        return Err(ExampleError(format!(
            "recursive supports m in [4, 8], got {}",
            m
        )));
    }
    let ring = RingContext::standard(&["x", "y", "z"], FieldDescriptor::Rationals);
    let y = Polynomial::var(&ring, 1);
    let mut forms = vec![
        parse_polynomial("x", &ring).unwrap(),
        parse_polynomial("y", &ring).unwrap(),
        parse_polynomial("x*z + y^2", &ring).unwrap(),
        parse_polynomial("x*(x*z + y^2) + y^3", &ring).unwrap(),
    ];
    for _k in 5..=m {
        let mut prod = Polynomial::one(&ring);
        let mut degsum = 0u32;
        for f in &forms[2..] {
            prod = prod.mul(f);
            degsum += f.degree().unwrap() as u32;
        }
        forms.push(prod.add(&y.pow(degsum)));
    }
    forms.truncate(m as usize);
    let bound = forms.iter().filter_map(|f| f.degree()).max().unwrap();
    Ok(SGConfig::basic(
        QuotientContext::polynomial_ring(&ring),
        forms,
        bound,
    ))
}

/// The degree-1 configuration in the quotient by the cyclic binomial
/// quadrics `H_i = x_i x_{i+1} - x_{i+2}^2`: verification passes but the
/// span of the lifted representatives is r, not the r-1 stated in the
/// source example; the report carries the discrepancy note.
pub fn quotient_counter(r: u32) -> Result<SGConfig, ExampleError> {
    if !(3..=6).contains(&r) {
        return Err(ExampleError(format!(
            "quotient-counter supports r in [3, 6], got {}",
            r
        )));
    }
    let n = 2 * r as usize;
    let vars: Vec<String> = (1..=n).map(|i| format!("x{}", i)).collect();
    let ring = RingContext::new(vars, None, FieldDescriptor::Rationals)
        .map_err(|e| ExampleError(e.to_string()))?;
    let mut defs = Vec::with_capacity(n);
    for i in 0..n {
        let xi = Polynomial::var(&ring, i);
        let xi1 = Polynomial::var(&ring, (i + 1) % n);
        let xi2 = Polynomial::var(&ring, (i + 2) % n);
        defs.push(xi.mul(&xi1).sub(&xi2.mul(&xi2)));
    }
    let space = GradedVectorSpace::new(&ring, defs).map_err(|e| ExampleError(e.to_string()))?;
    let ambient = QuotientContext::new(space).map_err(|e| ExampleError(e.to_string()))?;
    let forms: Vec<Polynomial> = (0..r as usize)
        .map(|k| Polynomial::var(&ring, 2 * k))
        .collect();
    let mut config = SGConfig::basic(ambient, forms, 1);
    config.notes.push(format!(
        "stated span is r-1 = {}; computed span of lifted representatives is r = {}",
        r - 1,
        r
    ));
    Ok(config)
}

/// The UFD quadric fixture: in S/(x1*x2 + x3*x4 + x5^2) the form x5 lies in
/// rad(x1, x3) but not in the linear span of x1, x3. The three forms are
/// not a full SG configuration (two pairs lack witnesses) and verification
/// reports that honestly.
pub fn ufd_quadric() -> Result<SGConfig, ExampleError> {
    let ring = RingContext::standard(
        &["x1", "x2", "x3", "x4", "x5", "x6", "x7"],
        FieldDescriptor::Rationals,
    );
    let f = parse_polynomial("x1*x2 + x3*x4 + x5^2", &ring).unwrap();
    let space = GradedVectorSpace::new(&ring, vec![f]).map_err(|e| ExampleError(e.to_string()))?;
    let ambient = QuotientContext::new(space).map_err(|e| ExampleError(e.to_string()))?;
    let forms = vec![
        Polynomial::var(&ring, 0),
        Polynomial::var(&ring, 2),
        Polynomial::var(&ring, 4),
    ];
    let mut config = SGConfig::basic(ambient, forms, 1);
    config.notes.push(
        "radical-membership fixture: x5 lies in rad(x1, x3) but outside span(x1, x3); \
         the pair condition fails for the other two pairs"
            .to_string(),
    );
    Ok(config)
}

/// Dispatch by example name.
pub fn builtin_example(name: &str, param: Option<u32>) -> Result<SGConfig, ExampleError> {
    match name {
        "fermat" => fermat(param.ok_or_else(|| ExampleError("fermat needs --n".into()))?),
        "kelly-nwankpa" => kelly_nwankpa(),
        "recursive" => {
            recursive(param.ok_or_else(|| ExampleError("recursive needs --m".into()))?)
        }
        "quotient-counter" => {
            quotient_counter(param.ok_or_else(|| ExampleError("quotient-counter needs --r".into()))?)
        }
        "ufd-quadric" => ufd_quadric(),
        other => Err(ExampleError(format!(
            "unknown example `{}`; available: fermat, kelly-nwankpa, recursive, quotient-counter, ufd-quadric",
            other
        ))),
    }
}
