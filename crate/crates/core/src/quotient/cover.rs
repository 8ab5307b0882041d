//! Covering-space selection for the degree-reduction pipeline: pick the
//! top-degree forms with the smallest Fspan neighborhoods and span them
//! together with the distinguished form. The caller still verifies the
//! covering postcondition directly; this is a heuristic, not a certificate.

use crate::ideal::IdealError;
use crate::poly::{span_dimension, GradedVectorSpace, Polynomial};
use crate::sg::{fspan_of, ConfigKind, SGConfig};

/// Suggest a covering space for one pipeline step: the distinguished form z
/// together with `extra + 1` top-degree forms chosen by ascending Fspan
/// size (ties by index), skipping linearly dependent picks.
pub fn suggest_covering_space(
    config: &SGConfig,
    extra: usize,
) -> Result<GradedVectorSpace, IdealError> {
    if config.kind != ConfigKind::General {
        return Err(IdealError::BadInput(
            "covering suggestion takes a general configuration".into(),
        ));
    }
    let z = config
        .z
        .as_ref()
        .ok_or_else(|| IdealError::BadInput("configuration lacks z".into()))?;
    let d = config
        .max_residual_degree()
        .ok_or_else(|| IdealError::BadInput("empty configuration".into()))?;
    let top: Vec<usize> = (0..config.forms.len())
        .filter(|&k| config.forms[k].homogeneous_degree() == Some(d))
        .collect();
    let mut ranked: Vec<(usize, usize)> = Vec::with_capacity(top.len());
    for &k in &top {
        ranked.push((fspan_of(config, k)?.len(), k));
    }
    ranked.sort();
    let mut basis: Vec<Polynomial> = vec![z.clone()];
    for &(_, k) in &ranked {
        if basis.len() >= extra + 2 {
            break;
        }
        let mut with = basis.clone();
        with.push(config.forms[k].clone());
        if span_dimension(&with)? > basis.len() {
            basis.push(config.forms[k].clone());
        }
    }
    GradedVectorSpace::new(config.ring(), basis).map_err(IdealError::Poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::QuotientContext;
    use crate::poly::{parse_polynomial, RingContext};
    use crate::scalar::FieldDescriptor;

    #[test]
    fn picks_z_plus_smallest_fspan_forms() {
        // three pencil quadrics (mutual Fspan of size 2) and one outsider
        // (empty Fspan): the outsider ranks first
        let base = RingContext::standard(&["x", "y", "w"], FieldDescriptor::Rationals);
        let ring = base.extend("zc").unwrap();
        let z = parse_polynomial("zc", &ring).unwrap();
        let q1 = parse_polynomial("x^2 + y*w", &ring).unwrap();
        let q2 = parse_polynomial("y^2 + x*w", &ring).unwrap();
        let q3 = q1.add(&q2);
        let outsider = parse_polynomial("w^2 - x*y", &ring).unwrap();
        let config = SGConfig::general(
            QuotientContext::polynomial_ring(&ring),
            z,
            vec![q1, q2, q3, outsider.clone()],
            2,
        );
        let cover = suggest_covering_space(&config, 0).unwrap();
        assert_eq!(cover.dim(), 2);
        assert!(cover.basis().iter().any(|b| b.is_associate(&outsider)));
    }

    #[test]
    fn suggestion_feeds_the_pipeline() {
        // for the m=4 recursive configuration a two-extra suggestion picks
        // the lone top form plus lower machinery still must be supplied by
        // the caller; here the suggestion alone covers since F_4 itself is
        // chosen
        let r = RingContext::standard(&["x", "y", "z"], FieldDescriptor::Rationals);
        let basic = SGConfig::basic(
            QuotientContext::polynomial_ring(&r),
            vec![
                parse_polynomial("x", &r).unwrap(),
                parse_polynomial("y", &r).unwrap(),
                parse_polynomial("x*z + y^2", &r).unwrap(),
                parse_polynomial("x*(x*z + y^2) + y^3", &r).unwrap(),
            ],
            3,
        );
        let general = basic.embed_basic(Some("zc")).unwrap();
        let cover = suggest_covering_space(&general, 0).unwrap();
        // z plus the single top-degree form
        assert_eq!(cover.dim(), 2);
        let outcome = crate::quotient::degree_reduce_pipeline(&general, &cover, 42).unwrap();
        assert!(outcome.trace.max_degree_after < outcome.trace.max_degree_before);
    }
}
