//! Pushing configurations through general quotients and the one-step
//! degree-reduction pipeline.

use super::map::GeneralQuotientMap;
use crate::ideal::{groebner_opts, ideal_member, IdealError, MonomialOrder};
use crate::poly::{is_squarefree, squarefree_part, Polynomial};
use crate::scalar::Scalar;
use crate::sg::{potential, ConfigKind, SGConfig};

/// Why a push attempt must be retried with fresh scalars.
#[derive(Clone, Debug)]
pub enum PushError {
    NotGeneral(String),
    Ideal(IdealError),
    Precondition(String),
}

impl std::fmt::Display for PushError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PushError::NotGeneral(m) => write!(f, "scalars not general: {}", m),
            PushError::Ideal(e) => write!(f, "{}", e),
            PushError::Precondition(m) => write!(f, "{}", m),
        }
    }
}

impl From<IdealError> for PushError {
    fn from(e: IdealError) -> Self {
        PushError::Ideal(e)
    }
}

#[derive(Clone, Debug)]
pub struct PushOutcome {
    pub config: SGConfig,
    /// Indices of output forms whose squarefreeness could not be certified
    /// (proper quotient ambients only).
    pub uncertified: Vec<usize>,
}

/// Divide out the largest power of the fresh variable from a target-ring
/// representative: returns (k, h) with `image ≡ fresh^k * h` and `h` not
/// divisible by the fresh variable in the quotient.
fn strip_fresh_power(
    map: &GeneralQuotientMap,
    image: &Polynomial,
) -> Result<(u32, Polynomial), IdealError> {
    let fresh = map.fresh_poly();
    let target = map.target();
    let mut k = 0u32;
    let mut h = target.normal_form(image);
    loop {
        if h.is_zero() {
            return Ok((k, h));
        }
        // term-wise division by the variable: h = q*fresh + r with r the
        // fresh-free terms; h divisible by fresh in the quotient iff r ≡ 0
        let (q, r) = h.div_rem(&fresh);
        if target.is_zero(&r) {
            h = target.normal_form(&q);
            k += 1;
        } else {
            return Ok((k, h));
        }
    }
}

/// Push a general configuration through the map: images are reduced
/// (squarefree parts; powers of the fresh variable stripped to a single
/// factor), associates are deduplicated, and the fresh variable becomes the
/// distinguished linear form of the output.
pub fn push_config(
    map: &GeneralQuotientMap,
    config: &SGConfig,
) -> Result<PushOutcome, PushError> {
    if config.kind != ConfigKind::General {
        return Err(PushError::Precondition(
            "push_config takes a general configuration".into(),
        ));
    }
    let z = config
        .z
        .as_ref()
        .ok_or_else(|| PushError::Precondition("configuration lacks z".into()))?;
    // z must lie in the quotient space V
    if !map.space().contains(z) {
        return Err(PushError::Precondition(format!(
            "the distinguished form `{}` does not lie in the quotient space",
            z
        )));
    }
    let fresh = map.fresh_poly();
    let target = map.target().clone();
    // image of z must be a nonzero scalar times the fresh variable
    let z_img = map.apply(z).map_err(IdealError::Poly)?;
    let z_ok = z_img.nterms() == 1
        && z_img
            .div_exact(&fresh)
            .is_some_and(|q| q.is_constant() && !q.is_zero());
    if !z_ok {
        return Err(PushError::NotGeneral(format!(
            "image of z is `{}`, not a nonzero multiple of {}",
            z_img,
            map.fresh_var()
        )));
    }

    let mut residuals: Vec<Polynomial> = Vec::new();
    let mut uncertified = Vec::new();
    for (idx, f) in config.forms.iter().enumerate() {
        let zf = z.mul(f);
        let image = map.apply(&zf).map_err(IdealError::Poly)?;
        if image.is_zero() {
            return Err(PushError::NotGeneral(format!(
                "image of z*F_{} vanished",
                idx
            )));
        }
        let reduced = if map.is_substitution() {
            // polynomial-ring target: exact squarefree part of the image
            squarefree_part(&image).map_err(|e| PushError::Ideal(e.into()))?
        } else {
            // strip fresh powers exactly, then certify the residual's
            // squarefreeness by the discriminant test on its representative
            let (k, h) = strip_fresh_power(map, &image)?;
            if k == 0 {
                return Err(PushError::NotGeneral(format!(
                    "image of z*F_{} is not divisible by the fresh variable",
                    idx
                )));
            }
            if h.is_zero() {
                // pure fresh power: reduces to the fresh variable itself
                fresh.clone()
            } else {
                let candidate = fresh.mul(&h);
                if !is_squarefree(&candidate).map_err(|e| PushError::Ideal(e.into()))? {
                    uncertified.push(idx);
                }
                candidate
            }
        };
        // split off the single fresh factor to obtain the residual
        let residual = match reduced.div_exact(&fresh) {
            Some(r) => r,
            None => {
                return Err(PushError::NotGeneral(format!(
                    "reduced image of z*F_{} lost its fresh factor",
                    idx
                )))
            }
        };
        if residual.is_constant() {
            // associate of the distinguished form itself; z is always
            // included in the output, so nothing to add
            continue;
        }
        residuals.push(residual.normalize_monic());
    }
    // deduplicate associates
    let mut unique: Vec<Polynomial> = Vec::new();
    for r in residuals {
        if !unique.iter().any(|u| u.is_associate(&r)) {
            unique.push(r);
        }
    }
    let bound = unique
        .iter()
        .filter_map(|f| f.homogeneous_degree())
        .max()
        .unwrap_or(0);
    let out = SGConfig::general(target, fresh, unique, bound.max(1));
    Ok(PushOutcome {
        config: out,
        uncertified,
    })
}

/// One pipeline step record, for the append-only trace file.
#[derive(Clone, Debug)]
pub struct TraceStep {
    pub seed: u64,
    pub attempts: u32,
    pub alpha: Vec<Scalar>,
    pub defining_hash: u64,
    pub max_degree_before: u64,
    pub max_degree_after: u64,
    pub potential_before: u64,
    pub potential_after: u64,
    pub uncertified: Vec<usize>,
}

impl TraceStep {
    pub fn to_structured(&self) -> String {
        let alpha = self
            .alpha
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        format!(
            "step seed={} attempts={} alpha=[{}] defining={:016x} degree {} -> {} potential {} -> {} uncertified={}\n",
            self.seed,
            self.attempts,
            alpha,
            self.defining_hash,
            self.max_degree_before,
            self.max_degree_after,
            self.potential_before,
            self.potential_after,
            self.uncertified.len()
        )
    }
}

/// Outcome of one degree-reduction step.
#[derive(Clone, Debug)]
pub struct PipelineOutcome {
    pub config: SGConfig,
    pub trace: TraceStep,
}

const MAX_RESAMPLE_ATTEMPTS: u32 = 5;

/// One quotient step of the degree-reduction pipeline: the covering space
/// must contain z and its ideal must contain every top-degree form. The
/// output has strictly smaller maximum residual degree and strictly smaller
/// potential. Scalars are resampled (at most 5 times) when a genericity
/// postcondition fails.
pub fn degree_reduce_pipeline(
    config: &SGConfig,
    covering_space: &crate::poly::GradedVectorSpace,
    seed: u64,
) -> Result<PipelineOutcome, PushError> {
    if config.kind != ConfigKind::General {
        return Err(PushError::Precondition(
            "pipeline takes a general configuration".into(),
        ));
    }
    let d = config
        .max_residual_degree()
        .ok_or_else(|| PushError::Precondition("nothing to reduce: empty configuration".into()))?;
    let top: Vec<usize> = (0..config.forms.len())
        .filter(|&k| config.forms[k].homogeneous_degree() == Some(d))
        .collect();
    if top.is_empty() || config.forms.is_empty() {
        return Err(PushError::Precondition(
            "nothing to reduce: no top-degree forms".into(),
        ));
    }
    let z = config
        .z
        .as_ref()
        .ok_or_else(|| PushError::Precondition("configuration lacks z".into()))?;
    if !covering_space.contains(z) {
        return Err(PushError::Precondition(
            "covering space does not contain the distinguished form z".into(),
        ));
    }
    // F_d ⊂ (covering space), verified per top-degree form
    let mut cover_gens: Vec<Polynomial> = covering_space.basis().to_vec();
    cover_gens.extend(config.ambient.defining_basis().iter().cloned());
    let cover_gb = groebner_opts(&cover_gens, MonomialOrder::Grevlex, false)?;
    let mut uncovered = Vec::new();
    for &k in &top {
        let (member, _) = ideal_member(&config.forms[k], &cover_gb)?;
        if !member {
            uncovered.push(k);
        }
    }
    if !uncovered.is_empty() {
        return Err(PushError::Precondition(format!(
            "covering condition fails for top-degree forms {:?}",
            uncovered
        )));
    }

    let phi_before = potential(config);
    let mut last_err: Option<PushError> = None;
    for attempt in 0..MAX_RESAMPLE_ATTEMPTS {
        let attempt_seed = seed.wrapping_add(attempt as u64);
        let map = GeneralQuotientMap::with_seed(
            config.ambient.clone(),
            covering_space.clone(),
            "y",
            attempt_seed,
            16,
        )?;
        match push_config(&map, config) {
            Ok(outcome) => {
                let new_max = outcome.config.max_residual_degree().unwrap_or(0);
                let phi_after = potential(&outcome.config);
                if new_max >= d || phi_after >= phi_before {
                    last_err = Some(PushError::NotGeneral(format!(
                        "degree/potential did not drop (degree {} -> {}, potential {} -> {})",
                        d, new_max, phi_before, phi_after
                    )));
                    continue;
                }
                let trace = TraceStep {
                    seed: attempt_seed,
                    attempts: attempt + 1,
                    alpha: map.alpha().to_vec(),
                    defining_hash: {
                        let mut h = crate::util::Fnv64::new();
                        for g in map.target().defining_basis() {
                            h.write_str(&g.to_string());
                        }
                        h.finish()
                    },
                    max_degree_before: d,
                    max_degree_after: new_max,
                    potential_before: phi_before,
                    potential_after: phi_after,
                    uncertified: outcome.uncertified.clone(),
                };
                return Ok(PipelineOutcome {
                    config: outcome.config,
                    trace,
                });
            }
            Err(PushError::NotGeneral(m)) => {
                last_err = Some(PushError::NotGeneral(m));
                continue;
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or_else(|| {
        PushError::NotGeneral("resampling budget exhausted".into())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::QuotientContext;
    use crate::poly::{parse_polynomial, GradedVectorSpace, RingContext};
    use crate::scalar::FieldDescriptor;

    #[test]
    fn linear_forms_push_to_renamed_forms() {
        // config of linear residuals, V = <z_cfg>: images are the same forms
        // with z renamed
        let r = RingContext::standard(&["x", "y"], FieldDescriptor::Rationals);
        let ext = r.extend("zc").unwrap();
        let z = parse_polynomial("zc", &ext).unwrap();
        let forms = vec![
            parse_polynomial("x", &ext).unwrap(),
            parse_polynomial("y", &ext).unwrap(),
            parse_polynomial("x + y", &ext).unwrap(),
        ];
        let config = SGConfig::general(
            QuotientContext::polynomial_ring(&ext),
            z.clone(),
            forms.clone(),
            1,
        );
        let space = GradedVectorSpace::new(&ext, vec![z]).unwrap();
        let map = GeneralQuotientMap::with_seed(
            config.ambient.clone(),
            space,
            "w",
            42,
            16,
        )
        .unwrap();
        let out = push_config(&map, &config).unwrap();
        assert_eq!(out.config.forms.len(), 3);
        for (a, b) in out.config.forms.iter().zip(&forms) {
            // same polynomial once transferred (x, y survive; names differ
            // only in the fresh variable)
            assert_eq!(a.to_string(), b.normalize_monic().to_string());
        }
        assert!(out.uncertified.is_empty());
    }

    #[test]
    fn recursive_m4_pipeline_drops_degree_and_potential() {
        // basic recursive m=4 over K[x,y,z]; embed; covering <z_cfg, x, y>
        let r = RingContext::standard(&["x", "y", "z"], FieldDescriptor::Rationals);
        let f1 = parse_polynomial("x", &r).unwrap();
        let f2 = parse_polynomial("y", &r).unwrap();
        let f3 = parse_polynomial("x*z + y^2", &r).unwrap();
        let f4 = parse_polynomial("x*(x*z + y^2) + y^3", &r).unwrap();
        let basic = SGConfig::basic(
            QuotientContext::polynomial_ring(&r),
            vec![f1, f2, f3, f4],
            3,
        );
        let general = basic.embed_basic(Some("zc")).unwrap();
        let ring = general.ring().clone();
        let cover = GradedVectorSpace::new(
            &ring,
            vec![
                parse_polynomial("zc", &ring).unwrap(),
                parse_polynomial("x", &ring).unwrap(),
                parse_polynomial("y", &ring).unwrap(),
            ],
        )
        .unwrap();
        let before_phi = potential(&general);
        let out = degree_reduce_pipeline(&general, &cover, 42).unwrap();
        assert!(out.trace.max_degree_after < out.trace.max_degree_before);
        assert!(out.trace.potential_after < before_phi);
        // output re-validates as a general configuration
        let violations = out.config.validate().unwrap();
        assert!(violations.is_empty(), "violations: {:?}", violations);
    }

    #[test]
    fn pipeline_rejects_missing_z_and_uncovered_forms() {
        let r = RingContext::standard(&["x", "y"], FieldDescriptor::Rationals);
        let ext = r.extend("zc").unwrap();
        let z = parse_polynomial("zc", &ext).unwrap();
        let config = SGConfig::general(
            QuotientContext::polynomial_ring(&ext),
            z,
            vec![parse_polynomial("x^2 + y^2", &ext).unwrap()],
            2,
        );
        // covering space missing z
        let no_z = GradedVectorSpace::new(&ext, vec![parse_polynomial("x", &ext).unwrap()])
            .unwrap();
        assert!(matches!(
            degree_reduce_pipeline(&config, &no_z, 1),
            Err(PushError::Precondition(_))
        ));
        // covering space with z but not covering x^2+y^2
        let zx = GradedVectorSpace::new(
            &ext,
            vec![
                parse_polynomial("zc", &ext).unwrap(),
                parse_polynomial("x", &ext).unwrap(),
            ],
        )
        .unwrap();
        match degree_reduce_pipeline(&config, &zx, 1) {
            Err(PushError::Precondition(m)) => assert!(m.contains("covering condition")),
            other => panic!("expected covering failure, got {:?}", other.map(|_| ())),
        }
    }
}
