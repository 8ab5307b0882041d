//! The graded quotient map determined by a vector space basis, generic
//! scalars and a fresh variable: kill each `F_i - alpha_i * z^deg(F_i)`.

use crate::ideal::{IdealError, QuotientContext};
use crate::poly::{GradedVectorSpace, PolyError, Polynomial};
use crate::scalar::Scalar;
use crate::util::SplitMix64;
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Clone, Debug)]
pub struct GeneralQuotientMap {
    source: QuotientContext,
    space: GradedVectorSpace,
    fresh: String,
    alpha: Vec<Scalar>,
    seed: u64,
    target: QuotientContext,
    /// Set when every basis element is a scalar multiple of a distinct
    /// variable and the source is a polynomial ring; the target is then a
    /// polynomial subring and reductions are exact.
    substitution: bool,
}

/// `n` nonzero integers drawn uniformly from `[1, 2^bits]`, deterministic in
/// the seed.
pub fn sample_alpha(n: usize, seed: u64, bits: u32) -> Result<Vec<Scalar>, IdealError> {
    if n == 0 {
        return Err(IdealError::BadInput("sample_alpha needs n >= 1".into()));
    }
    if bits < 8 {
        return Err(IdealError::BadInput("sample_alpha needs bits >= 8".into()));
    }
    let mut rng = SplitMix64::new(seed);
    let bound = 1u64 << bits.min(62);
    Ok((0..n)
        .map(|_| {
            let v = 1 + rng.below(bound);
            Scalar::from_rational(
                crate::scalar::FieldDescriptor::Rationals,
                BigRational::from_integer(BigInt::from(v)),
            )
        })
        .collect())
}

impl GeneralQuotientMap {
    /// Build the map for the chosen basis and scalars. The scalars must be
    /// nonzero; their field is adapted to the ring's.
    pub fn new(
        source: QuotientContext,
        space: GradedVectorSpace,
        fresh_stem: &str,
        alpha_raw: &[Scalar],
        seed: u64,
    ) -> Result<Self, IdealError> {
        let ring = source.ring().clone();
        if space.dim() == 0 {
            return Err(IdealError::BadInput("quotient space must be nonzero".into()));
        }
        if alpha_raw.len() != space.dim() {
            return Err(IdealError::BadInput(format!(
                "need {} scalars, got {}",
                space.dim(),
                alpha_raw.len()
            )));
        }
        let field = ring.field();
        let mut alpha = Vec::with_capacity(alpha_raw.len());
        for a in alpha_raw {
            let a = a
                .embed(field)
                .map_err(|e| IdealError::BadInput(e.to_string()))?;
            if a.is_zero() {
                return Err(IdealError::BadInput(
                    "general-position scalars must be nonzero".into(),
                ));
            }
            alpha.push(a);
        }
        // the defining space must be independent together with U
        {
            let mut all: Vec<Polynomial> = source.defining_basis().to_vec();
            all.extend(space.basis().iter().cloned());
            if crate::poly::span_dimension(&all)?
                != source.defining_basis().len() + space.dim()
            {
                return Err(IdealError::BadInput(
                    "space basis is dependent modulo the defining ideal's span".into(),
                ));
            }
        }
        let fresh = ring.fresh_var(fresh_stem);
        let ext = ring
            .extend(&fresh)
            .map_err(|e| IdealError::BadInput(e.to_string()))?;
        let zvar = Polynomial::var_named(&ext, &fresh).unwrap();
        let mut defs: Vec<Polynomial> = Vec::new();
        for u in source.defining_basis() {
            defs.push(u.transfer(&ext).map_err(IdealError::Poly)?);
        }
        let mut substitution = source.is_trivial();
        for (f, a) in space.basis().iter().zip(&alpha) {
            let d = f
                .homogeneous_degree()
                .expect("graded space basis is homogeneous");
            if !is_scalar_times_variable(f) {
                substitution = false;
            }
            let lifted = f.transfer(&ext).map_err(IdealError::Poly)?;
            let zpow = zvar.pow(d as u32);
            defs.push(lifted.sub(&zpow.mul_scalar(a)));
        }
        let target_space =
            GradedVectorSpace::new(&ext, defs).map_err(IdealError::Poly)?;
        let target = QuotientContext::new(target_space)?;
        Ok(GeneralQuotientMap {
            source,
            space,
            fresh,
            alpha,
            seed,
            target,
            substitution,
        })
    }

    /// Draw the scalars from the seed and build the map.
    pub fn with_seed(
        source: QuotientContext,
        space: GradedVectorSpace,
        fresh_stem: &str,
        seed: u64,
        bits: u32,
    ) -> Result<Self, IdealError> {
        let alpha = sample_alpha(space.dim(), seed, bits)?;
        GeneralQuotientMap::new(source, space, fresh_stem, &alpha, seed)
    }

    pub fn source(&self) -> &QuotientContext {
        &self.source
    }

    pub fn target(&self) -> &QuotientContext {
        &self.target
    }

    pub fn space(&self) -> &GradedVectorSpace {
        &self.space
    }

    pub fn fresh_var(&self) -> &str {
        &self.fresh
    }

    pub fn fresh_poly(&self) -> Polynomial {
        Polynomial::var_named(self.target.ring(), &self.fresh).unwrap()
    }

    pub fn alpha(&self) -> &[Scalar] {
        &self.alpha
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn is_substitution(&self) -> bool {
        self.substitution
    }

    /// Image of a source-ring element: the normal form of its lift modulo
    /// the target's defining basis. Homogeneous of the same degree, or zero.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial, PolyError> {
        if !crate::poly::RingContext::same_ring(f.ring(), self.source.ring()) {
            return Err(PolyError::RingMismatch);
        }
        let lifted = f.transfer(self.target.ring())?;
        Ok(self.target.normal_form(&lifted))
    }
}

fn is_scalar_times_variable(f: &Polynomial) -> bool {
    f.nterms() == 1 && f.terms()[0].0.exps().iter().map(|&e| e as u64).sum::<u64>() == 1
}
