//! Sylvester-Gallai configurations: the basic form (irreducible forms in a
//! polynomial ring or quotient) and the z-augmented general form over a UFD
//! quotient, with executable validation.

use crate::ideal::{groebner_opts, ideal_member, IdealError, MonomialOrder, QuotientContext};
use crate::poly::{poly_gcd, squarefree_part, Polynomial};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConfigKind {
    Basic,
    General,
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigKind::Basic => write!(f, "basic"),
            ConfigKind::General => write!(f, "general"),
        }
    }
}

/// A radical SG configuration. For `Basic` the configuration is the form
/// list itself; for `General` the forms are the residuals `F_i` and the
/// configuration is understood as `{z, z*F_1, ..., z*F_m}`.
#[derive(Clone, Debug)]
pub struct SGConfig {
    pub ambient: QuotientContext,
    pub kind: ConfigKind,
    /// The distinguished degree-1 form of a general configuration.
    pub z: Option<Polynomial>,
    pub forms: Vec<Polynomial>,
    pub degree_bound: u64,
    /// Free-form annotations carried into reports (e.g. known
    /// stated-value discrepancies).
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub enum Violation {
    NotHomogeneous { index: usize },
    DegreeTooHigh { index: usize, degree: u64, bound: u64 },
    ZeroForm { index: usize },
    Associate { i: usize, j: usize },
    CommonFactor { i: usize, j: usize, gcd: Polynomial },
    NotSquarefree { index: usize },
    BadZ(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotHomogeneous { index } => write!(f, "form {} is not homogeneous", index),
            Violation::DegreeTooHigh { index, degree, bound } => {
                write!(f, "form {} has degree {} above the bound {}", index, degree, bound)
            }
            Violation::ZeroForm { index } => write!(f, "form {} is zero in the ambient", index),
            Violation::Associate { i, j } => {
                write!(f, "forms {} and {} are associate (one lies in the other's ideal)", i, j)
            }
            Violation::CommonFactor { i, j, gcd } => {
                write!(f, "forms {} and {} share the factor {}", i, j, gcd)
            }
            Violation::NotSquarefree { index } => {
                write!(f, "z*F_{} is not squarefree", index)
            }
            Violation::BadZ(m) => write!(f, "bad distinguished form: {}", m),
        }
    }
}

impl SGConfig {
    pub fn basic(
        ambient: QuotientContext,
        forms: Vec<Polynomial>,
        degree_bound: u64,
    ) -> Self {
        SGConfig {
            ambient,
            kind: ConfigKind::Basic,
            z: None,
            forms,
            degree_bound,
            notes: vec![],
        }
    }

    pub fn general(
        ambient: QuotientContext,
        z: Polynomial,
        forms: Vec<Polynomial>,
        degree_bound: u64,
    ) -> Self {
        SGConfig {
            ambient,
            kind: ConfigKind::General,
            z: Some(z),
            forms,
            degree_bound,
            notes: vec![],
        }
    }

    pub fn ring(&self) -> &crate::poly::RingRef {
        self.ambient.ring()
    }

    /// The elements whose span is reported: the forms themselves for basic
    /// configurations, `{z} ∪ {z*F_i}` for general ones.
    pub fn elements(&self) -> Vec<Polynomial> {
        match self.kind {
            ConfigKind::Basic => self.forms.clone(),
            ConfigKind::General => {
                let z = self.z.as_ref().expect("general config has z");
                let mut out = vec![z.clone()];
                out.extend(self.forms.iter().map(|f| z.mul(f)));
                out
            }
        }
    }

    /// Residual degree multiset: `m_j` = number of forms of degree `j`.
    pub fn degree_counts(&self) -> Vec<(u64, usize)> {
        let mut counts: std::collections::BTreeMap<u64, usize> = Default::default();
        for f in &self.forms {
            if let Some(d) = f.homogeneous_degree() {
                *counts.entry(d).or_insert(0) += 1;
            }
        }
        counts.into_iter().collect()
    }

    pub fn max_residual_degree(&self) -> Option<u64> {
        self.forms
            .iter()
            .filter_map(|f| f.homogeneous_degree())
            .max()
    }

    /// All invariant violations; empty means valid.
    pub fn validate(&self) -> Result<Vec<Violation>, IdealError> {
        let mut out = Vec::new();
        let ring = self.ring().clone();
        match self.kind {
            ConfigKind::Basic => {
                for (i, f) in self.forms.iter().enumerate() {
                    if self.ambient.is_zero(f) {
                        out.push(Violation::ZeroForm { index: i });
                        continue;
                    }
                    match f.homogeneous_degree() {
                        None => out.push(Violation::NotHomogeneous { index: i }),
                        Some(d) if d > self.degree_bound => out.push(Violation::DegreeTooHigh {
                            index: i,
                            degree: d,
                            bound: self.degree_bound,
                        }),
                        _ => {}
                    }
                }
                // pairwise non-associate: F_i not in (F_j), tested in the
                // ambient quotient; each unordered pair reported once
                for i in 0..self.forms.len() {
                    for j in i + 1..self.forms.len() {
                        let mut violated = false;
                        for (a, b) in [(i, j), (j, i)] {
                            let mut gens = vec![self.forms[b].clone()];
                            gens.extend(self.ambient.defining_basis().iter().cloned());
                            let gb = groebner_opts(&gens, MonomialOrder::Grevlex, false)?;
                            let (member, _) = ideal_member(&self.forms[a], &gb)?;
                            if member {
                                violated = true;
                                break;
                            }
                        }
                        if violated {
                            out.push(Violation::Associate { i, j });
                        }
                    }
                }
            }
            ConfigKind::General => {
                let z = match &self.z {
                    Some(z) => z.clone(),
                    None => {
                        out.push(Violation::BadZ("general configuration without z".into()));
                        return Ok(out);
                    }
                };
                if z.homogeneous_degree() != Some(1) {
                    out.push(Violation::BadZ(format!(
                        "distinguished form `{}` must be homogeneous of degree 1",
                        z
                    )));
                }
                if self.ambient.is_zero(&z) {
                    out.push(Violation::BadZ("distinguished form vanishes in the ambient".into()));
                }
                for (i, f) in self.forms.iter().enumerate() {
                    if self.ambient.is_zero(f) {
                        out.push(Violation::ZeroForm { index: i });
                        continue;
                    }
                    match f.homogeneous_degree() {
                        None => out.push(Violation::NotHomogeneous { index: i }),
                        Some(d) if d > self.degree_bound => out.push(Violation::DegreeTooHigh {
                            index: i,
                            degree: d,
                            bound: self.degree_bound,
                        }),
                        _ => {}
                    }
                    // z*F_i squarefree, checked on normal-form representatives
                    let zf = self.ambient.normal_form(&z.mul(f));
                    if !zf.is_zero() {
                        if let Ok(sf) = squarefree_part(&zf) {
                            if !sf.is_associate(&zf.normalize_monic()) {
                                out.push(Violation::NotSquarefree { index: i });
                            }
                        }
                    }
                }
                // pairwise coprime residuals, on representatives
                for i in 0..self.forms.len() {
                    for j in i + 1..self.forms.len() {
                        let a = self.ambient.normal_form(&self.forms[i]);
                        let b = self.ambient.normal_form(&self.forms[j]);
                        if a.is_zero() || b.is_zero() {
                            continue;
                        }
                        match poly_gcd(&a, &b) {
                            Ok(g) if !g.is_constant() => {
                                out.push(Violation::CommonFactor { i, j, gcd: g })
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
        let _ = ring;
        Ok(out)
    }

    /// Embed a basic configuration in `S` as the general configuration
    /// `{z, z*F_1, ..., z*F_m}` over `S[z]`. Pair verification outcomes
    /// correspond exactly.
    pub fn embed_basic(&self, z_name: Option<&str>) -> Result<SGConfig, IdealError> {
        assert_eq!(self.kind, ConfigKind::Basic, "embed_basic takes a basic config");
        let ring = self.ring().clone();
        let name = match z_name {
            Some(n) => {
                if ring.var_index(n).is_some() {
                    return Err(IdealError::BadInput(format!(
                        "variable `{}` already exists in the ring",
                        n
                    )));
                }
                n.to_string()
            }
            None => ring.fresh_var("z"),
        };
        let ext = ring.extend(&name).map_err(|e| IdealError::BadInput(e.to_string()))?;
        let z = Polynomial::var_named(&ext, &name).unwrap();
        let mut forms = Vec::with_capacity(self.forms.len());
        for f in &self.forms {
            forms.push(f.transfer(&ext).map_err(IdealError::Poly)?);
        }
        let ambient = if self.ambient.is_trivial() {
            QuotientContext::polynomial_ring(&ext)
        } else {
            let mut defs = Vec::new();
            for u in self.ambient.defining_basis() {
                defs.push(u.transfer(&ext).map_err(IdealError::Poly)?);
            }
            QuotientContext::new(
                crate::poly::GradedVectorSpace::new(&ext, defs).map_err(IdealError::Poly)?,
            )?
        };
        let mut out = SGConfig::general(ambient, z, forms, self.degree_bound);
        out.notes = self.notes.clone();
        Ok(out)
    }

    /// Stable content hash of the whole configuration.
    pub fn content_hash(&self) -> u64 {
        let mut h = crate::util::Fnv64::new();
        h.write_str(&self.ring().to_string());
        h.write_str(&self.kind.to_string());
        if let Some(z) = &self.z {
            h.write_str(&z.to_string());
        }
        for u in self.ambient.defining_basis() {
            h.write_str(&u.to_string());
        }
        for f in &self.forms {
            h.write_str(&f.to_string());
        }
        h.write_str(&self.degree_bound.to_string());
        h.finish()
    }
}

