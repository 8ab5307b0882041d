//! The combinatorial neighborhoods of a top-degree form in a general
//! configuration: span partners, certified-radical lower-degree partners,
//! and the top-degree witnesses they induce.

use super::config::{ConfigKind, SGConfig};
use crate::ideal::{
    groebner_opts, ideal_member, is_radical_pair, is_regular_sequence, IdealError, MonomialOrder,
    RadicalPairVerdict,
};
use crate::poly::span_dimension;

#[derive(Clone, Debug)]
pub struct SgSets {
    /// Indices of top-degree forms G with |span(F,G) ∩ F_d| >= 3.
    pub fspan: Vec<usize>,
    /// Indices of lower-degree forms P with (z, P, F) a regular sequence and
    /// (F, P) certified radical.
    pub grad: Vec<usize>,
    /// Indices of top-degree forms G lying in (F, P) for some P in grad.
    pub frad: Vec<usize>,
    /// Lower-degree partners whose radicality is undecided; never counted
    /// in `grad`.
    pub unknown: Vec<usize>,
}

impl SgSets {
    pub fn to_structured(&self) -> String {
        let fmt_list = |v: &[usize]| {
            v.iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        format!(
            "rsg-report v1\nkind = sg-sets\nfspan = {}\ngrad = {}\nfrad = {}\nunknown = {}\n",
            fmt_list(&self.fspan),
            fmt_list(&self.grad),
            fmt_list(&self.frad),
            fmt_list(&self.unknown)
        )
    }
}

/// Indices of top-degree partners of the form at `top_index` whose pencil
/// meets a third top-degree form (the Fspan neighborhood).
pub fn fspan_of(config: &SGConfig, top_index: usize) -> Result<Vec<usize>, IdealError> {
    let d = config
        .max_residual_degree()
        .ok_or_else(|| IdealError::BadInput("empty configuration".into()))?;
    let f = &config.forms[top_index];
    let top: Vec<usize> = (0..config.forms.len())
        .filter(|&k| config.forms[k].homogeneous_degree() == Some(d))
        .collect();
    let mut fspan = Vec::new();
    for &g in &top {
        if g == top_index {
            continue;
        }
        let pencil = vec![f.clone(), config.forms[g].clone()];
        let base = span_dimension(&pencil)?;
        let mut count = 0;
        for &h in &top {
            let mut all = pencil.clone();
            all.push(config.forms[h].clone());
            if span_dimension(&all)? == base {
                count += 1;
            }
        }
        if count >= 3 {
            fspan.push(g);
        }
    }
    Ok(fspan)
}

/// Compute (Fspan, Grad, Frad) for the form at `f_index`, which must have
/// the configuration's top residual degree.
pub fn sg_sets(
    config: &SGConfig,
    f_index: usize,
    search_degree: u64,
) -> Result<SgSets, IdealError> {
    assert_eq!(config.kind, ConfigKind::General, "sg_sets takes a general config");
    let d = config
        .max_residual_degree()
        .ok_or_else(|| IdealError::BadInput("empty configuration".into()))?;
    if f_index >= config.forms.len() {
        return Err(IdealError::BadInput(format!(
            "form index {} out of range (configuration has {} forms)",
            f_index,
            config.forms.len()
        )));
    }
    let f = &config.forms[f_index];
    if f.homogeneous_degree() != Some(d) {
        return Err(IdealError::BadInput(format!(
            "form {} has degree {:?}, not the top degree {}",
            f_index,
            f.homogeneous_degree(),
            d
        )));
    }
    let z = config.z.as_ref().expect("general config has z");
    let top: Vec<usize> = (0..config.forms.len())
        .filter(|&k| config.forms[k].homogeneous_degree() == Some(d))
        .collect();
    let lower: Vec<usize> = (0..config.forms.len())
        .filter(|&k| {
            let deg = config.forms[k].homogeneous_degree();
            deg.is_some() && deg != Some(d)
        })
        .collect();

    // Fspan: G in F_d with |span(F, G) ∩ F_d| >= 3 (count includes F and G).
    let fspan = fspan_of(config, f_index)?;

    // Grad: regular sequence (z, P, F) and certified radical pair (F, P).
    let mut grad = Vec::new();
    let mut unknown = Vec::new();
    for &p in &lower {
        let pf = &config.forms[p];
        let regular = is_regular_sequence(
            &[z.clone(), pf.clone(), f.clone()],
            Some(&config.ambient),
        )?;
        if !regular {
            continue;
        }
        match is_radical_pair(f, pf, Some(&config.ambient), search_degree)? {
            RadicalPairVerdict::Radical { .. } => grad.push(p),
            RadicalPairVerdict::NotRadical { .. } => {}
            RadicalPairVerdict::Unknown => unknown.push(p),
        }
    }

    // Frad: G in F_d with G in (F, P) for some P in Grad.
    let mut frad = Vec::new();
    for &g in &top {
        if g == f_index {
            continue;
        }
        let mut found = false;
        for &p in &grad {
            let mut gens = vec![f.clone(), config.forms[p].clone()];
            gens.extend(config.ambient.defining_basis().iter().cloned());
            let gb = groebner_opts(&gens, MonomialOrder::Grevlex, false)?;
            let (member, _) = ideal_member(&config.forms[g], &gb)?;
            if member {
                found = true;
                break;
            }
        }
        if found {
            frad.push(g);
        }
    }
    Ok(SgSets {
        fspan,
        grad,
        frad,
        unknown,
    })
}
