//! Pairwise SG verification with witnesses, parallel over pairs.

use super::config::{ConfigKind, SGConfig};
use crate::ideal::{groebner_opts, ideal_member, radical_member, IdealError, MonomialOrder};
use crate::poly::{span_dimension, Polynomial};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessVia {
    Ideal,
    Radical,
}

impl fmt::Display for WitnessVia {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessVia::Ideal => write!(f, "ideal"),
            WitnessVia::Radical => write!(f, "radical"),
        }
    }
}

/// Witness for one pair: either the distinguished form `z` of a general
/// configuration or a third form index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    DistinguishedZ,
    Form(usize),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::DistinguishedZ => write!(f, "z"),
            Witness::Form(k) => write!(f, "form:{}", k),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PairResult {
    pub i: usize,
    pub j: usize,
    pub witness: Option<(Witness, WitnessVia)>,
}

#[derive(Clone, Debug)]
pub struct SGReport {
    pub config_hash: u64,
    pub kind: ConfigKind,
    pub seed: u64,
    pub pass: bool,
    pub span_dimension: usize,
    pub potential: Option<u64>,
    pub pairs: Vec<PairResult>,
    pub violations: Vec<String>,
    pub notes: Vec<String>,
    pub elapsed_ms: u128,
}

impl SGReport {
    /// Deterministic structured text; excludes wall-clock timing so equal
    /// inputs and seed give byte-identical output.
    pub fn to_structured(&self) -> String {
        let mut out = String::new();
        out.push_str("rsg-report v1\n");
        out.push_str("kind = sg-verify\n");
        out.push_str(&format!("config = {:016x}\n", self.config_hash));
        out.push_str(&format!("config_kind = {}\n", self.kind));
        out.push_str(&format!("seed = {}\n", self.seed));
        out.push_str(&format!("pass = {}\n", self.pass));
        out.push_str(&format!("span = {}\n", self.span_dimension));
        if let Some(phi) = self.potential {
            out.push_str(&format!("potential = {}\n", phi));
        }
        for v in &self.violations {
            out.push_str(&format!("violation = {}\n", v));
        }
        for n in &self.notes {
            out.push_str(&format!("note = {}\n", n));
        }
        out.push_str(&format!("pairs = {}\n", self.pairs.len()));
        for p in &self.pairs {
            match &p.witness {
                Some((w, via)) => {
                    out.push_str(&format!("pair {} {} witness={} via={}\n", p.i, p.j, w, via))
                }
                None => out.push_str(&format!("pair {} {} witness=none\n", p.i, p.j)),
            }
        }
        out
    }
}

/// Test one pair: try candidates in order (cheap ideal membership first,
/// then Rabinowitsch), candidates ordered by degree then index.
fn check_pair(
    config: &SGConfig,
    i: usize,
    j: usize,
) -> Result<Option<(Witness, WitnessVia)>, IdealError> {
    let (pair_gens, candidates): (Vec<Polynomial>, Vec<(Witness, Polynomial)>) = match config.kind
    {
        ConfigKind::Basic => {
            let gens = vec![config.forms[i].clone(), config.forms[j].clone()];
            let cands = (0..config.forms.len())
                .filter(|&k| k != i && k != j)
                .map(|k| (Witness::Form(k), config.forms[k].clone()))
                .collect();
            (gens, cands)
        }
        ConfigKind::General => {
            let z = config.z.as_ref().unwrap();
            let gens = vec![z.mul(&config.forms[i]), z.mul(&config.forms[j])];
            let mut cands = vec![(Witness::DistinguishedZ, z.clone())];
            cands.extend(
                (0..config.forms.len())
                    .filter(|&k| k != i && k != j)
                    .map(|k| (Witness::Form(k), z.mul(&config.forms[k]))),
            );
            (gens, cands)
        }
    };
    let mut ordered = candidates;
    ordered.sort_by_key(|(w, p)| {
        let idx = match w {
            Witness::DistinguishedZ => 0usize,
            Witness::Form(k) => k + 1,
        };
        (p.degree().unwrap_or(0), idx)
    });
    // cheap pass: plain ideal membership against one cached basis
    let mut all_gens = pair_gens.clone();
    all_gens.extend(config.ambient.defining_basis().iter().cloned());
    let gb = groebner_opts(&all_gens, MonomialOrder::Grevlex, false)?;
    for (w, cand) in &ordered {
        let (member, _) = ideal_member(cand, &gb)?;
        if member {
            return Ok(Some((*w, WitnessVia::Ideal)));
        }
    }
    // cheap positive pre-filter: a small power of a candidate reducing to
    // zero certifies radical membership without a Rabinowitsch run
    if !gb.is_zero_ideal() && !gb.is_unit_ideal() {
        for (w, cand) in &ordered {
            if crate::ideal::power_membership_hint(cand, &gb, 8) {
                return Ok(Some((*w, WitnessVia::Radical)));
            }
        }
    }
    // full radical pass against the same cached generator set
    for (w, cand) in &ordered {
        if radical_member(cand, &all_gens, None)? {
            return Ok(Some((*w, WitnessVia::Radical)));
        }
    }
    Ok(None)
}

/// Verify the SG condition for every unordered pair. Failures are recorded
/// in the report, not raised as errors. `jobs` caps worker threads; the
/// report is ordered lexicographically regardless of completion order.
pub fn verify_sg(config: &SGConfig, seed: u64, jobs: usize) -> Result<SGReport, IdealError> {
    let start = std::time::Instant::now();
    let violations: Vec<String> = config
        .validate()?
        .into_iter()
        .map(|v| v.to_string())
        .collect();
    let n = config.forms.len();
    let mut pair_indices: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            pair_indices.push((i, j));
        }
    }
    let jobs = jobs.max(1);
    let mut results: Vec<PairResult> = Vec::with_capacity(pair_indices.len());
    if jobs == 1 || pair_indices.len() <= 1 {
        for &(i, j) in &pair_indices {
            let witness = check_pair(config, i, j)?;
            results.push(PairResult { i, j, witness });
        }
    } else {
        let chunks: Vec<Vec<(usize, usize)>> = pair_indices
            .chunks(pair_indices.len().div_ceil(jobs))
            .map(|c| c.to_vec())
            .collect();
        let mut collected: Vec<Result<Vec<PairResult>, IdealError>> = Vec::new();
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .into_iter()
                .map(|chunk| {
                    scope.spawn(move || -> Result<Vec<PairResult>, IdealError> {
                        let mut out = Vec::with_capacity(chunk.len());
                        for (i, j) in chunk {
                            let witness = check_pair(config, i, j)?;
                            out.push(PairResult { i, j, witness });
                        }
                        Ok(out)
                    })
                })
                .collect();
            for h in handles {
                collected.push(h.join().expect("worker panicked"));
            }
        });
        for c in collected {
            results.extend(c?);
        }
        results.sort_by_key(|p| (p.i, p.j));
    }
    let span = span_dimension(&config.elements())?;
    let potential = match config.kind {
        ConfigKind::General => Some(potential(config)),
        ConfigKind::Basic => None,
    };
    let pass = violations.is_empty() && results.iter().all(|p| p.witness.is_some());
    Ok(SGReport {
        config_hash: config.content_hash(),
        kind: config.kind,
        seed,
        pass,
        span_dimension: span,
        potential,
        pairs: results,
        violations,
        notes: config.notes.clone(),
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// The potential `phi = sum_j j * m_j` over the residual degrees.
pub fn potential(config: &SGConfig) -> u64 {
    config
        .degree_counts()
        .iter()
        .map(|&(d, m)| d * m as u64)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::QuotientContext;
    use crate::poly::{parse_polynomial, RingContext};
    use crate::scalar::FieldDescriptor;

    #[test]
    fn three_collinear_linear_forms_pass() {
        let r = RingContext::standard(&["x", "y"], FieldDescriptor::Rationals);
        let config = SGConfig::basic(
            QuotientContext::polynomial_ring(&r),
            vec![
                parse_polynomial("x", &r).unwrap(),
                parse_polynomial("y", &r).unwrap(),
                parse_polynomial("x + y", &r).unwrap(),
            ],
            1,
        );
        let report = verify_sg(&config, 42, 1).unwrap();
        assert!(report.pass);
        assert_eq!(report.span_dimension, 2);
        for p in &report.pairs {
            assert!(matches!(p.witness, Some((_, WitnessVia::Ideal))));
        }
    }

    #[test]
    fn two_generic_quadrics_fail_on_unique_pair() {
        let r = RingContext::standard(&["x", "y", "z"], FieldDescriptor::Rationals);
        let config = SGConfig::basic(
            QuotientContext::polynomial_ring(&r),
            vec![
                parse_polynomial("x^2 + y*z", &r).unwrap(),
                parse_polynomial("y^2 + x*z", &r).unwrap(),
            ],
            2,
        );
        let report = verify_sg(&config, 42, 1).unwrap();
        assert!(!report.pass);
        assert_eq!(report.pairs.len(), 1);
        assert!(report.pairs[0].witness.is_none());
    }

    #[test]
    fn validate_flags_duplicates_and_common_factors() {
        let r = RingContext::standard(&["x", "y"], FieldDescriptor::Rationals);
        let dup = SGConfig::basic(
            QuotientContext::polynomial_ring(&r),
            vec![
                parse_polynomial("x", &r).unwrap(),
                parse_polynomial("2*x", &r).unwrap(),
            ],
            1,
        );
        let v = dup.validate().unwrap();
        assert!(v.iter().any(|x| matches!(x, super::super::config::Violation::Associate { .. })));

        let gen_cfg = SGConfig::general(
            QuotientContext::polynomial_ring(&r),
            parse_polynomial("x", &r).unwrap(),
            vec![
                parse_polynomial("y", &r).unwrap(),
                parse_polynomial("x*y", &r).unwrap(),
            ],
            2,
        );
        let v2 = gen_cfg.validate().unwrap();
        assert!(v2
            .iter()
            .any(|x| matches!(x, super::super::config::Violation::CommonFactor { .. })));
    }

    #[test]
    fn embed_basic_preserves_pair_outcomes() {
        let r = RingContext::standard(&["x", "y"], FieldDescriptor::Rationals);
        let basic = SGConfig::basic(
            QuotientContext::polynomial_ring(&r),
            vec![
                parse_polynomial("x", &r).unwrap(),
                parse_polynomial("y", &r).unwrap(),
                parse_polynomial("x + y", &r).unwrap(),
            ],
            1,
        );
        let general = basic.embed_basic(None).unwrap();
        assert_eq!(general.forms.len(), 3);
        let rb = verify_sg(&basic, 1, 1).unwrap();
        let rg = verify_sg(&general, 1, 1).unwrap();
        assert_eq!(rb.pass, rg.pass);
        for (a, b) in rb.pairs.iter().zip(&rg.pairs) {
            assert_eq!(a.witness.is_some(), b.witness.is_some());
        }
    }

    #[test]
    fn parallel_matches_serial() {
        let r = RingContext::standard(&["x", "y", "z"], FieldDescriptor::Rationals);
        let forms: Vec<Polynomial> = ["x", "y", "z", "x + y", "x + z", "y + z"]
            .iter()
            .map(|s| parse_polynomial(s, &r).unwrap())
            .collect();
        let config = SGConfig::basic(QuotientContext::polynomial_ring(&r), forms, 1);
        let serial = verify_sg(&config, 7, 1).unwrap();
        let parallel = verify_sg(&config, 7, 4).unwrap();
        assert_eq!(serial.to_structured(), parallel.to_structured());
    }
}
