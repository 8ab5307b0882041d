//! Monomial orders for the Groebner engine: graded reverse lexicographic,
//! lexicographic, and block elimination orders.

use crate::poly::{Monomial, Polynomial, RingContext};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Weighted graded reverse lexicographic (the ring default).
    Grevlex,
    /// Lexicographic in ring variable order.
    Lex,
    /// Eliminates the given variables: compares the eliminated block by
    /// grevlex first, then the remaining block by grevlex.
    Block { eliminated: Vec<usize> },
}

impl MonomialOrder {
    /// Check the block order eliminates a nonempty proper subset.
    pub fn validate(&self, ring: &RingContext) -> Result<(), String> {
        if let MonomialOrder::Block { eliminated } = self {
            if eliminated.is_empty() {
                return Err("block order must eliminate at least one variable".into());
            }
            if eliminated.len() >= ring.nvars() {
                return Err("block order must leave at least one variable".into());
            }
            for &v in eliminated {
                if v >= ring.nvars() {
                    return Err(format!("variable index {} out of range", v));
                }
            }
        }
        Ok(())
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial, ring: &RingContext) -> Ordering {
        match self {
            MonomialOrder::Grevlex => a.cmp_grevlex(b),
            MonomialOrder::Lex => a.cmp_lex(b),
            MonomialOrder::Block { eliminated } => {
                let block_cmp = |vars: &dyn Fn(usize) -> bool| -> Ordering {
                    // grevlex restricted to a subset of the variables
                    let deg = |m: &Monomial| -> u64 {
                        m.exps()
                            .iter()
                            .enumerate()
                            .filter(|(i, _)| vars(*i))
                            .map(|(i, &e)| e as u64 * ring.weights()[i] as u64)
                            .sum()
                    };
                    match deg(a).cmp(&deg(b)) {
                        Ordering::Equal => {}
                        ord => return ord,
                    }
                    for i in (0..a.exps().len()).rev() {
                        if !vars(i) {
                            continue;
                        }
                        match a.exp(i).cmp(&b.exp(i)) {
                            Ordering::Equal => continue,
                            Ordering::Less => return Ordering::Greater,
                            Ordering::Greater => return Ordering::Less,
                        }
                    }
                    Ordering::Equal
                };
                let in_elim = |i: usize| eliminated.contains(&i);
                match block_cmp(&in_elim) {
                    Ordering::Equal => block_cmp(&|i: usize| !in_elim(i)),
                    ord => ord,
                }
            }
        }
    }

    /// Terms of `p` sorted descending under this order.
    pub fn sorted_terms(&self, p: &Polynomial) -> Vec<(Monomial, crate::scalar::Scalar)> {
        let mut terms: Vec<_> = p.terms().to_vec();
        let ring = p.ring().clone();
        terms.sort_by(|(a, _), (b, _)| self.cmp(b, a, &ring));
        terms
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Grevlex => write!(f, "grevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
            MonomialOrder::Block { eliminated } => {
                write!(f, "block[")?;
                for (k, v) in eliminated.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", v)?;
                }
                write!(f, "]")
            }
        }
    }
}
