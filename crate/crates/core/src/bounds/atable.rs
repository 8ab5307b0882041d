//! Tables for the strength-threshold function A(eta, d). Only existence of
//! an ascending function is known, not a formula, so the table is user
//! input; a labeled toy default is available for demonstrations.

use num_bigint::BigUint;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug)]
pub struct ATable {
    rows: BTreeMap<(u64, u64), BigUint>,
    /// Set for the built-in toy default; surfaced in reports.
    pub toy_default: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ATableError {
    NotAscending { a: (u64, u64), b: (u64, u64) },
    Missing { eta: u64, d: u64 },
    Parse(String),
}

impl fmt::Display for ATableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ATableError::NotAscending { a, b } => write!(
                f,
                "table not ascending: A{:?} > A{:?} though {:?} <= {:?}",
                a, b, a, b
            ),
            ATableError::Missing { eta, d } => write!(f, "missing A({}, {})", eta, d),
            ATableError::Parse(m) => write!(f, "A-table parse error: {}", m),
        }
    }
}

impl std::error::Error for ATableError {}

impl ATable {
    pub fn new(rows: BTreeMap<(u64, u64), BigUint>) -> Result<Self, ATableError> {
        let t = ATable {
            rows,
            toy_default: false,
        };
        t.check_ascending()?;
        Ok(t)
    }

    /// Toy default A(eta, d) = eta + d. NOT from any published table; only
    /// for demonstrations, and flagged as such.
    pub fn toy(max_eta: u64, max_d: u64) -> Self {
        let mut rows = BTreeMap::new();
        for eta in 0..=max_eta {
            for d in 1..=max_d {
                rows.insert((eta, d), BigUint::from(eta + d));
            }
        }
        ATable {
            rows,
            toy_default: true,
        }
    }

    fn check_ascending(&self) -> Result<(), ATableError> {
        for (&ka, va) in &self.rows {
            for (&kb, vb) in &self.rows {
                if ka.0 <= kb.0 && ka.1 <= kb.1 && va > vb {
                    return Err(ATableError::NotAscending { a: ka, b: kb });
                }
            }
        }
        Ok(())
    }

    pub fn get(&self, eta: u64, d: u64) -> Result<&BigUint, ATableError> {
        self.rows.get(&(eta, d)).ok_or(ATableError::Missing { eta, d })
    }

    /// Row format: `eta d value`, one per line, `#` comments allowed.
    pub fn parse(text: &str) -> Result<Self, ATableError> {
        let mut rows = BTreeMap::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(ATableError::Parse(format!(
                    "line {}: expected `eta d value`",
                    ln + 1
                )));
            }
            let eta: u64 = parts[0]
                .parse()
                .map_err(|_| ATableError::Parse(format!("line {}: bad eta", ln + 1)))?;
            let d: u64 = parts[1]
                .parse()
                .map_err(|_| ATableError::Parse(format!("line {}: bad d", ln + 1)))?;
            let value: BigUint = parts[2]
                .parse()
                .map_err(|_| ATableError::Parse(format!("line {}: bad value", ln + 1)))?;
            rows.insert((eta, d), value);
        }
        ATable::new(rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.toy_default {
            out.push_str("# toy default A(eta,d) = eta + d; NOT from any published table\n");
        }
        for (&(eta, d), v) in &self.rows {
            out.push_str(&format!("{} {} {}\n", eta, d, v));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toy_table_is_ascending_and_parses() {
        let t = ATable::toy(4, 4);
        assert!(t.check_ascending().is_ok());
        let text = t.to_text();
        let back = ATable::parse(&text).unwrap();
        assert_eq!(back.get(3, 2).unwrap(), &BigUint::from(5u64));
    }

    #[test]
    fn non_ascending_rejected() {
        let mut rows = BTreeMap::new();
        rows.insert((1, 1), BigUint::from(5u64));
        rows.insert((2, 1), BigUint::from(3u64));
        assert!(ATable::new(rows).is_err());
    }
}
