//! Structured text formats: configuration files, generator/query files, and
//! the shared ring block. Line-based, deterministic, round-trip stable.
//!
//! Configuration file:
//!
//! ```text
//! ring {
//!   vars = x y z
//!   weights = 1 1 1          # optional, defaults to 1
//!   field = rationals        # or cyclotomic(6)
//! }
//! quotient {                 # optional ambient quotient
//!   form = x1*x2 + x3*x4 + x5^2
//! }
//! kind = basic               # or general
//! z = zc                     # general configurations only
//! degree_bound = 2
//! forms {
//!   form = x
//!   form = y
//! }
//! ```

use crate::ideal::QuotientContext;
use crate::poly::{parse_polynomial, GradedVectorSpace, Polynomial, RingContext, RingRef};
use crate::scalar::FieldDescriptor;
use crate::sg::{ConfigKind, SGConfig};
use std::fmt;

#[derive(Clone, Debug)]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FormatError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError {
        line,
        message: message.into(),
    })
}

struct Block {
    name: String,
    entries: Vec<(usize, String, String)>, // (line, key, value)
}

struct Document {
    top: Vec<(usize, String, String)>,
    blocks: Vec<Block>,
}

fn parse_document(text: &str) -> Result<Document, FormatError> {
    let mut doc = Document {
        top: vec![],
        blocks: vec![],
    };
    let mut current: Option<Block> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(name) = line.strip_suffix('{') {
            if current.is_some() {
                return err(line_no, "nested blocks are not supported");
            }
            current = Some(Block {
                name: name.trim().to_string(),
                entries: vec![],
            });
            continue;
        }
        if line == "}" {
            match current.take() {
                Some(b) => doc.blocks.push(b),
                None => return err(line_no, "unmatched `}`"),
            }
            continue;
        }
        let (key, value) = match line.split_once('=') {
            Some((k, v)) => (k.trim().to_string(), v.trim().to_string()),
            None => return err(line_no, format!("expected `key = value`, got `{}`", line)),
        };
        match current.as_mut() {
            Some(b) => b.entries.push((line_no, key, value)),
            None => doc.top.push((line_no, key, value)),
        }
    }
    if current.is_some() {
        return err(text.lines().count(), "unterminated block");
    }
    Ok(doc)
}

fn parse_field(s: &str, line: usize) -> Result<FieldDescriptor, FormatError> {
    if s == "rationals" {
        return Ok(FieldDescriptor::Rationals);
    }
    if let Some(rest) = s.strip_prefix("cyclotomic(") {
        if let Some(n) = rest.strip_suffix(')') {
            let n: u32 = match n.parse() {
                Ok(v) => v,
                Err(_) => return err(line, "bad cyclotomic order"),
            };
            return Ok(FieldDescriptor::cyclotomic(n));
        }
    }
    err(line, format!("unknown field `{}`", s))
}

fn ring_from_block(block: &Block) -> Result<RingRef, FormatError> {
    let mut vars: Option<Vec<String>> = None;
    let mut weights: Option<Vec<u32>> = None;
    let mut field = FieldDescriptor::Rationals;
    for (line, key, value) in &block.entries {
        match key.as_str() {
            "vars" => {
                vars = Some(value.split_whitespace().map(|s| s.to_string()).collect())
            }
            "weights" => {
                let parsed: Result<Vec<u32>, _> =
                    value.split_whitespace().map(|s| s.parse()).collect();
                match parsed {
                    Ok(w) => weights = Some(w),
                    Err(_) => return err(*line, "bad weights"),
                }
            }
            "field" => field = parse_field(value, *line)?,
            other => return err(*line, format!("unknown ring key `{}`", other)),
        }
    }
    let vars = match vars {
        Some(v) if !v.is_empty() => v,
        _ => return err(0, "ring block needs `vars`"),
    };
    RingContext::new(vars, weights, field).map_err(|e| FormatError {
        line: 0,
        message: e.to_string(),
    })
}

fn forms_from_block(block: &Block, ring: &RingRef) -> Result<Vec<Polynomial>, FormatError> {
    let mut out = Vec::new();
    for (line, key, value) in &block.entries {
        if key != "form" {
            return err(*line, format!("unknown key `{}` in forms block", key));
        }
        match parse_polynomial(value, ring) {
            Ok(p) => out.push(p),
            Err(e) => return err(*line, e.to_string()),
        }
    }
    Ok(out)
}

/// Parse a configuration file into an `SGConfig`.
pub fn parse_config(text: &str) -> Result<SGConfig, FormatError> {
    let doc = parse_document(text)?;
    let ring_block = doc
        .blocks
        .iter()
        .find(|b| b.name == "ring")
        .ok_or(FormatError {
            line: 0,
            message: "missing ring block".into(),
        })?;
    let ring = ring_from_block(ring_block)?;
    let ambient = match doc.blocks.iter().find(|b| b.name == "quotient") {
        Some(qb) => {
            let defs = forms_from_block(qb, &ring)?;
            let space = GradedVectorSpace::new(&ring, defs).map_err(|e| FormatError {
                line: 0,
                message: e.to_string(),
            })?;
            QuotientContext::new(space).map_err(|e| FormatError {
                line: 0,
                message: e.to_string(),
            })?
        }
        None => QuotientContext::polynomial_ring(&ring),
    };
    let get_top = |key: &str| -> Option<&str> {
        doc.top
            .iter()
            .find(|(_, k, _)| k == key)
            .map(|(_, _, v)| v.as_str())
    };
    let kind = match get_top("kind") {
        Some("basic") => ConfigKind::Basic,
        Some("general") => ConfigKind::General,
        Some(other) => {
            return Err(FormatError {
                line: 0,
                message: format!("unknown kind `{}`", other),
            })
        }
        None => ConfigKind::Basic,
    };
    let degree_bound: u64 = match get_top("degree_bound") {
        Some(v) => v.parse().map_err(|_| FormatError {
            line: 0,
            message: "bad degree_bound".into(),
        })?,
        None => {
            return Err(FormatError {
                line: 0,
                message: "missing degree_bound".into(),
            })
        }
    };
    let forms_block = doc
        .blocks
        .iter()
        .find(|b| b.name == "forms")
        .ok_or(FormatError {
            line: 0,
            message: "missing forms block".into(),
        })?;
    let forms = forms_from_block(forms_block, &ring)?;
    let notes: Vec<String> = doc
        .top
        .iter()
        .filter(|(_, k, _)| k == "note")
        .map(|(_, _, v)| v.clone())
        .collect();
    let mut config = match kind {
        ConfigKind::Basic => SGConfig::basic(ambient, forms, degree_bound),
        ConfigKind::General => {
            let z_text = get_top("z").ok_or(FormatError {
                line: 0,
                message: "general configuration needs `z`".into(),
            })?;
            let z = parse_polynomial(z_text, &ring).map_err(|e| FormatError {
                line: 0,
                message: e.to_string(),
            })?;
            SGConfig::general(ambient, z, forms, degree_bound)
        }
    };
    config.notes = notes;
    Ok(config)
}

/// Canonical text of a configuration; `parse_config` of the output
/// reproduces the configuration.
pub fn print_config(config: &SGConfig) -> String {
    let ring = config.ring();
    let mut out = String::new();
    out.push_str("ring {\n");
    out.push_str(&format!("  vars = {}\n", ring.vars().join(" ")));
    if ring.weights().iter().any(|&w| w != 1) {
        out.push_str(&format!(
            "  weights = {}\n",
            ring.weights()
                .iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ));
    }
    out.push_str(&format!("  field = {}\n", ring.field()));
    out.push_str("}\n");
    if !config.ambient.is_trivial() {
        out.push_str("quotient {\n");
        for f in config.ambient.defining_basis() {
            out.push_str(&format!("  form = {}\n", f));
        }
        out.push_str("}\n");
    }
    out.push_str(&format!("kind = {}\n", config.kind));
    for n in &config.notes {
        out.push_str(&format!("note = {}\n", n));
    }
    if let Some(z) = &config.z {
        out.push_str(&format!("z = {}\n", z));
    }
    out.push_str(&format!("degree_bound = {}\n", config.degree_bound));
    out.push_str("forms {\n");
    for f in &config.forms {
        out.push_str(&format!("  form = {}\n", f));
    }
    out.push_str("}\n");
    out
}

/// A generators/candidate query file: the ring (and optional quotient)
/// blocks, a `generators` block, and an optional `candidate` entry.
#[derive(Clone, Debug)]
pub struct QueryFile {
    pub ring: RingRef,
    pub ambient: QuotientContext,
    pub generators: Vec<Polynomial>,
    pub candidate: Option<Polynomial>,
}

pub fn parse_query(text: &str) -> Result<QueryFile, FormatError> {
    let doc = parse_document(text)?;
    let ring_block = doc
        .blocks
        .iter()
        .find(|b| b.name == "ring")
        .ok_or(FormatError {
            line: 0,
            message: "missing ring block".into(),
        })?;
    let ring = ring_from_block(ring_block)?;
    let ambient = match doc.blocks.iter().find(|b| b.name == "quotient") {
        Some(qb) => {
            let defs = forms_from_block(qb, &ring)?;
            let space = GradedVectorSpace::new(&ring, defs).map_err(|e| FormatError {
                line: 0,
                message: e.to_string(),
            })?;
            QuotientContext::new(space).map_err(|e| FormatError {
                line: 0,
                message: e.to_string(),
            })?
        }
        None => QuotientContext::polynomial_ring(&ring),
    };
    let generators = match doc.blocks.iter().find(|b| b.name == "generators") {
        Some(b) => forms_from_block(b, &ring)?,
        None => vec![],
    };
    let candidate = match doc.top.iter().find(|(_, k, _)| k == "candidate") {
        Some((line, _, v)) => Some(parse_polynomial(v, &ring).map_err(|e| FormatError {
            line: *line,
            message: e.to_string(),
        })?),
        None => None,
    };
    Ok(QueryFile {
        ring,
        ambient,
        generators,
        candidate,
    })
}
