//! Command-line surface: parse inputs, run verifications, pipelines and
//! bound queries, and emit deterministic reports.
//!
//! Exit codes: 0 success/verified; 1 verification failed; 2 usage error;
//! 3 undecided or uncertified outcomes present.

pub mod examples;

use num_bigint::BigUint;
use num_rational::BigRational;
use rsg_core::bounds::{
    epsilon_sanity, eval_c, eval_epsilon_k, eval_h, eval_lambda, scalar_bound, ATable,
    BoundBudget, BoundFunction, LambdaOutcome, ScalarBoundQuery,
};
use rsg_core::format::{parse_config, parse_query, print_config};
use rsg_core::ideal::{
    eliminate, groebner, ideal_member, krull_dimension, radical_member, MonomialOrder,
};
use rsg_core::poly::{
    discriminant, parse_polynomial, poly_gcd, resultant, span_dimension, squarefree_part,
    GradedVectorSpace, Polynomial, RingContext, RingRef,
};
use rsg_core::quotient::{compose_bound, degree_reduce_pipeline, lifting_bound, LiftingVariant};
use rsg_core::scalar::FieldDescriptor;
use rsg_core::sg::{potential, robust_linear_check, sg_sets, verify_sg, ConfigKind};
use rsg_core::strength::{
    collapse_search, quadric_strength, strengthen, GuardPolicy,
};
use std::collections::HashMap;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn usage(msg: &str) -> Outcome {
    Outcome {
        code: 2,
        stdout: String::new(),
        stderr: format!("usage error: {}\n", msg),
    }
}

fn failure(msg: &str) -> Outcome {
    Outcome {
        code: 2,
        stdout: String::new(),
        stderr: format!("error: {}\n", msg),
    }
}

const KNOWN_FLAGS: &[&str] = &[
    "seed", "jobs", "budget", "radius", "format", "file", "ring", "field", "weights", "var",
    "gen", "n", "m", "r", "d", "e", "p", "q", "c", "delta", "name", "variant", "extra", "ell",
    "nlist", "udim", "dim", "atable", "demand", "cover", "trace", "search-degree", "index",
    "vars", "order", "policy", "w", "eta", "out",
];

struct Flags {
    seed: u64,
    jobs: usize,
    budget: u64,
    radius: u64,
    structured: bool,
    named: HashMap<String, String>,
    positional: Vec<String>,
}

fn parse_flags(args: &[String]) -> Result<Flags, String> {
    let mut named = HashMap::new();
    let mut positional = Vec::new();
    let mut i = 0;
    while i < args.len() {
        let a = &args[i];
        if let Some(name) = a.strip_prefix("--") {
            if !KNOWN_FLAGS.contains(&name) {
                return Err(format!("unknown flag --{}", name));
            }
            i += 1;
            if i >= args.len() {
                return Err(format!("flag --{} needs a value", name));
            }
            named.insert(name.to_string(), args[i].clone());
        } else {
            positional.push(a.clone());
        }
        i += 1;
    }
    let parse_u64 = |named: &HashMap<String, String>, key: &str, default: u64| -> Result<u64, String> {
        match named.get(key) {
            Some(v) => v.parse().map_err(|_| format!("bad --{}", key)),
            None => Ok(default),
        }
    };
    let seed = parse_u64(&named, "seed", 42)?;
    let jobs = parse_u64(&named, "jobs", 1)? as usize;
    let budget = parse_u64(&named, "budget", 10_000_000)?;
    let radius = parse_u64(&named, "radius", 2)?;
    let structured = match named.get("format").map(|s| s.as_str()) {
        None | Some("text") => false,
        Some("structured") => true,
        Some(other) => return Err(format!("unknown format `{}`", other)),
    };
    Ok(Flags {
        seed,
        jobs,
        budget,
        radius,
        structured,
        named,
        positional,
    })
}

fn ring_from_flags(flags: &Flags) -> Result<RingRef, String> {
    let vars: Vec<String> = flags
        .named
        .get("ring")
        .ok_or("missing --ring \"x y z\"")?
        .split_whitespace()
        .map(|s| s.to_string())
        .collect();
    let field = match flags.named.get("field").map(|s| s.as_str()) {
        None | Some("rationals") => FieldDescriptor::Rationals,
        Some(s) => {
            let inner = s
                .strip_prefix("cyclotomic(")
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| format!("unknown field `{}`", s))?;
            FieldDescriptor::cyclotomic(inner.parse().map_err(|_| "bad cyclotomic order")?)
        }
    };
    let weights = match flags.named.get("weights") {
        Some(w) => Some(
            w.split_whitespace()
                .map(|s| s.parse().map_err(|_| "bad weights".to_string()))
                .collect::<Result<Vec<u32>, _>>()?,
        ),
        None => None,
    };
    RingContext::new(vars, weights, field).map_err(|e| e.to_string())
}

fn read_input_from(flags: &Flags, rest: &[String], stdin: &str) -> Result<String, String> {
    match flags.named.get("file").map(|s| s.as_str()) {
        Some("-") => Ok(stdin.to_string()),
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path, e)),
        None => {
            if rest.first().map(|s| s.as_str()) == Some("-") {
                Ok(stdin.to_string())
            } else if let Some(path) = rest.first() {
                std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path, e))
            } else {
                Err("missing input (--file PATH or `-` for stdin)".into())
            }
        }
    }
}

fn header(kind: &str, seed: u64, input_hash: u64) -> String {
    format!(
        "rsg-report v1\nkind = {}\nversion = {}\nseed = {}\ninput = {:016x}\n",
        kind, VERSION, seed, input_hash
    )
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| "bad rational")?;
            let d: i64 = d.trim().parse().map_err(|_| "bad rational")?;
            if d == 0 {
                return Err("zero denominator".into());
            }
            Ok(BigRational::new(n.into(), d.into()))
        }
        None => {
            let n: i64 = s.trim().parse().map_err(|_| "bad rational")?;
            Ok(BigRational::from_integer(n.into()))
        }
    }
}

/// Run a command line; `stdin` supplies the text for `-` inputs.
pub fn run(args: &[String], stdin: &str) -> Outcome {
    if args.is_empty() {
        return usage("expected a subcommand: poly | ideal | sg | strength | bounds");
    }
    let flags = match parse_flags(&args[1..]) {
        Ok(f) => f,
        Err(e) => return usage(&e),
    };
    match args[0].as_str() {
        "poly" => run_poly(&flags),
        "ideal" => run_ideal(&flags, stdin),
        "sg" => run_sg(&flags, stdin),
        "strength" => run_strength(&flags, stdin),
        "bounds" => run_bounds(&flags),
        other => usage(&format!("unknown subcommand `{}`", other)),
    }
}

fn sub_and_rest(flags: &Flags) -> Result<(String, Vec<String>), String> {
    match flags.positional.split_first() {
        Some((s, rest)) => Ok((s.clone(), rest.to_vec())),
        None => Err("missing operation".into()),
    }
}

fn parse_polys(ring: &RingRef, texts: &[String]) -> Result<Vec<Polynomial>, String> {
    texts
        .iter()
        .map(|t| parse_polynomial(t, ring).map_err(|e| e.to_string()))
        .collect()
}

fn gens_from_flags(flags: &Flags, ring: &RingRef) -> Result<Vec<Polynomial>, String> {
    let raw = flags.named.get("gen").ok_or("missing --gen \"f; g; ...\"")?;
    raw.split(';')
        .map(|s| parse_polynomial(s.trim(), ring).map_err(|e| e.to_string()))
        .collect()
}

fn run_poly(flags: &Flags) -> Outcome {
    let (op, rest) = match sub_and_rest(flags) {
        Ok(v) => v,
        Err(e) => return usage(&e),
    };
    let ring = match ring_from_flags(flags) {
        Ok(r) => r,
        Err(e) => return usage(&e),
    };
    let polys = match parse_polys(&ring, &rest) {
        Ok(p) => p,
        Err(e) => return failure(&e),
    };
    let var_index = |name: &str| -> Result<usize, String> {
        ring.var_index(name)
            .ok_or_else(|| format!("unknown variable `{}`", name))
    };
    let mut h = rsg_core::util::Fnv64::new();
    for p in &polys {
        h.write_str(&p.to_string());
    }
    let head = header(&format!("poly-{}", op), flags.seed, h.finish());
    let result: Result<String, String> = (|| match op.as_str() {
        "gcd" => {
            if polys.len() != 2 {
                return Err("poly gcd takes two polynomials".into());
            }
            let g = poly_gcd(&polys[0], &polys[1]).map_err(|e| e.to_string())?;
            Ok(format!("gcd = {}\n", g))
        }
        "squarefree" => {
            if polys.len() != 1 {
                return Err("poly squarefree takes one polynomial".into());
            }
            let s = squarefree_part(&polys[0]).map_err(|e| e.to_string())?;
            Ok(format!("squarefree = {}\n", s))
        }
        "resultant" => {
            if polys.len() != 2 {
                return Err("poly resultant takes two polynomials".into());
            }
            let v = var_index(flags.named.get("var").ok_or("missing --var")?)?;
            let r = resultant(&polys[0], &polys[1], v).map_err(|e| e.to_string())?;
            Ok(format!("resultant = {}\n", r))
        }
        "discriminant" => {
            if polys.len() != 1 {
                return Err("poly discriminant takes one polynomial".into());
            }
            let v = var_index(flags.named.get("var").ok_or("missing --var")?)?;
            let d = discriminant(&polys[0], v).map_err(|e| e.to_string())?;
            Ok(format!("discriminant = {}\n", d))
        }
        other => Err(format!("unknown poly operation `{}`", other)),
    })();
    match result {
        Ok(body) => Outcome {
            code: 0,
            stdout: if flags.structured {
                format!("{}{}", head, body)
            } else {
                body
            },
            stderr: String::new(),
        },
        Err(e) => failure(&e),
    }
}

fn run_ideal(flags: &Flags, stdin: &str) -> Outcome {
    let (op, rest) = match sub_and_rest(flags) {
        Ok(v) => v,
        Err(e) => return usage(&e),
    };
    match op.as_str() {
        "groebner" => {
            let ring = match ring_from_flags(flags) {
                Ok(r) => r,
                Err(e) => return usage(&e),
            };
            let gens = match gens_from_flags(flags, &ring) {
                Ok(g) => g,
                Err(e) => return failure(&e),
            };
            let order = match flags.named.get("order").map(|s| s.as_str()) {
                None | Some("grevlex") => MonomialOrder::Grevlex,
                Some("lex") => MonomialOrder::Lex,
                Some(other) => return usage(&format!("unknown order `{}`", other)),
            };
            match groebner(&gens, order) {
                Ok(gb) => {
                    let mut body = format!(
                        "order = {}\nunit = {}\nbasis = {}\n",
                        gb.order(),
                        gb.is_unit_ideal(),
                        gb.basis().len()
                    );
                    for b in gb.basis() {
                        body.push_str(&format!("element = {}\n", b));
                    }
                    let head = header("ideal-groebner", flags.seed, gb.key());
                    Outcome {
                        code: 0,
                        stdout: if flags.structured { format!("{}{}", head, body) } else { body },
                        stderr: String::new(),
                    }
                }
                Err(e) => failure(&e.to_string()),
            }
        }
        "member" | "radical-member" => {
            // file-based (ring/quotient/generators/candidate) or inline
            let (query, cand): (rsg_core::format::QueryFile, Polynomial) = if flags
                .named
                .contains_key("file")
                || rest.first().map(|s| s.as_str()) == Some("-")
            {
                let text = match read_input_from(flags, &rest, stdin) {
                    Ok(t) => t,
                    Err(e) => return usage(&e),
                };
                let q = match parse_query(&text) {
                    Ok(q) => q,
                    Err(e) => return failure(&e.to_string()),
                };
                let cand = match &q.candidate {
                    Some(c) => c.clone(),
                    None => return usage("query file needs `candidate = ...`"),
                };
                (q, cand)
            } else {
                let ring = match ring_from_flags(flags) {
                    Ok(r) => r,
                    Err(e) => return usage(&e),
                };
                let gens = match gens_from_flags(flags, &ring) {
                    Ok(g) => g,
                    Err(e) => return failure(&e),
                };
                let cand_text = match rest.first() {
                    Some(t) => t,
                    None => return usage("missing candidate polynomial"),
                };
                let cand = match parse_polynomial(cand_text, &ring) {
                    Ok(c) => c,
                    Err(e) => return failure(&e.to_string()),
                };
                (
                    rsg_core::format::QueryFile {
                        ring: ring.clone(),
                        ambient: rsg_core::ideal::QuotientContext::polynomial_ring(&ring),
                        generators: gens,
                        candidate: None,
                    },
                    cand,
                )
            };
            let mut h = rsg_core::util::Fnv64::new();
            for g in &query.generators {
                h.write_str(&g.to_string());
            }
            h.write_str(&cand.to_string());
            let head = header(&format!("ideal-{}", op), flags.seed, h.finish());
            let result: Result<bool, String> = if op == "member" {
                let mut gens = query.generators.clone();
                gens.extend(query.ambient.defining_basis().iter().cloned());
                groebner(&gens, MonomialOrder::Grevlex)
                    .and_then(|gb| ideal_member(&cand, &gb).map(|(m, _)| m))
                    .map_err(|e| e.to_string())
            } else {
                radical_member(&cand, &query.generators, Some(&query.ambient))
                    .map_err(|e| e.to_string())
            };
            match result {
                Ok(member) => Outcome {
                    code: 0,
                    stdout: if flags.structured {
                        format!("{}member = {}\n", head, member)
                    } else {
                        format!("{}\n", member)
                    },
                    stderr: String::new(),
                },
                Err(e) => failure(&e),
            }
        }
        "eliminate" => {
            let ring = match ring_from_flags(flags) {
                Ok(r) => r,
                Err(e) => return usage(&e),
            };
            let gens = match gens_from_flags(flags, &ring) {
                Ok(g) => g,
                Err(e) => return failure(&e),
            };
            let vars: Vec<usize> = match flags.named.get("vars") {
                Some(v) => {
                    let mut out = Vec::new();
                    for name in v.split_whitespace() {
                        match ring.var_index(name) {
                            Some(i) => out.push(i),
                            None => return failure(&format!("unknown variable `{}`", name)),
                        }
                    }
                    out
                }
                None => return usage("missing --vars \"x ...\""),
            };
            match eliminate(&gens, &vars) {
                Ok(gb) => {
                    let mut body = format!("basis = {}\n", gb.basis().len());
                    for b in gb.basis() {
                        body.push_str(&format!("element = {}\n", b));
                    }
                    Outcome {
                        code: 0,
                        stdout: if flags.structured {
                            format!("{}{}", header("ideal-eliminate", flags.seed, gb.key()), body)
                        } else {
                            body
                        },
                        stderr: String::new(),
                    }
                }
                Err(e) => failure(&e.to_string()),
            }
        }
        "dim" => {
            let ring = match ring_from_flags(flags) {
                Ok(r) => r,
                Err(e) => return usage(&e),
            };
            let gens = match gens_from_flags(flags, &ring) {
                Ok(g) => g,
                Err(e) => return failure(&e),
            };
            match groebner(&gens, MonomialOrder::Grevlex)
                .and_then(|gb| krull_dimension(&gb))
            {
                Ok(d) => Outcome {
                    code: 0,
                    stdout: format!("dimension = {}\n", d),
                    stderr: String::new(),
                },
                Err(e) => failure(&e.to_string()),
            }
        }
        other => usage(&format!("unknown ideal operation `{}`", other)),
    }
}

fn run_sg(flags: &Flags, stdin: &str) -> Outcome {
    let (op, rest) = match sub_and_rest(flags) {
        Ok(v) => v,
        Err(e) => return usage(&e),
    };
    match op.as_str() {
        "example" => {
            let name = match rest.first() {
                Some(n) => n.as_str(),
                None => return usage("sg example needs a name"),
            };
            let param = ["n", "m", "r"]
                .iter()
                .find_map(|k| flags.named.get(*k))
                .and_then(|v| v.parse::<u32>().ok());
            match examples::builtin_example(name, param) {
                Ok(config) => Outcome {
                    code: 0,
                    stdout: print_config(&config),
                    stderr: String::new(),
                },
                Err(e) => usage(&e.to_string()),
            }
        }
        "verify" | "span" | "potential" | "sets" | "reduce" => {
            let text = match read_input_from(flags, &rest, stdin) {
                Ok(t) => t,
                Err(e) => return usage(&e),
            };
            let config = match parse_config(&text) {
                Ok(c) => c,
                Err(e) => return failure(&e.to_string()),
            };
            let input_hash = config.content_hash();
            match op.as_str() {
                "verify" => match verify_sg(&config, flags.seed, flags.jobs.max(1)) {
                    Ok(report) => {
                        let head = header("sg-verify", flags.seed, input_hash);
                        let body = report.to_structured();
                        let text_out = format!(
                            "pass = {}\nspan = {}\npairs = {}\n{}{}",
                            report.pass,
                            report.span_dimension,
                            report.pairs.len(),
                            report
                                .notes
                                .iter()
                                .map(|n| format!("note = {}\n", n))
                                .collect::<String>(),
                            report
                                .violations
                                .iter()
                                .map(|v| format!("violation = {}\n", v))
                                .collect::<String>(),
                        );
                        Outcome {
                            code: if report.pass { 0 } else { 1 },
                            stdout: if flags.structured {
                                format!("{}{}", head, body)
                            } else {
                                text_out
                            },
                            stderr: String::new(),
                        }
                    }
                    Err(e) => failure(&e.to_string()),
                },
                "span" => match span_dimension(&config.elements()) {
                    Ok(s) => Outcome {
                        code: 0,
                        stdout: format!("span = {}\n", s),
                        stderr: String::new(),
                    },
                    Err(e) => failure(&e.to_string()),
                },
                "potential" => {
                    let general = match config.kind {
                        ConfigKind::General => config,
                        ConfigKind::Basic => match config.embed_basic(None) {
                            Ok(g) => g,
                            Err(e) => return failure(&e.to_string()),
                        },
                    };
                    Outcome {
                        code: 0,
                        stdout: format!("potential = {}\n", potential(&general)),
                        stderr: String::new(),
                    }
                }
                "sets" => {
                    let general = match config.kind {
                        ConfigKind::General => config,
                        ConfigKind::Basic => match config.embed_basic(None) {
                            Ok(g) => g,
                            Err(e) => return failure(&e.to_string()),
                        },
                    };
                    let index: usize = match flags.named.get("index") {
                        Some(v) => match v.parse() {
                            Ok(i) => i,
                            Err(_) => return usage("bad --index"),
                        },
                        None => return usage("sg sets needs --index"),
                    };
                    let search = flags
                        .named
                        .get("search-degree")
                        .and_then(|v| v.parse().ok())
                        .unwrap_or(3u64);
                    match sg_sets(&general, index, search) {
                        Ok(sets) => {
                            let head = header("sg-sets", flags.seed, input_hash);
                            let body = sets.to_structured();
                            let code = if sets.unknown.is_empty() { 0 } else { 3 };
                            Outcome {
                                code,
                                stdout: if flags.structured {
                                    format!("{}{}", head, body)
                                } else {
                                    body
                                },
                                stderr: String::new(),
                            }
                        }
                        Err(e) => failure(&e.to_string()),
                    }
                }
                "reduce" => {
                    let general = match config.kind {
                        ConfigKind::General => config,
                        ConfigKind::Basic => match config.embed_basic(None) {
                            Ok(g) => g,
                            Err(e) => return failure(&e.to_string()),
                        },
                    };
                    let ring = general.ring().clone();
                    let cover_texts = match flags.named.get("cover") {
                        Some(c) => c,
                        None => return usage("sg reduce needs --cover \"f; g; ...\" or --cover auto[:N]"),
                    };
                    let cover = if let Some(rest) = cover_texts.strip_prefix("auto") {
                        let extra: usize = rest
                            .strip_prefix(':')
                            .and_then(|v| v.parse().ok())
                            .unwrap_or(0);
                        match rsg_core::quotient::suggest_covering_space(&general, extra) {
                            Ok(c) => c,
                            Err(e) => return failure(&e.to_string()),
                        }
                    } else {
                        let cover_polys: Result<Vec<Polynomial>, String> = cover_texts
                            .split(';')
                            .map(|s| {
                                parse_polynomial(s.trim(), &ring).map_err(|e| e.to_string())
                            })
                            .collect();
                        let cover_polys = match cover_polys {
                            Ok(p) => p,
                            Err(e) => return failure(&e),
                        };
                        match GradedVectorSpace::new(&ring, cover_polys) {
                            Ok(c) => c,
                            Err(e) => return failure(&e.to_string()),
                        }
                    };
                    match degree_reduce_pipeline(&general, &cover, flags.seed) {
                        Ok(outcome) => {
                            let trace_line = outcome.trace.to_structured();
                            if let Some(path) = flags.named.get("trace") {
                                use std::io::Write;
                                if let Ok(mut f) = std::fs::OpenOptions::new()
                                    .create(true)
                                    .append(true)
                                    .open(path)
                                {
                                    let _ = f.write_all(trace_line.as_bytes());
                                }
                            }
                            let code = if outcome.trace.uncertified.is_empty() { 0 } else { 3 };
                            let mut out = print_config(&outcome.config);
                            out.push_str(&trace_line);
                            Outcome {
                                code,
                                stdout: out,
                                stderr: String::new(),
                            }
                        }
                        Err(e) => failure(&e.to_string()),
                    }
                }
                _ => unreachable!(),
            }
        }
        "robust" => {
            // robust linear check: forms from a config file, delta/c flags
            let text = match read_input_from(flags, &rest, stdin) {
                Ok(t) => t,
                Err(e) => return usage(&e),
            };
            let config = match parse_config(&text) {
                Ok(c) => c,
                Err(e) => return failure(&e.to_string()),
            };
            let delta = match flags.named.get("delta") {
                Some(v) => match parse_rational(v) {
                    Ok(d) => d,
                    Err(e) => return usage(&e),
                },
                None => BigRational::from_integer(1.into()),
            };
            let w: Option<Vec<Polynomial>> = match flags.named.get("w") {
                Some(texts) => {
                    let parsed: Result<Vec<Polynomial>, _> = texts
                        .split(';')
                        .filter(|s| !s.trim().is_empty())
                        .map(|s| parse_polynomial(s.trim(), config.ring()))
                        .collect();
                    match parsed {
                        Ok(v) => Some(v),
                        Err(e) => return failure(&e.to_string()),
                    }
                }
                None => None,
            };
            match robust_linear_check(&config.forms, &delta, w.as_deref()) {
                Ok(rep) => Outcome {
                    code: if rep.violated { 1 } else { 0 },
                    stdout: rep.to_structured(),
                    stderr: String::new(),
                },
                Err(e) => failure(&e.to_string()),
            }
        }
        other => usage(&format!("unknown sg operation `{}`", other)),
    }
}

fn run_strength(flags: &Flags, stdin: &str) -> Outcome {
    let (op, rest) = match sub_and_rest(flags) {
        Ok(v) => v,
        Err(e) => return usage(&e),
    };
    match op.as_str() {
        "quadric" | "search" => {
            let ring = match ring_from_flags(flags) {
                Ok(r) => r,
                Err(e) => return usage(&e),
            };
            let poly_text = match rest.first() {
                Some(t) => t,
                None => return usage("missing polynomial"),
            };
            let p = match parse_polynomial(poly_text, &ring) {
                Ok(p) => p,
                Err(e) => return failure(&e.to_string()),
            };
            let est = if op == "quadric" {
                quadric_strength(&p)
            } else {
                collapse_search(&p, flags.radius)
            };
            match est {
                Ok(est) => {
                    let mut body = format!(
                        "lower = {}\nupper = {}\n",
                        est.lower, est.upper
                    );
                    for m in &est.methods {
                        body.push_str(&format!("method = {}\n", m));
                    }
                    if let Some(cert) = &est.certificate {
                        body.push_str(&format!(
                            "certificate_products = {}\nformal = {}\n",
                            cert.count(),
                            cert.is_formal()
                        ));
                    }
                    Outcome {
                        code: 0,
                        stdout: body,
                        stderr: String::new(),
                    }
                }
                Err(e) => failure(&e.to_string()),
            }
        }
        "strengthen" => {
            let text = match read_input_from(flags, &rest, stdin) {
                Ok(t) => t,
                Err(e) => return usage(&e),
            };
            let query = match parse_query(&text) {
                Ok(q) => q,
                Err(e) => return failure(&e.to_string()),
            };
            let space = match GradedVectorSpace::new(&query.ring, query.generators.clone()) {
                Ok(s) => s,
                Err(e) => return failure(&e.to_string()),
            };
            let demand: u64 = match flags.named.get("demand") {
                Some(v) => match v.parse() {
                    Ok(d) => d,
                    Err(_) => return usage("bad --demand"),
                },
                None => 1,
            };
            let policy = match flags.named.get("policy").map(|s| s.as_str()) {
                None | Some("abort") => GuardPolicy::Abort,
                Some("assume") => GuardPolicy::AssumeStrongAfterRadius,
                Some(other) => return usage(&format!("unknown policy `{}`", other)),
            };
            let b = BoundFunction::Constant(BigUint::from(demand));
            match strengthen(&space, &b, flags.radius, policy) {
                Ok(out) => {
                    let mut body = String::new();
                    for step in &out.trace {
                        body.push_str(&format!(
                            "replaced degree={} form={} products={} minimal={} dims={:?}\n",
                            step.degree,
                            step.removed,
                            step.factors.len(),
                            step.minimal_collapse,
                            step.new_dims
                        ));
                    }
                    body.push_str(&format!(
                        "dims = {:?}\n",
                        out.space.dimension_sequence()
                    ));
                    for f in out.space.basis() {
                        body.push_str(&format!("basis = {}\n", f));
                    }
                    let code = if out.assumed_degrees.is_empty() { 0 } else { 3 };
                    for a in &out.assumed_degrees {
                        body.push_str(&format!("assumed_degree = {}\n", a));
                    }
                    Outcome {
                        code,
                        stdout: body,
                        stderr: String::new(),
                    }
                }
                Err(rsg_core::strength::StrengthError::Undecided(m)) => Outcome {
                    code: 3,
                    stdout: String::new(),
                    stderr: format!("undecided: {}\n", m),
                },
                Err(e) => failure(&e.to_string()),
            }
        }
        other => usage(&format!("unknown strength operation `{}`", other)),
    }
}

fn run_bounds(flags: &Flags) -> Outcome {
    let (op, _rest) = match sub_and_rest(flags) {
        Ok(v) => v,
        Err(e) => return usage(&e),
    };
    let get_u64 = |key: &str| -> Result<u64, String> {
        flags
            .named
            .get(key)
            .ok_or_else(|| format!("missing --{}", key))?
            .parse()
            .map_err(|_| format!("bad --{}", key))
    };
    match op.as_str() {
        "lambda" => {
            let d = match get_u64("d") {
                Ok(v) => v,
                Err(e) => return usage(&e),
            };
            let n = flags
                .named
                .get("n")
                .and_then(|v| v.parse().ok())
                .unwrap_or(0u64);
            let table = match flags.named.get("atable") {
                Some(path) => match std::fs::read_to_string(path)
                    .map_err(|e| e.to_string())
                    .and_then(|t| ATable::parse(&t).map_err(|e| e.to_string()))
                {
                    Ok(t) => t,
                    Err(e) => return failure(&e),
                },
                None => ATable::toy(4, d.max(4)),
            };
            match eval_lambda(d, n, &table, flags.budget) {
                LambdaOutcome::Value(v) => Outcome {
                    code: 0,
                    stdout: format!("{}\n", v),
                    stderr: if table.toy_default && d >= 2 {
                        "note: using the toy default A-table (A = eta + d), not a published table\n"
                            .into()
                    } else {
                        String::new()
                    },
                },
                LambdaOutcome::BudgetExceeded { level, steps_used } => Outcome {
                    code: 3,
                    stdout: format!(
                        "BUDGET_EXCEEDED level={} steps={} budget={}\n",
                        level, steps_used, flags.budget
                    ),
                    stderr: String::new(),
                },
            }
        }
        "c" | "h" => {
            let delta: Vec<BigUint> = match flags.named.get("delta") {
                Some(v) => v
                    .split_whitespace()
                    .map(|s| s.parse::<u64>().map(BigUint::from))
                    .collect::<Result<_, _>>()
                    .unwrap_or_default(),
                None => return usage("missing --delta \"d1 d2 ...\""),
            };
            if delta.is_empty() {
                return usage("bad --delta");
            }
            // base function: a constant demand, or B_eta from an A-table
            let b = match flags.named.get("atable") {
                Some(path) => {
                    let eta = flags
                        .named
                        .get("eta")
                        .and_then(|v| v.parse().ok())
                        .unwrap_or(3u64);
                    match std::fs::read_to_string(path)
                        .map_err(|e| e.to_string())
                        .and_then(|t| ATable::parse(&t).map_err(|e| e.to_string()))
                    {
                        Ok(t) => BoundFunction::BEta {
                            table: std::sync::Arc::new(t),
                            eta,
                        },
                        Err(e) => return failure(&e),
                    }
                }
                None => {
                    let demand = flags
                        .named
                        .get("demand")
                        .and_then(|v| v.parse().ok())
                        .unwrap_or(1u64);
                    BoundFunction::Constant(BigUint::from(demand))
                }
            };
            let mut budget = BoundBudget::new(flags.budget);
            let result = if op == "c" {
                eval_c(&b, &delta, &mut budget)
            } else {
                eval_h(&b, &delta, &mut budget)
            };
            match result {
                Ok(v) => Outcome {
                    code: 0,
                    stdout: format!(
                        "{}\n",
                        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
                    ),
                    stderr: String::new(),
                },
                Err(rsg_core::bounds::BoundError::BudgetExceeded { level }) => Outcome {
                    code: 3,
                    stdout: format!("BUDGET_EXCEEDED level={}\n", level),
                    stderr: String::new(),
                },
                Err(e) => failure(&e.to_string()),
            }
        }
        "epsilon" => {
            let d = match get_u64("d") {
                Ok(v) => v,
                Err(e) => return usage(&e),
            };
            match eval_epsilon_k(d) {
                Ok((eps, k)) => {
                    let (strict, lower) = epsilon_sanity(d).unwrap();
                    Outcome {
                        code: 0,
                        stdout: format!(
                            "epsilon = {}\nk = {}\nstrict = {}\nk_above_6d3 = {}\n",
                            eps, k, strict, lower
                        ),
                        stderr: String::new(),
                    }
                }
                Err(e) => failure(&e.to_string()),
            }
        }
        "scalar" => {
            let name = match flags.named.get("name") {
                Some(n) => n.as_str(),
                None => return usage("missing --name"),
            };
            let query = match name {
                "nonradical" => match get_u64("d") {
                    Ok(d) => ScalarBoundQuery::NonRadical { d },
                    Err(e) => return usage(&e),
                },
                "grad" => match get_u64("d") {
                    Ok(d) => ScalarBoundQuery::Grad { d },
                    Err(e) => return usage(&e),
                },
                "bezout" => match (get_u64("p"), get_u64("q")) {
                    (Ok(p), Ok(q)) => ScalarBoundQuery::Bezout { p, q },
                    _ => return usage("bezout needs --p and --q"),
                },
                "linear-sg" => match flags.named.get("delta") {
                    Some(v) => match parse_rational(v) {
                        Ok(delta) => ScalarBoundQuery::LinearSg { delta },
                        Err(e) => return usage(&e),
                    },
                    None => return usage("linear-sg needs --delta"),
                },
                "robust-linear" => {
                    let c = match get_u64("c") {
                        Ok(c) => c,
                        Err(e) => return usage(&e),
                    };
                    match flags.named.get("delta") {
                        Some(v) => match parse_rational(v) {
                            Ok(delta) => ScalarBoundQuery::RobustLinear { c, delta },
                            Err(e) => return usage(&e),
                        },
                        None => return usage("robust-linear needs --delta"),
                    }
                }
                other => return usage(&format!("unknown scalar bound `{}`", other)),
            };
            match scalar_bound(&query) {
                Ok(v) => Outcome {
                    code: 0,
                    stdout: format!("{}\n", v),
                    stderr: String::new(),
                },
                Err(e) => failure(&e.to_string()),
            }
        }
        "lifting" => {
            let dim: BigUint = match flags.named.get("dim") {
                Some(v) => match v.parse() {
                    Ok(d) => d,
                    Err(_) => return usage("bad --dim"),
                },
                None => return usage("missing --dim"),
            };
            let variant = match flags.named.get("variant").map(|s| s.as_str()) {
                None | Some("basic") => LiftingVariant::Basic {
                    d: match get_u64("d") {
                        Ok(v) => v,
                        Err(e) => return usage(&e),
                    },
                    n: match get_u64("n") {
                        Ok(v) => v,
                        Err(e) => return usage(&e),
                    },
                },
                Some("general") => {
                    let extra: Vec<u64> = match flags.named.get("extra") {
                        Some(v) => v
                            .split_whitespace()
                            .map(|s| s.parse().unwrap_or(1))
                            .collect(),
                        None => vec![],
                    };
                    LiftingVariant::General {
                        d: match get_u64("d") {
                            Ok(v) => v,
                            Err(e) => return usage(&e),
                        },
                        n: match get_u64("n") {
                            Ok(v) => v,
                            Err(e) => return usage(&e),
                        },
                        extra_degrees: extra,
                    }
                }
                Some("preserves-sg") => LiftingVariant::PreservesSg {
                    d: match get_u64("d") {
                        Ok(v) => v,
                        Err(e) => return usage(&e),
                    },
                    e: match get_u64("e") {
                        Ok(v) => v,
                        Err(e) => return usage(&e),
                    },
                    dim_v: match get_u64("n") {
                        Ok(v) => v,
                        Err(e) => return usage(&e),
                    },
                    dim_u: match get_u64("udim") {
                        Ok(v) => v,
                        Err(e) => return usage(&e),
                    },
                },
                Some(other) => return usage(&format!("unknown lifting variant `{}`", other)),
            };
            Outcome {
                code: 0,
                stdout: format!("{}\n", lifting_bound(&variant, &dim)),
                stderr: String::new(),
            }
        }
        "compose" => {
            let d = match get_u64("d") {
                Ok(v) => v,
                Err(e) => return usage(&e),
            };
            let e = match get_u64("e") {
                Ok(v) => v,
                Err(er) => return usage(&er),
            };
            let ell = match get_u64("ell") {
                Ok(v) => v,
                Err(er) => return usage(&er),
            };
            let udim = flags
                .named
                .get("udim")
                .and_then(|v| v.parse().ok())
                .unwrap_or(0u64);
            let nlist: Vec<u64> = match flags.named.get("nlist") {
                Some(v) => v
                    .split_whitespace()
                    .filter_map(|s| s.parse().ok())
                    .collect(),
                None => vec![],
            };
            let dim: BigUint = match flags.named.get("dim") {
                Some(v) => match v.parse() {
                    Ok(d) => d,
                    Err(_) => return usage("bad --dim"),
                },
                None => return usage("missing --dim"),
            };
            match compose_bound(d, e, ell, &nlist, udim, &dim) {
                Ok(v) => Outcome {
                    code: 0,
                    stdout: format!("{}\n", v),
                    stderr: String::new(),
                },
                Err(er) => usage(&er.to_string()),
            }
        }
        other => usage(&format!("unknown bounds operation `{}`", other)),
    }
}
