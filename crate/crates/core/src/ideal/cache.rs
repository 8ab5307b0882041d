//! Process-wide basis cache, safe for concurrent insertion with
//! last-writer-wins semantics, plus a content-addressed file format.

use super::{GroebnerBasis, IdealError, MonomialOrder};
use crate::util::Fnv64;
use crate::poly::{parse_polynomial, Polynomial, RingContext, RingRef};
use crate::scalar::FieldDescriptor;
use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::sync::{Arc, Mutex, OnceLock};

const CACHE_FILE_HEADER: &str = "rsg-basis-cache v1";

fn cache() -> &'static Mutex<HashMap<u64, Arc<GroebnerBasis>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<GroebnerBasis>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(super) fn basis_key(ring: &RingRef, order: &MonomialOrder, gens: &[Polynomial]) -> u64 {
    let mut h = Fnv64::new();
    h.write_str(&ring.to_string());
    h.write_str(&order.to_string());
    for g in gens {
        h.write_str(&g.to_string());
    }
    h.finish()
}

pub(super) fn lookup(key: u64) -> Option<Arc<GroebnerBasis>> {
    cache().lock().unwrap().get(&key).cloned()
}

pub(super) fn store(key: u64, gb: Arc<GroebnerBasis>) {
    cache().lock().unwrap().insert(key, gb);
}

/// Number of cached bases (for reports).
pub fn cache_len() -> usize {
    cache().lock().unwrap().len()
}

/// Serialize the cache as content-addressed records. Cofactor records are
/// not persisted; reloaded bases answer membership queries but drop their
/// certificates.
pub fn save_cache_file(path: &str) -> std::io::Result<usize> {
    let map = cache().lock().unwrap();
    let mut keys: Vec<&u64> = map.keys().collect();
    keys.sort();
    let mut out = std::fs::File::create(path)?;
    writeln!(out, "{}", CACHE_FILE_HEADER)?;
    let mut written = 0;
    for k in keys {
        let gb = &map[k];
        writeln!(out, "record {:016x}", k)?;
        writeln!(out, "ring {}", gb.ring())?;
        writeln!(out, "order {}", gb.order())?;
        writeln!(out, "generators {}", gb.generators().len())?;
        for g in gb.generators() {
            writeln!(out, "  {}", g)?;
        }
        writeln!(out, "basis {}", gb.basis().len())?;
        for b in gb.basis() {
            writeln!(out, "  {}", b)?;
        }
        writeln!(out, "unit {}", gb.is_unit_ideal())?;
        written += 1;
    }
    Ok(written)
}

fn parse_ring_line(s: &str) -> Result<RingRef, IdealError> {
    // format: field[v1,v2:weight,...]
    let open = s.find('[').ok_or_else(|| bad("missing ["))?;
    let field_str = &s[..open];
    let field = if field_str == "rationals" {
        FieldDescriptor::Rationals
    } else if let Some(rest) = field_str.strip_prefix("cyclotomic(") {
        let n: u32 = rest
            .trim_end_matches(')')
            .parse()
            .map_err(|_| bad("bad cyclotomic order"))?;
        FieldDescriptor::cyclotomic(n)
    } else {
        return Err(bad("unknown field"));
    };
    let inner = s[open + 1..]
        .strip_suffix(']')
        .ok_or_else(|| bad("missing ]"))?;
    let mut vars = Vec::new();
    let mut weights = Vec::new();
    for piece in inner.split(',') {
        if piece.is_empty() {
            continue;
        }
        match piece.split_once(':') {
            Some((v, w)) => {
                vars.push(v.to_string());
                weights.push(w.parse().map_err(|_| bad("bad weight"))?);
            }
            None => {
                vars.push(piece.to_string());
                weights.push(1);
            }
        }
    }
    RingContext::new(vars, Some(weights), field).map_err(|e| bad(&e.to_string()))
}

fn bad(msg: &str) -> IdealError {
    IdealError::BadInput(format!("cache file: {}", msg))
}

/// Load records into the process cache; returns how many were inserted.
/// Later records win over earlier ones with the same key.
pub fn load_cache_file(path: &str) -> Result<usize, IdealError> {
    let file = std::fs::File::open(path).map_err(|e| bad(&e.to_string()))?;
    let mut lines = std::io::BufReader::new(file).lines();
    let header = lines
        .next()
        .ok_or_else(|| bad("empty file"))?
        .map_err(|e| bad(&e.to_string()))?;
    if header != CACHE_FILE_HEADER {
        return Err(bad(&format!("unsupported header `{}`", header)));
    }
    let mut count = 0;
    let mut pending: Vec<String> = Vec::new();
    for line in lines {
        let line = line.map_err(|e| bad(&e.to_string()))?;
        if line.starts_with("record ") && !pending.is_empty() {
            load_record(&pending)?;
            count += 1;
            pending.clear();
        }
        pending.push(line);
    }
    if !pending.is_empty() {
        load_record(&pending)?;
        count += 1;
    }
    Ok(count)
}

fn load_record(lines: &[String]) -> Result<(), IdealError> {
    let mut it = lines.iter();
    let _record = it.next().ok_or_else(|| bad("truncated record"))?;
    let ring_line = it.next().ok_or_else(|| bad("missing ring"))?;
    let ring = parse_ring_line(ring_line.strip_prefix("ring ").ok_or_else(|| bad("ring"))?)?;
    let order_line = it.next().ok_or_else(|| bad("missing order"))?;
    let order_str = order_line
        .strip_prefix("order ")
        .ok_or_else(|| bad("order"))?;
    let order = if order_str == "grevlex" {
        MonomialOrder::Grevlex
    } else if order_str == "lex" {
        MonomialOrder::Lex
    } else if let Some(rest) = order_str.strip_prefix("block[") {
        let inner = rest.strip_suffix(']').ok_or_else(|| bad("block"))?;
        let eliminated = inner
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map_err(|_| bad("block index")))
            .collect::<Result<Vec<usize>, _>>()?;
        MonomialOrder::Block { eliminated }
    } else {
        return Err(bad("unknown order"));
    };
    let ngen_line = it.next().ok_or_else(|| bad("missing generators"))?;
    let ngens: usize = ngen_line
        .strip_prefix("generators ")
        .ok_or_else(|| bad("generators"))?
        .parse()
        .map_err(|_| bad("generator count"))?;
    let mut generators = Vec::with_capacity(ngens);
    for _ in 0..ngens {
        let l = it.next().ok_or_else(|| bad("truncated generators"))?;
        generators.push(
            parse_polynomial(l.trim(), &ring).map_err(|e| bad(&e.to_string()))?,
        );
    }
    let nb_line = it.next().ok_or_else(|| bad("missing basis"))?;
    let nbasis: usize = nb_line
        .strip_prefix("basis ")
        .ok_or_else(|| bad("basis"))?
        .parse()
        .map_err(|_| bad("basis count"))?;
    let mut basis = Vec::with_capacity(nbasis);
    for _ in 0..nbasis {
        let l = it.next().ok_or_else(|| bad("truncated basis"))?;
        basis.push(parse_polynomial(l.trim(), &ring).map_err(|e| bad(&e.to_string()))?);
    }
    let unit_line = it.next().ok_or_else(|| bad("missing unit flag"))?;
    let is_unit = unit_line
        .strip_prefix("unit ")
        .ok_or_else(|| bad("unit"))?
        == "true";
    let key = basis_key(&ring, &order, &generators);
    let gb = Arc::new(GroebnerBasis {
        ring,
        order,
        generators,
        basis,
        cofactors: None,
        is_unit,
    });
    store(key, gb);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::groebner;
    use crate::poly::RingContext;

    #[test]
    fn cache_roundtrip_through_file() {
        let r = RingContext::standard(&["u", "v"], FieldDescriptor::Rationals);
        let gens = vec![
            parse_polynomial("u^2 - v", &r).unwrap(),
            parse_polynomial("v^3 - u", &r).unwrap(),
        ];
        let gb = groebner(&gens, MonomialOrder::Grevlex).unwrap();
        let dir = std::env::temp_dir().join("rsg-cache-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cache.txt");
        let n = save_cache_file(path.to_str().unwrap()).unwrap();
        assert!(n >= 1);
        let loaded = load_cache_file(path.to_str().unwrap()).unwrap();
        assert_eq!(loaded, n);
        // lookups hit after reload
        let hit = lookup(basis_key(&r, &MonomialOrder::Grevlex, &gens)).unwrap();
        assert_eq!(hit.basis(), gb.basis());
    }

    #[test]
    fn concurrent_insertion_last_writer_wins() {
        let r = RingContext::standard(&["w"], FieldDescriptor::Rationals);
        let handles: Vec<_> = (0..8)
            .map(|k| {
                let r = r.clone();
                std::thread::spawn(move || {
                    let g = parse_polynomial(&format!("w^{}", k + 2), &r).unwrap();
                    groebner(&[g], MonomialOrder::Grevlex).unwrap();
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
        assert!(cache_len() >= 8);
    }
}
