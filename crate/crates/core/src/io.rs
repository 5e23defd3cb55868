//! Text formats: `cdc-code/1` files for codes and JSON for bound tables.
//!
//! A code file is a header of `key: value` lines followed by the
//! codewords. Each codeword is its RREF basis, `k` lines of `n`
//! space-separated integers, preceded by a blank line. The modulus lists
//! the coefficients of the defining polynomial from the constant term up.
//!
//! ```text
//! format: cdc-code/1
//! q: 4
//! p: 2
//! e: 2
//! modulus: 1 1 1
//! n: 6
//! k: 2
//! d: 4
//! count: 16
//! provenance: lifted MRD, n=6 k=2 delta=2
//! level: multilevel 110000 0 16
//!
//! 1 0 0 2 3 1
//! 0 1 3 1 2 1
//!
//! ...
//! ```

use std::io::{BufRead, Write};
use std::path::Path;

use crate::algebra::{Field, FiniteField, MatGF, Subspace};
use crate::bounds::BoundRecord;
use crate::cdc::{GroupKind, SubspaceCode};
use crate::error::{Error, Result};

pub const CODE_FORMAT: &str = "cdc-code/1";

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

fn bits(v: &[u8]) -> String {
    v.iter().map(|b| char::from(b'0' + b)).collect()
}

fn encode_row(row: &[u8]) -> String {
    row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Writes a code in the `cdc-code/1` format.
pub fn write_code<W: Write>(code: &SubspaceCode, mut w: W) -> Result<()> {
    let f = &code.field;
    let modulus: Vec<String> = f.modulus().iter().map(|c| c.to_string()).collect();
    writeln!(w, "format: {}", CODE_FORMAT)?;
    writeln!(w, "q: {}", f.order())?;
    writeln!(w, "p: {}", f.characteristic())?;
    writeln!(w, "e: {}", f.degree())?;
    writeln!(w, "modulus: {}", modulus.join(" "))?;
    writeln!(w, "n: {}", code.n)?;
    writeln!(w, "k: {}", code.k)?;
    writeln!(w, "d: {}", code.min_distance)?;
    writeln!(w, "count: {}", code.len())?;
    writeln!(w, "provenance: {}", code.provenance.replace('\n', " "))?;
    for g in &code.groups {
        match &g.kind {
            GroupKind::Multilevel { vector } => writeln!(w, "level: multilevel {} {} {}", bits(vector), g.start, g.len)?,
            GroupKind::RightLift => writeln!(w, "level: right_lift {} {}", g.start, g.len)?,
            GroupKind::Generic => writeln!(w, "level: generic {} {}", g.start, g.len)?,
        }
    }
    for c in &code.codewords {
        writeln!(w)?;
        let b = c.basis();
        for r in 0..b.rows() {
            writeln!(w, "{}", encode_row(b.row(r)))?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_code_file(code: &SubspaceCode, path: &Path) -> Result<()> {
    let f = std::fs::File::create(path)?;
    write_code(code, std::io::BufWriter::new(f))
}

fn parse_usize(line: usize, s: &str) -> Result<usize> {
    s.trim().parse().or_else(|_| parse_err(line, format!("expected an integer, got {:?}", s)))
}

fn parse_row(line: usize, s: &str, n: usize, f: &Field) -> Result<Vec<u8>> {
    let vals: Vec<u32> = s
        .split_whitespace()
        .map(|t| t.parse::<u32>())
        .collect::<std::result::Result<_, _>>()
        .or_else(|_| parse_err(line, format!("bad row {:?}", s)))?;
    if vals.len() != n {
        return parse_err(line, format!("row has {} entries, expected {}", vals.len(), n));
    }
    vals.into_iter()
        .map(|v| f.check(v as u64).or_else(|_| parse_err(line, format!("entry {} outside GF({})", v, f.order()))))
        .collect()
}

/// Reads a `cdc-code/1` file. Every codeword must be a full-rank RREF
/// matrix of the declared shape.
pub fn read_code<R: BufRead>(r: R) -> Result<SubspaceCode> {
    let mut lines = r.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut header: Vec<(usize, String, String)> = Vec::new();
    for (no, l) in lines.by_ref() {
        let l = l?;
        if l.trim().is_empty() {
            break;
        }
        let (k, v) = match l.split_once(':') {
            Some(kv) => kv,
            None => return parse_err(no, format!("expected `key: value`, got {:?}", l)),
        };
        header.push((no, k.trim().to_string(), v.trim().to_string()));
    }
    let get = |key: &str| -> Result<(usize, &str)> {
        header
            .iter()
            .find(|(_, k, _)| k == key)
            .map(|(no, _, v)| (*no, v.as_str()))
            .ok_or_else(|| Error::Parse { line: 0, msg: format!("missing header {:?}", key) })
    };
    let (no, fmt) = get("format")?;
    if fmt != CODE_FORMAT {
        return parse_err(no, format!("unsupported format {:?}", fmt));
    }
    let (no, q) = get("q")?;
    let q = parse_usize(no, q)? as u64;
    let (p, e) = crate::algebra::prime_power(q).or_else(|_| parse_err(no, format!("{} is not a prime power", q)))?;
    for (key, want) in [("p", p), ("e", e)] {
        if let Ok((no, v)) = get(key) {
            if parse_usize(no, v)? != want as usize {
                return parse_err(no, format!("{} disagrees with q = {}", key, q));
            }
        }
    }
    let field = match get("modulus") {
        Ok((no, m)) => {
            let coeffs: Vec<u8> = m
                .split_whitespace()
                .map(|c| c.parse::<u8>())
                .collect::<std::result::Result<_, _>>()
                .or_else(|_| parse_err(no, format!("bad modulus {:?}", m)))?;
            if e == 1 {
                FiniteField::new(q)?
            } else {
                FiniteField::with_modulus(p, e, &coeffs).or_else(|err| parse_err(no, err.to_string()))?
            }
        }
        Err(_) => FiniteField::new(q)?,
    };
    let (no, n) = get("n")?;
    let n = parse_usize(no, n)?;
    let (no, k) = get("k")?;
    let k = parse_usize(no, k)?;
    let (no, d) = get("d")?;
    let d = parse_usize(no, d)?;
    let (count_line, count) = get("count")?;
    let count = parse_usize(count_line, count)?;
    let mut code = SubspaceCode::new(&field, n, k, d);
    code.provenance = get("provenance").map(|(_, v)| v.to_string()).unwrap_or_default();
    let mut levels = Vec::new();
    for (no, key, v) in &header {
        if key != "level" {
            continue;
        }
        let parts: Vec<&str> = v.split_whitespace().collect();
        let (kind, rest) = match parts.as_slice() {
            ["multilevel", vec, rest @ ..] => {
                let vector: Vec<u8> = vec.bytes().map(|b| b.wrapping_sub(b'0')).collect();
                if vector.len() != n || vector.iter().any(|&b| b > 1) {
                    return parse_err(*no, format!("bad identifying vector {:?}", vec));
                }
                (GroupKind::Multilevel { vector }, rest)
            }
            ["right_lift", rest @ ..] => (GroupKind::RightLift, rest),
            ["generic", rest @ ..] => (GroupKind::Generic, rest),
            _ => return parse_err(*no, format!("bad level line {:?}", v)),
        };
        if rest.len() != 2 {
            return parse_err(*no, "level needs a start and a length");
        }
        levels.push((*no, kind, parse_usize(*no, rest[0])?, parse_usize(*no, rest[1])?));
    }
    let mut words = Vec::with_capacity(count);
    let mut block: Vec<Vec<u8>> = Vec::new();
    let mut block_line = 0;
    let mut finish = |block: &mut Vec<Vec<u8>>, at: usize| -> Result<()> {
        if block.is_empty() {
            return Ok(());
        }
        if block.len() != k {
            return parse_err(at, format!("codeword has {} rows, expected {}", block.len(), k));
        }
        let m = MatGF::from_rows(&field, block)?;
        let s = Subspace::from_rref(m).or_else(|_| parse_err(at, "codeword is not a full-rank RREF"))?;
        words.push(s);
        block.clear();
        Ok(())
    };
    for (no, l) in lines {
        let l = l?;
        if l.trim().is_empty() {
            finish(&mut block, block_line)?;
            continue;
        }
        if block.is_empty() {
            block_line = no;
        }
        block.push(parse_row(no, &l, n, &field)?);
    }
    finish(&mut block, block_line)?;
    if words.len() != count {
        return parse_err(count_line, format!("header says {} codewords, found {}", count, words.len()));
    }
    let mut next = 0;
    for (no, kind, start, len) in levels {
        if start != next || start + len > words.len() {
            return parse_err(no, "levels must tile the codewords in order");
        }
        code.push_group(kind, words[start..start + len].to_vec());
        next = start + len;
    }
    if next < words.len() {
        code.push_group(GroupKind::Generic, words[next..].to_vec());
    }
    Ok(code)
}

pub fn read_code_file(path: &Path) -> Result<SubspaceCode> {
    let f = std::fs::File::open(path)?;
    read_code(std::io::BufReader::new(f))
}

/// Reads a JSON array of bound records.
pub fn read_table(path: &Path) -> Result<Vec<BoundRecord>> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

pub fn write_table(rows: &[BoundRecord], path: &Path) -> Result<()> {
    let s = serde_json::to_string_pretty(rows)?;
    std::fs::write(path, s + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdc::lifted_mrd_code;

    #[test]
    fn round_trip_gf4() {
        let f = FiniteField::new(4).unwrap();
        let code = lifted_mrd_code(&f, 6, 2, 2, 1 << 16).unwrap();
        let mut buf = Vec::new();
        write_code(&code, &mut buf).unwrap();
        let back = read_code(&buf[..]).unwrap();
        assert_eq!(back.codewords, code.codewords);
        assert_eq!(back.groups, code.groups);
        assert_eq!((back.n, back.k, back.min_distance), (6, 2, 4));
        assert_eq!(back.field.modulus(), f.modulus());
    }

    #[test]
    fn rejects_non_rref_and_bad_count() {
        let text = "format: cdc-code/1\nq: 2\nn: 4\nk: 2\nd: 2\ncount: 1\n\n1 1 0 0\n1 0 0 0\n";
        assert!(matches!(read_code(text.as_bytes()), Err(Error::Parse { line: 8, .. })));
        let text = "format: cdc-code/1\nq: 2\nn: 4\nk: 2\nd: 2\ncount: 2\n\n1 0 0 0\n0 1 0 0\n";
        assert!(matches!(read_code(text.as_bytes()), Err(Error::Parse { line: 6, .. })));
        let text = "format: cdc-code/1\nq: 2\nn: 4\nk: 2\nd: 2\ncount: 1\n\n1 0 0 0\n0 1 0 2\n";
        assert!(matches!(read_code(text.as_bytes()), Err(Error::Parse { line: 9, .. })));
    }

    #[test]
    fn json_values_are_strings() {
        let r = crate::bounds::bound_cor2(2, 2).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert!(s.contains("\"value\":\"4642\""));
        let back: BoundRecord = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
