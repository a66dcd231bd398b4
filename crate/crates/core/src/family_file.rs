//! Text format for admissible families.
//!
//! ```text
//! # first example
//! ring Q[x,y,z] dual [X,Y,Z] mode graded
//! z = x
//! H[1] = Y^[3]-Z^[3]
//! H[2] = X*H[1] + Y*Z^[3]
//! ```
//!
//! Keys: `ring` (required, first), `z` (comma separated ring variables),
//! optional `d` and `t0` (checked against the rest), and entries
//! `H[l1,...,ld] = expr`. An expression may use earlier entries as `M*H[..]`
//! where `M` is a dual monomial with coefficient; `M*H` is the exponent shift.
//! Lines starting with `+` or `-` continue the previous entry. Entries below a
//! given one but not listed are filled in by contraction.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::admissible::{AdmissibleFamily, MultiIndex};
use crate::error::{Error, Result};
use crate::poly::DPPolynomial;
use crate::ring::{Ring, RingContext};

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::FamilyFile { line, msg: msg.into() }
}

fn line_err(line: usize, e: Error) -> Error {
    match e {
        Error::FamilyFile { .. } => e,
        other => err(line, other.to_string()),
    }
}

/// Reads a family file, filling in omitted entries below the given ones.
pub fn parse_family(text: &str) -> Result<AdmissibleFamily> {
    // join continuation lines, remembering where each logical line started
    let mut logical: Vec<(usize, String)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let continues = line.starts_with(['+', '-', '\u{2212}']);
        match logical.last_mut() {
            Some((_, prev)) if continues && prev.starts_with("H[") => {
                prev.push_str(line);
            }
            _ if continues => return Err(err(k + 1, "continuation line without an entry")),
            _ => logical.push((k + 1, line.to_string())),
        }
    }

    let mut ring: Option<Ring> = None;
    let mut z: Option<Vec<usize>> = None;
    let mut d_decl: Option<(usize, usize)> = None;
    let mut t0_decl: Option<(usize, u32)> = None;
    let mut given: BTreeMap<MultiIndex, DPPolynomial> = BTreeMap::new();
    let mut last_line = 0;

    for (ln, line) in logical {
        last_line = ln;
        if line.starts_with("ring") && !line.contains('=') {
            if ring.is_some() {
                return Err(err(ln, "ring declared twice"));
            }
            ring = Some(RingContext::parse(&line).map_err(|e| line_err(ln, e))?);
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(ln, format!("expected `key = value`, got `{line}`")))?;
        let key = key.trim();
        let value = value.trim();
        let Some(r) = ring.as_ref() else {
            return Err(err(ln, "the ring declaration must come first"));
        };
        match key {
            "z" => {
                let idx = value
                    .split(',')
                    .map(|name| {
                        let name = name.trim();
                        r.var_index(name)
                            .ok_or_else(|| err(ln, format!("unknown variable `{name}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                z = Some(idx);
            }
            "d" => {
                let d = value.parse().map_err(|_| err(ln, format!("bad d `{value}`")))?;
                d_decl = Some((ln, d));
            }
            "t0" => {
                let t = value.parse().map_err(|_| err(ln, format!("bad t0 `{value}`")))?;
                t0_decl = Some((ln, t));
            }
            _ if key.starts_with("H[") && key.ends_with(']') => {
                let Some(zs) = z.as_ref() else {
                    return Err(err(ln, "`z = ...` must precede the entries"));
                };
                let l = parse_index(&key[2..key.len() - 1], zs.len()).map_err(|m| err(ln, m))?;
                if given.contains_key(&l) {
                    return Err(err(ln, format!("H{l} given twice")));
                }
                let h = eval_entry(r, value, zs.len(), &given).map_err(|e| line_err(ln, e))?;
                given.insert(l, h);
            }
            _ => return Err(err(ln, format!("unknown key `{key}`"))),
        }
    }

    let ring = ring.ok_or_else(|| err(last_line.max(1), "missing ring declaration"))?;
    let z = z.ok_or_else(|| err(last_line.max(1), "missing `z = ...`"))?;
    if let Some((ln, d)) = d_decl {
        if d != z.len() {
            return Err(err(ln, format!("d = {d} but {} distinguished variables", z.len())));
        }
    }
    if given.is_empty() {
        return Err(err(last_line.max(1), "no entries"));
    }
    if let Some((ln, t0)) = t0_decl {
        if let Some(l) = given.keys().find(|l| l.total() > t0) {
            return Err(err(ln, format!("H{l} lies beyond t0 = {t0}")));
        }
    }
    AdmissibleFamily::complete(&ring, z, given).map_err(|e| line_err(last_line, e))
}

fn parse_index(s: &str, d: usize) -> std::result::Result<MultiIndex, String> {
    let v = s
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|_| format!("bad index `{s}`")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if v.len() != d {
        return Err(format!("index [{s}] has {} entries but d = {d}", v.len()));
    }
    MultiIndex::new(v).map_err(|e| e.to_string())
}

/// Splits at top-level `+`/`-`, keeping the sign with each piece.
fn split_terms(expr: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for c in expr.chars() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            '+' | '-' | '\u{2212}' if depth == 0 && !cur.trim().is_empty() => {
                out.push(std::mem::take(&mut cur));
            }
            _ => {}
        }
        cur.push(c);
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}

fn eval_entry(ring: &Ring, expr: &str, d: usize, given: &BTreeMap<MultiIndex, DPPolynomial>) -> Result<DPPolynomial> {
    let mut plain = String::new();
    let mut total = DPPolynomial::zero(ring);
    for term in split_terms(expr) {
        let Some(at) = term.find("H[") else {
            plain.push_str(&term);
            continue;
        };
        let close = term[at..]
            .find(']')
            .map(|k| at + k)
            .ok_or_else(|| Error::Precondition("unclosed `H[`".into()))?;
        if !term[close + 1..].trim().is_empty() {
            return Err(Error::Precondition(format!(
                "nothing may follow the entry in `{}`",
                term.trim()
            )));
        }
        let l = parse_index(&term[at + 2..close], d).map_err(Error::Precondition)?;
        let h = given
            .get(&l)
            .ok_or_else(|| Error::Precondition(format!("H{l} used before it is given")))?;
        let prefix = term[..at].trim().trim_end_matches('*').trim();
        let factor = match prefix {
            "" | "+" => DPPolynomial::one(ring),
            "-" | "\u{2212}" => -&DPPolynomial::one(ring),
            p => DPPolynomial::parse(ring, p)?,
        };
        if factor.len() != 1 {
            return Err(Error::Precondition(format!("`{prefix}` must be a single term")));
        }
        let (m, c) = factor.leading_term().expect("one term");
        total = &total + &h.shift(m).scale(c);
    }
    if !plain.trim().is_empty() {
        total = &total + &DPPolynomial::parse(ring, &plain)?;
    }
    Ok(total)
}

/// Canonical text of a family: every stored entry, in index order.
pub fn write_family(fam: &AdmissibleFamily) -> String {
    let mut out = String::new();
    let ring = fam.ring();
    let _ = writeln!(out, "{}", ring.declaration());
    let names: Vec<&str> = fam.z().iter().map(|&i| ring.var_names()[i].as_str()).collect();
    let _ = writeln!(out, "z = {}", names.join(", "));
    let _ = writeln!(out, "d = {}", fam.d());
    let _ = writeln!(out, "t0 = {}", fam.t0());
    for (l, h) in fam.entries() {
        let idx: Vec<String> = l.as_slice().iter().map(u32::to_string).collect();
        let _ = writeln!(out, "H[{}] = {}", idx.join(","), h);
    }
    out
}
