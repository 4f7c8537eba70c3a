//! The JSON complex format and the codecs shared with reports.
//!
//! ```text
//! {"ring": {"coefficients": "Z" | "Q" | "Fp", "p": 7, "deck_rank": 1},
//!  "ranks": [1, 1],
//!  "boundaries": [{"degree": 1, "entries": [{"row": 0, "col": 0,
//!                  "terms": [[[0], -1], [[1], 1]]}]}]}
//! ```
//!
//! A term is `[exponents, numerator, denominator?]`. Integers outside the
//! 64-bit range are written as decimal strings. Output is canonical: keys
//! in schema order, entries sorted by `(row, col)`, terms sorted by
//! exponent, every degree listed, and the denominator omitted when it is 1.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Map, Value};
use sigma_core::complex::BasedFreeComplex;
use sigma_core::matrix::Matrix;
use sigma_core::{Character, CoeffRing, GroupRingElem, LatticePoint, Scalar};

use crate::error::{schema, CliError, CliResult};

pub fn int_value(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) => json!(x),
        None => Value::String(n.to_string()),
    }
}

pub fn parse_int(v: &Value, at: &str) -> CliResult<BigInt> {
    match v {
        Value::Number(n) => match (n.as_i64(), n.as_u64()) {
            (Some(x), _) => Ok(BigInt::from(x)),
            (None, Some(x)) => Ok(BigInt::from(x)),
            _ => schema(format!("{at}: {n} is not an integer; large integers must be strings")),
        },
        Value::String(s) => s.parse().map_err(|_| CliError::Schema(format!("{at}: {s:?} is not a decimal integer"))),
        _ => schema(format!("{at}: expected an integer")),
    }
}

fn parse_usize(v: &Value, at: &str) -> CliResult<usize> {
    v.as_u64().and_then(|x| usize::try_from(x).ok()).ok_or_else(|| CliError::Schema(format!("{at}: expected a non-negative integer")))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, at: &str) -> CliResult<&'a Value> {
    obj.get(key).ok_or_else(|| CliError::Schema(format!("{at}: missing field {key:?}")))
}

fn object<'a>(v: &'a Value, at: &str) -> CliResult<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| CliError::Schema(format!("{at}: expected an object")))
}

fn array<'a>(v: &'a Value, at: &str) -> CliResult<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| CliError::Schema(format!("{at}: expected an array")))
}

fn only_keys(obj: &Map<String, Value>, keys: &[&str], at: &str) -> CliResult<()> {
    match obj.keys().find(|k| !keys.contains(&k.as_str())) {
        Some(k) => schema(format!("{at}: unknown field {k:?}")),
        None => Ok(()),
    }
}

/// Integers as numbers, other rationals as `"p/q"`.
pub fn scalar_value(s: &Scalar) -> Value {
    if s.is_integer() {
        int_value(s.numer())
    } else {
        Value::String(s.to_string())
    }
}

pub fn parse_scalar(v: &Value, at: &str) -> CliResult<Scalar> {
    if let Value::String(s) = v {
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| CliError::Schema(format!("{at}: bad numerator in {s:?}")))?;
            let d: BigInt = d.trim().parse().map_err(|_| CliError::Schema(format!("{at}: bad denominator in {s:?}")))?;
            if d.is_zero() {
                return schema(format!("{at}: zero denominator"));
            }
            return Ok(Scalar::new(n, d));
        }
    }
    Ok(Scalar::from_integer(parse_int(v, at)?))
}

pub fn elem_value(e: &GroupRingElem) -> Value {
    Value::Array(
        e.terms()
            .iter()
            .map(|(g, c)| {
                let mut t = vec![json!(g.exponents()), int_value(c.numer())];
                if !c.denom().is_one() {
                    t.push(int_value(c.denom()));
                }
                Value::Array(t)
            })
            .collect(),
    )
}

pub fn parse_elem(v: &Value, ring: CoeffRing, rank: usize, at: &str) -> CliResult<GroupRingElem> {
    let mut terms = Vec::new();
    for (i, t) in array(v, at)?.iter().enumerate() {
        let at = format!("{at}[{i}]");
        let t = array(t, &at)?;
        if !(2..=3).contains(&t.len()) {
            return schema(format!("{at}: a term is [exponents, numerator, denominator?]"));
        }
        let exps = array(&t[0], &at)?
            .iter()
            .map(|e| e.as_i64().ok_or_else(|| CliError::Schema(format!("{at}: exponents must be 64-bit integers"))))
            .collect::<CliResult<Vec<i64>>>()?;
        if exps.len() != rank {
            return schema(format!("{at}: {} exponents for deck rank {rank}", exps.len()));
        }
        let num = parse_int(&t[1], &at)?;
        let den = match t.get(2) {
            Some(d) => parse_int(d, &at)?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return schema(format!("{at}: zero denominator"));
        }
        terms.push((LatticePoint::new(exps), Scalar::new(num, den)));
    }
    GroupRingElem::from_terms(ring, rank, terms).map_err(|e| CliError::Schema(format!("{at}: {e}")))
}

fn entries_value(m: &Matrix) -> Value {
    Value::Array(
        m.entries()
            .map(|((i, j), e)| {
                let mut o = Map::new();
                o.insert("row".into(), json!(i));
                o.insert("col".into(), json!(j));
                o.insert("terms".into(), elem_value(e));
                Value::Object(o)
            })
            .collect(),
    )
}

fn parse_entries(v: &Value, m: &mut Matrix, at: &str) -> CliResult<()> {
    let (ring, rank) = (m.ring(), m.deck_rank());
    for (k, e) in array(v, at)?.iter().enumerate() {
        let at = format!("{at}[{k}]");
        let o = object(e, &at)?;
        only_keys(o, &["row", "col", "terms"], &at)?;
        let i = parse_usize(field(o, "row", &at)?, &at)?;
        let j = parse_usize(field(o, "col", &at)?, &at)?;
        if i >= m.rows() || j >= m.cols() {
            return schema(format!("{at}: entry ({i},{j}) outside a {}x{} matrix", m.rows(), m.cols()));
        }
        if m.get_ref(i, j).is_some() {
            return schema(format!("{at}: entry ({i},{j}) given twice"));
        }
        m.set(i, j, parse_elem(field(o, "terms", &at)?, ring, rank, &format!("{at}.terms"))?);
    }
    Ok(())
}

/// `{"rows", "cols", "entries"}`, used for maps in reports.
pub fn matrix_value(m: &Matrix) -> Value {
    let mut o = Map::new();
    o.insert("rows".into(), json!(m.rows()));
    o.insert("cols".into(), json!(m.cols()));
    o.insert("entries".into(), entries_value(m));
    Value::Object(o)
}

pub fn parse_matrix(v: &Value, ring: CoeffRing, rank: usize, at: &str) -> CliResult<Matrix> {
    let o = object(v, at)?;
    let rows = parse_usize(field(o, "rows", at)?, at)?;
    let cols = parse_usize(field(o, "cols", at)?, at)?;
    let mut m = Matrix::zero(ring, rank, rows, cols);
    parse_entries(field(o, "entries", at)?, &mut m, &format!("{at}.entries"))?;
    Ok(m)
}

pub fn ring_value(ring: CoeffRing, deck_rank: usize) -> Value {
    let mut o = Map::new();
    match ring {
        CoeffRing::Integers => o.insert("coefficients".into(), json!("Z")),
        CoeffRing::Rationals => o.insert("coefficients".into(), json!("Q")),
        CoeffRing::PrimeField(p) => {
            o.insert("coefficients".into(), json!("Fp"));
            o.insert("p".into(), json!(p))
        }
    };
    o.insert("deck_rank".into(), json!(deck_rank));
    Value::Object(o)
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub fn parse_ring(v: &Value) -> CliResult<(CoeffRing, usize)> {
    let o = object(v, "ring")?;
    only_keys(o, &["coefficients", "p", "deck_rank"], "ring")?;
    let deck = parse_usize(field(o, "deck_rank", "ring")?, "ring.deck_rank")?;
    let p = o.get("p");
    let ring = match (field(o, "coefficients", "ring")?.as_str(), p) {
        (Some("Z"), None) => CoeffRing::Integers,
        (Some("Q"), None) => CoeffRing::Rationals,
        (Some("Fp"), Some(p)) => {
            let p = p.as_u64().ok_or_else(|| CliError::Schema("ring.p: expected a prime".into()))?;
            if !is_prime(p) {
                return schema(format!("ring.p: {p} is not prime"));
            }
            CoeffRing::PrimeField(p)
        }
        (Some("Fp"), None) => return schema("ring.p is required for Fp"),
        (Some("Z" | "Q"), Some(_)) => return schema("ring.p is only allowed for Fp"),
        _ => return schema("ring.coefficients must be \"Z\", \"Q\" or \"Fp\""),
    };
    Ok((ring, deck))
}

pub fn complex_value(c: &BasedFreeComplex) -> Value {
    let mut o = Map::new();
    o.insert("ring".into(), ring_value(c.ring(), c.deck_rank()));
    o.insert("ranks".into(), json!(c.ranks()));
    let boundaries = (1..=c.top_degree())
        .map(|q| {
            let mut b = Map::new();
            b.insert("degree".into(), json!(q));
            b.insert("entries".into(), entries_value(&c.boundary(q)));
            Value::Object(b)
        })
        .collect();
    o.insert("boundaries".into(), Value::Array(boundaries));
    Value::Object(o)
}

/// Parses and validates, rejecting `∂∂ ≠ 0` with the degree and entry.
/// A `domination` section, as written by `sigma dominate`, is ignored.
pub fn parse_complex(v: &Value) -> CliResult<BasedFreeComplex> {
    let o = object(v, "complex")?;
    only_keys(o, &["ring", "ranks", "boundaries", "domination"], "complex")?;
    let (ring, deck) = parse_ring(field(o, "ring", "complex")?)?;
    let ranks = array(field(o, "ranks", "complex")?, "ranks")?
        .iter()
        .enumerate()
        .map(|(i, r)| parse_usize(r, &format!("ranks[{i}]")))
        .collect::<CliResult<Vec<usize>>>()?;
    if ranks.is_empty() {
        return schema("ranks: at least one degree is required");
    }
    let mut mats: Vec<Option<Matrix>> = vec![None; ranks.len() - 1];
    for (k, b) in array(field(o, "boundaries", "complex")?, "boundaries")?.iter().enumerate() {
        let at = format!("boundaries[{k}]");
        let bo = object(b, &at)?;
        only_keys(bo, &["degree", "entries"], &at)?;
        let q = parse_usize(field(bo, "degree", &at)?, &at)?;
        if q == 0 || q >= ranks.len() {
            return schema(format!("{at}: degree {q} outside 1..={}", ranks.len() - 1));
        }
        if mats[q - 1].is_some() {
            return schema(format!("{at}: degree {q} given twice"));
        }
        let mut m = Matrix::zero(ring, deck, ranks[q - 1], ranks[q]);
        parse_entries(field(bo, "entries", &at)?, &mut m, &format!("{at}.entries"))?;
        mats[q - 1] = Some(m);
    }
    let boundaries = mats
        .into_iter()
        .enumerate()
        .map(|(i, m)| m.unwrap_or_else(|| Matrix::zero(ring, deck, ranks[i], ranks[i + 1])))
        .collect();
    let c = BasedFreeComplex::new_unchecked(ring, deck, ranks, boundaries);
    c.validate()?;
    Ok(c)
}

fn scalar_leaves(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(a) => a.iter().all(scalar_leaves),
        _ => true,
    }
}

fn write_pretty(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Object(o) if !o.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in o.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_pretty(x, indent + 1, out);
                out.push_str(if i + 1 < o.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        Value::Array(a) if !a.is_empty() && !scalar_leaves(v) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad);
                write_pretty(x, indent + 1, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        _ => out.push_str(&v.to_string()),
    }
}

/// Indented JSON with arrays of plain values kept on one line, plus a
/// trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut out = String::new();
    write_pretty(v, 0, &mut out);
    out.push('\n');
    out
}

pub fn complex_to_string(c: &BasedFreeComplex) -> String {
    to_pretty(&complex_value(c))
}

pub fn complex_from_str(s: &str) -> CliResult<BasedFreeComplex> {
    parse_complex(&serde_json::from_str(s)?)
}

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn from_file(path: &Path) -> CliResult<BasedFreeComplex> {
    complex_from_str(&read_text(path)?)
}

pub fn to_file(c: &BasedFreeComplex, path: &Path) -> CliResult<()> {
    write_text(path, &complex_to_string(c))
}

pub fn character_value(xi: &Character) -> Value {
    json!(xi.coeffs())
}

/// `"3,5"` or `"1/2,-1"`; the vector is normalized to its primitive
/// integer representative.
pub fn parse_direction(s: &str) -> CliResult<Character> {
    let coeffs = s
        .split(',')
        .map(|x| parse_scalar(&Value::String(x.trim().to_string()), "direction"))
        .collect::<CliResult<Vec<_>>>()
        .map_err(|_| CliError::Usage(format!("bad direction {s:?}")))?;
    Ok(Character::new(&coeffs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use sigma_core::builders::builtin;

    #[test]
    fn circle_is_written_canonically() {
        let c = builtin("circle", CoeffRing::Integers).unwrap();
        let text = complex_to_string(&c);
        assert!(text.contains("\"terms\": [[[0],-1],[[1],1]]"), "{text}");
        let back = complex_from_str(&text).unwrap();
        assert_eq!((back.ranks(), back.boundaries()), (c.ranks(), c.boundaries()));
    }

    #[test]
    fn big_integers_travel_as_strings() {
        let n: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(int_value(&n), Value::String(n.to_string()));
        assert_eq!(parse_int(&int_value(&n), "x").unwrap(), n);
    }

    #[test]
    fn rational_scalars_round_trip() {
        let s = Scalar::new(BigInt::from(-3), BigInt::from(4));
        assert_eq!(parse_scalar(&scalar_value(&s), "x").unwrap(), s);
    }

    #[test]
    fn directions_are_normalized() {
        assert_eq!(parse_direction("1/2, 1").unwrap(), Character::from_ints(&[1, 2]).unwrap());
        assert!(parse_direction("0,0").is_err());
    }
}
