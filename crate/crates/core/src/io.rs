//! Tab-separated graph files.
//!
//! ```text
//! n   4   directed
//! 0   1   1
//! 2   3   0.5
//! ```
//!
//! The header gives the vertex count and orientation; each further line is
//! one edge `u v w` with 0-based endpoints. Weights are decimals (`2`,
//! `0.25`, `1e-3`) or fractions (`1/3`). Undirected files list each edge
//! once. Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{Digraph, Weight};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Exact value of a decimal or `p/q` literal.
pub fn parse_weight(s: &str) -> Option<BigRational> {
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.parse().ok()?;
        let q: BigInt = q.parse().ok()?;
        return (!q.is_zero()).then(|| BigRational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits_only = |t: &str| t.chars().all(|c| c.is_ascii_digit());
    let unsigned = int.strip_prefix(['-', '+']).unwrap_or(int);
    if !digits_only(unsigned) || !digits_only(frac) || (unsigned.is_empty() && frac.is_empty()) {
        return None;
    }
    let num: BigInt = format!("{int}{frac}").trim_start_matches('+').parse().ok()?;
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    Some(if shift >= 0 {
        BigRational::from_integer(num * Pow::pow(&ten, shift as u32))
    } else {
        BigRational::new(num, Pow::pow(&ten, shift.unsigned_abs()))
    })
}

/// Decimal when the denominator divides a power of ten, otherwise `p/q`.
pub fn format_weight(w: &Weight) -> String {
    let mut den = w.denom().clone();
    let (two, five) = (BigInt::from(2), BigInt::from(5));
    let (mut twos, mut fives) = (0u32, 0u32);
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", w.numer(), w.denom());
    }
    let places = twos.max(fives);
    if places == 0 {
        return w.numer().to_string();
    }
    let scaled = (w * BigRational::from_integer(Pow::pow(&BigInt::from(10), places))).to_integer();
    let sign = if scaled.is_negative() { "-" } else { "" };
    let digits = format!("{:0>width$}", scaled.abs(), width = places as usize + 1);
    let (i, f) = digits.split_at(digits.len() - places as usize);
    format!("{sign}{i}.{f}")
}

pub fn parse_graph(text: &str) -> Result<Digraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (n, undirected) = match fields.as_slice() {
        ["n", count, kind] => {
            let n: usize = count.parse().map_err(|_| parse_err(hline, format!("bad vertex count {count:?}")))?;
            let undirected = match *kind {
                "directed" => false,
                "undirected" => true,
                other => return Err(parse_err(hline, format!("expected directed or undirected, got {other:?}"))),
            };
            (n, undirected)
        }
        _ => return Err(parse_err(hline, "header must be `n <count> <directed|undirected>`")),
    };
    let mut builder = Digraph::builder(n, undirected);
    let mut seen = BTreeSet::new();
    for (line, l) in lines {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let [u, v, w] = fields.as_slice() else {
            return Err(parse_err(line, "edge lines need three fields `u v w`"));
        };
        let vertex = |s: &str| -> Result<usize> {
            let x: usize = s.parse().map_err(|_| parse_err(line, format!("bad vertex {s:?}")))?;
            if x >= n {
                return Err(parse_err(line, format!("vertex {x} out of range for n = {n}")));
            }
            Ok(x)
        };
        let (u, v) = (vertex(u)?, vertex(v)?);
        let w = parse_weight(w).ok_or_else(|| parse_err(line, format!("bad weight {w:?}")))?;
        if !w.is_positive() {
            return Err(parse_err(line, format!("weight must be positive, got {}", format_weight(&w))));
        }
        let key = if undirected { (u.min(v), u.max(v)) } else { (u, v) };
        if !seen.insert(key) {
            return Err(parse_err(line, format!("duplicate edge ({u}, {v})")));
        }
        builder.add_edge(u, v, w)?;
    }
    Ok(builder.build())
}

pub fn serialize_graph(g: &Digraph) -> String {
    let kind = if g.is_undirected() { "undirected" } else { "directed" };
    let mut out = format!("n\t{}\t{kind}\n", g.n());
    for (u, v, w) in g.edges() {
        if g.is_undirected() && u > v {
            continue;
        }
        out.push_str(&format!("{u}\t{v}\t{}\n", format_weight(w)));
    }
    out
}
