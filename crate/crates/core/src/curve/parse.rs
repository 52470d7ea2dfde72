use std::str::FromStr;

use super::{Point, WeierstrassModel};
use crate::arith::{Integer, Rational};
use crate::error::{Error, Result};

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

/// Parses `n` or `n/d` starting at byte offset `pos` of the full input.
fn parse_rational(tok: &str, pos: usize) -> Result<Rational> {
    let lead = tok.len() - tok.trim_start().len();
    let tok_t = tok.trim();
    if tok_t.is_empty() {
        return err(pos, "expected a number");
    }
    let (n, d) = match tok_t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (tok_t, None),
    };
    let num = Integer::from_str(n).or_else(|_| err(pos + lead, format!("bad integer '{n}'")))?;
    let den = match d {
        Some(d) => {
            let off = pos + lead + tok_t.find('/').unwrap_or(0) + 1;
            let v = Integer::from_str(d).or_else(|_| err(off, format!("bad denominator '{d}'")))?;
            if v == Integer::from(0) {
                return err(off, "zero denominator");
            }
            v
        }
        None => Integer::from(1),
    };
    Ok(Rational::new(num, den))
}

/// Splits `s` on `sep`, yielding each piece with its byte offset.
fn split_with_pos(s: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if c == sep {
            out.push((start, &s[start..i]));
            start = i + c.len_utf8();
        }
    }
    out.push((start, &s[start..]));
    out
}

/// Strips one pair of matching outer brackets, returning the inner offset.
fn strip_brackets(s: &str, open: char, close: char) -> Option<(usize, &str)> {
    let lead = s.len() - s.trim_start().len();
    let t = s.trim();
    if t.starts_with(open) && t.ends_with(close) && t.len() >= 2 {
        Some((lead + 1, &t[1..t.len() - 1]))
    } else {
        None
    }
}

/// `a1,a2,a3,a4,a6`, optionally in square brackets.
pub fn parse_model(s: &str) -> Result<WeierstrassModel> {
    let (base, body) = strip_brackets(s, '[', ']').unwrap_or((0, s));
    let parts = split_with_pos(body, ',');
    if parts.len() != 5 {
        return err(base, format!("expected 5 coefficients, found {}", parts.len()));
    }
    let mut a = Vec::with_capacity(5);
    for (off, tok) in parts {
        a.push(parse_rational(tok, base + off)?);
    }
    let m = WeierstrassModel::new(a[0].clone(), a[1].clone(), a[2].clone(), a[3].clone(), a[4].clone());
    m.invariants()?;
    Ok(m)
}

/// `(x,y);(x,y);...`; an empty string gives no points.
pub fn parse_points(s: &str) -> Result<Vec<Point>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut pts = Vec::new();
    for (off, chunk) in split_with_pos(s, ';') {
        let (inner_off, inner) = match strip_brackets(chunk, '(', ')') {
            Some(v) => v,
            None => return err(off, "expected '(x,y)'"),
        };
        let coords = split_with_pos(inner, ',');
        if coords.len() != 2 {
            return err(off, "a point needs exactly two coordinates");
        }
        let x = parse_rational(coords[0].1, off + inner_off + coords[0].0)?;
        let y = parse_rational(coords[1].1, off + inner_off + coords[1].0)?;
        pts.push(Point::Affine(x, y));
    }
    Ok(pts)
}
