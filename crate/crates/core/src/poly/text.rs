//! Text and JSON forms of [`LaurentPoly`].
//!
//! Text terms are written highest exponent first, e.g. `-A^5 - A^-3 + A^-7`
//! or `z^2*a^-1 + 2*a`. JSON is a list of `[exponents, coefficient]` pairs
//! in ascending exponent order; coefficients outside the `i64` range are
//! written as decimal strings.

use std::fmt;

use serde_json::Value;

use super::coeff::Coeff;
use super::laurent::{LaurentPoly, Ring};
use super::PolyError;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn write_exponent(out: &mut String, e: i32, scale: i32) {
    let g = gcd(e as i64, scale as i64) as i32;
    let (n, d) = (e / g, scale / g);
    if d == 1 {
        out.push_str(&n.to_string());
    } else {
        out.push_str(&format!("({n}/{d})"));
    }
}

/// Renders `p` with variable `i` shown as `names[i]` and every exponent
/// divided by `scale` (reduced fractions are written as `(p/q)`).
pub fn format_scaled(p: &LaurentPoly, names: &[&str], scale: i32) -> String {
    assert_eq!(names.len(), p.ring().arity());
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (e, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        let factors: Vec<String> = e
            .iter()
            .zip(names)
            .filter(|(&x, _)| x != 0)
            .map(|(&x, name)| {
                let mut f = name.to_string();
                if x != scale {
                    f.push('^');
                    write_exponent(&mut f, x, scale);
                }
                f
            })
            .collect();
        if factors.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    out
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.ring().vars().iter().map(String::as_str).collect();
        f.write_str(&format_scaled(self, &names, 1))
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Parse { pos: self.pos, msg: msg.into() }
    }

    fn digits(&mut self) -> Result<&'a str, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        // ASCII digits are valid UTF-8.
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn small_int(&mut self) -> Result<i64, PolyError> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let d = self.digits()?;
        let v: i64 = d.parse().map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphabetic() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        (start != self.pos).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }
}

/// Parses text written with variable `names[i]` standing for ring
/// variable `i` of `target`, multiplying every exponent by `scale`.
/// Exponents may be integers or `(p/q)` fractions as long as the scaled
/// value is an integer.
pub fn parse_scaled(text: &str, names: &[&str], target: &Ring, scale: i32) -> Result<LaurentPoly, PolyError> {
    assert_eq!(names.len(), target.arity());
    let mut cur = Cursor { src: text.as_bytes(), pos: 0 };
    let mut out = LaurentPoly::zero(target);
    if cur.peek().is_none() {
        return Err(cur.err("empty polynomial"));
    }
    let mut first = true;
    loop {
        let neg = if cur.eat(b'-') {
            true
        } else if cur.eat(b'+') || first {
            false
        } else if cur.peek().is_none() {
            break;
        } else {
            return Err(cur.err("expected '+' or '-'"));
        };
        first = false;
        let mut coeff = Coeff::ONE;
        let mut exps = vec![0i32; names.len()];
        let mut have_factor = false;
        if matches!(cur.peek(), Some(b'0'..=b'9')) {
            let d = cur.digits()?;
            coeff = d.parse().map_err(|_| cur.err("bad coefficient"))?;
            have_factor = true;
            if !cur.eat(b'*') && !matches!(cur.peek(), Some(b'a'..=b'z' | b'A'..=b'Z')) {
                if neg {
                    coeff = -coeff;
                }
                out = out + LaurentPoly::monomial(target, &exps, coeff);
                continue;
            }
        }
        loop {
            let at = cur.pos;
            let Some(id) = cur.ident() else {
                return Err(if have_factor { cur.err("expected variable after '*'") } else { cur.err("expected term") });
            };
            let vi = names.iter().position(|n| *n == id).ok_or(PolyError::Parse {
                pos: at,
                msg: format!("unknown variable '{id}'"),
            })?;
            let (num, den) = if cur.eat(b'^') {
                if cur.eat(b'(') {
                    let n = cur.small_int()?;
                    let d = if cur.eat(b'/') { cur.small_int()? } else { 1 };
                    if !cur.eat(b')') {
                        return Err(cur.err("expected ')'"));
                    }
                    (n, d)
                } else {
                    (cur.small_int()?, 1)
                }
            } else {
                (1, 1)
            };
            if den <= 0 {
                return Err(cur.err("exponent denominator must be positive"));
            }
            let scaled = num.checked_mul(scale as i64).ok_or_else(|| cur.err("exponent out of range"))?;
            if scaled % den != 0 {
                return Err(cur.err(format!("exponent {num}/{den} is not a multiple of 1/{scale}")));
            }
            let e = i32::try_from(scaled / den).map_err(|_| cur.err("exponent out of range"))?;
            exps[vi] = exps[vi].checked_add(e).ok_or_else(|| cur.err("exponent out of range"))?;
            if !cur.eat(b'*') {
                break;
            }
        }
        if neg {
            coeff = -coeff;
        }
        out = out + LaurentPoly::monomial(target, &exps, coeff);
    }
    Ok(out)
}

impl LaurentPoly {
    /// Parses the text form over `ring`.
    pub fn parse(text: &str, ring: &Ring) -> Result<LaurentPoly, PolyError> {
        let names: Vec<&str> = ring.vars().iter().map(String::as_str).collect();
        parse_scaled(text, &names, ring, 1)
    }

    /// JSON form: `[[exponents, coefficient], ...]`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .map(|(e, c)| {
                    let cv = match c.as_i64() {
                        Some(v) => Value::from(v),
                        None => Value::String(c.to_string()),
                    };
                    Value::Array(vec![Value::Array(e.iter().map(|&x| Value::from(x)).collect()), cv])
                })
                .collect(),
        )
    }

    pub fn from_json(v: &Value, ring: &Ring) -> Result<LaurentPoly, PolyError> {
        let bad = |m: &str| PolyError::Json(m.to_string());
        let arr = v.as_array().ok_or_else(|| bad("expected a list of terms"))?;
        let mut terms = Vec::with_capacity(arr.len());
        for t in arr {
            let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("term must be [exponents, coefficient]"))?;
            let exps = pair[0].as_array().ok_or_else(|| bad("exponents must be a list"))?;
            if exps.len() != ring.arity() {
                return Err(bad("exponent vector length does not match ring"));
            }
            let e: Vec<i32> = exps
                .iter()
                .map(|x| x.as_i64().and_then(|x| i32::try_from(x).ok()).ok_or_else(|| bad("bad exponent")))
                .collect::<Result<_, _>>()?;
            let c: Coeff = match &pair[1] {
                Value::Number(n) => n.as_i64().map(Coeff::from).ok_or_else(|| bad("bad coefficient"))?,
                Value::String(s) => s.parse().map_err(|_| bad("bad coefficient"))?,
                _ => return Err(bad("bad coefficient")),
            };
            if c.is_zero() {
                return Err(bad("zero coefficient"));
            }
            terms.push((e, c));
        }
        let p = LaurentPoly::from_terms(ring, terms);
        if p.len() != arr.len() {
            return Err(bad("repeated exponent vector"));
        }
        Ok(p)
    }
}
