//! Sparse multivariate polynomials under graded reverse lexicographic order,
//! and the text syntax used for presentations.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

pub type Monomial = Vec<u32>;

pub fn degree(m: &[u32]) -> u32 {
    m.iter().sum()
}

/// Graded reverse lexicographic comparison.
pub fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    match degree(a).cmp(&degree(b)) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            // smaller exponent in the last differing variable wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `b / a`, assuming `a | b`.
pub fn mono_div(b: &[u32], a: &[u32]) -> Monomial {
    b.iter().zip(a).map(|(x, y)| x - y).collect()
}

pub fn render_monomial(m: &[u32], vars: &[String]) -> String {
    let parts: Vec<String> = m
        .iter()
        .zip(vars)
        .filter(|(e, _)| **e > 0)
        .map(|(e, v)| {
            if *e == 1 {
                v.clone()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// A polynomial as a list of terms sorted by decreasing grevlex, with no zero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    nvars: usize,
    terms: Vec<(Monomial, Scalar)>,
}

impl Poly {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        Poly {
            field,
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(field: FieldSpec, nvars: usize, c: Scalar) -> Self {
        Poly::term(field, c, vec![0; nvars])
    }

    pub fn term(field: FieldSpec, c: Scalar, m: Monomial) -> Self {
        let nvars = m.len();
        if c.is_zero() {
            return Poly::zero(field, nvars);
        }
        Poly {
            field,
            nvars,
            terms: vec![(m, c)],
        }
    }

    pub fn var(field: FieldSpec, nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        Poly::term(field, field.one(), m)
    }

    /// Builds from arbitrary terms, combining duplicates.
    pub fn from_terms(field: FieldSpec, nvars: usize, terms: Vec<(Monomial, Scalar)>) -> Self {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), nvars);
            let e = acc.entry(m).or_insert_with(|| field.zero());
            *e += &c;
        }
        let mut terms: Vec<(Monomial, Scalar)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| grevlex(&b.0, &a.0));
        Poly {
            field,
            nvars,
            terms,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn constant_term(&self) -> Scalar {
        self.terms
            .iter()
            .find(|(m, _)| m.iter().all(|&e| e == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| degree(m)).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.combine(other, true)
    }

    fn combine(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                grevlex(&a[i].0, &b[j].0)
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field, self.nvars);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms,
        }
    }

    /// `c * m * self`; monomial multiplication preserves the term order.
    pub fn mul_term(&self, c: &Scalar, m: &[u32]) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field, self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(t, a)| (mono_mul(t, m), a * c))
            .collect();
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms,
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut acc = Poly::zero(self.field, self.nvars);
        for (m, c) in &other.terms {
            acc = acc.add(&self.mul_term(c, m));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(self.field, self.nvars, self.field.one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-self.field.one())
    }

    pub fn monic(&self) -> Poly {
        match self.leading_coefficient() {
            Some(c) => self.scale(&c.inv()),
            None => self.clone(),
        }
    }

    /// Formal partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m[i] > 0)
            .map(|(m, c)| {
                let mut m2 = m.clone();
                m2[i] -= 1;
                (m2, c * &self.field.from_i64(m[i] as i64))
            })
            .collect();
        Poly::from_terms(self.field, self.nvars, terms)
    }

    pub fn render(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = render_monomial(m, vars);
            if mono == "1" {
                s.push_str(&mag);
            } else if mag == "1" {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{mag}*{mono}"));
            }
        }
        s
    }
}

// ---------------------------------------------------------------------------
// Parsing

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    field: FieldSpec,
    vars: &'a [String],
}

fn perr<T>(position: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        position,
        message: message.into(),
    })
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, field: FieldSpec, vars: &'a [String]) -> Self {
        Parser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
            field,
            vars,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return perr(start, "expected an integer");
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    fn small_exponent(&mut self) -> Result<u32> {
        let at = {
            self.skip_ws();
            self.pos
        };
        let n = self.integer()?;
        u32::try_from(n).or_else(|_| perr(at, "exponent too large"))
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.field, self.nvars());
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn power(&mut self, base: Poly) -> Result<Poly> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let e = self.small_exponent()?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return perr(self.pos, "expected `)`");
                }
                self.pos += 1;
                self.power(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut den = BigInt::from(1);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    den = self.integer()?;
                }
                let c = self
                    .field
                    .from_ratio(&num, &den)
                    .or_else(|_| perr(at, "zero denominator"))?;
                let p = Poly::constant(self.field, self.nvars(), c);
                self.power(p)
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.bytes.len()
                    && (self.bytes[self.pos].is_ascii_alphanumeric()
                        || self.bytes[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                let Some(i) = self.vars.iter().position(|v| v == name) else {
                    return Err(Error::UndeclaredVariable(name.to_string()));
                };
                let v = Poly::var(self.field, self.nvars(), i);
                self.power(v)
            }
            Some(c) => perr(at, format!("unexpected character `{}`", c as char)),
            None => perr(at, "unexpected end of input"),
        }
    }
}

/// Parses a polynomial such as `3*x^2*y - 1/2*y^3` in the declared variables.
pub fn parse_poly(src: &str, vars: &[String], field: FieldSpec) -> Result<Poly> {
    let mut p = Parser::new(src, field, vars);
    let poly = p.expr()?;
    if let Some(c) = p.peek() {
        return perr(p.pos, format!("unexpected character `{}`", c as char));
    }
    Ok(poly)
}

/// Polynomial ring presentation `k[vars] / (relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyPresentation {
    pub field: FieldSpec,
    pub vars: Vec<String>,
    pub relations: Vec<Poly>,
}

impl PolyPresentation {
    pub fn new(field: FieldSpec, vars: &[&str], relations: &[&str]) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        validate_vars(&vars)?;
        let relations = relations
            .iter()
            .map(|r| parse_poly(r, &vars, field))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyPresentation::from_polys(field, vars, relations))
    }

    pub fn from_polys(field: FieldSpec, vars: Vec<String>, relations: Vec<Poly>) -> Self {
        let relations = relations.into_iter().filter(|p| !p.is_zero()).collect();
        PolyPresentation {
            field,
            vars,
            relations,
        }
    }

    /// Parses the inline form `k[x,y]/(x^2, x*y, y^2)`. The symbol before `[`
    /// is informational; the field is passed in.
    pub fn parse(src: &str, field: FieldSpec) -> Result<Self> {
        let open = src.find('[').map_or_else(|| perr(0, "expected `[`"), Ok)?;
        let close = src[open..]
            .find(']')
            .map(|i| i + open)
            .map_or_else(|| perr(src.len(), "expected `]`"), Ok)?;
        let vars: Vec<String> = src[open + 1..close]
            .split(',')
            .map(|v| v.trim().to_string())
            .filter(|v| !v.is_empty())
            .collect();
        validate_vars(&vars).map_err(|e| match e {
            Error::Parse { message, .. } => Error::Parse {
                position: open + 1,
                message,
            },
            other => other,
        })?;
        let rest = &src[close + 1..];
        let trimmed = rest.trim_start();
        let mut offset = close + 1 + (rest.len() - trimmed.len());
        if trimmed.is_empty() {
            return Ok(PolyPresentation {
                field,
                vars,
                relations: Vec::new(),
            });
        }
        let Some(after_slash) = trimmed.strip_prefix('/') else {
            return perr(offset, "expected `/` before relations");
        };
        offset += 1;
        let t2 = after_slash.trim_start();
        offset += after_slash.len() - t2.len();
        let Some(inner) = t2.strip_prefix('(') else {
            return perr(offset, "expected `(`");
        };
        offset += 1;
        let Some(end) = inner.rfind(')') else {
            return perr(src.len(), "expected `)`");
        };
        if !inner[end + 1..].trim().is_empty() {
            return perr(offset + end + 1, "trailing input after relations");
        }
        let body = &inner[..end];
        let mut relations = Vec::new();
        let mut depth = 0i32;
        let mut start = 0;
        let bytes = body.as_bytes();
        for i in 0..=bytes.len() {
            let at_end = i == bytes.len();
            if !at_end {
                match bytes[i] {
                    b'(' => depth += 1,
                    b')' => depth -= 1,
                    _ => {}
                }
            }
            if at_end || (bytes[i] == b',' && depth == 0) {
                let piece = &body[start..i];
                if !piece.trim().is_empty() {
                    let p = parse_poly(piece, &vars, field).map_err(|e| match e {
                        Error::Parse { position, message } => Error::Parse {
                            position: position + offset + start,
                            message,
                        },
                        other => other,
                    })?;
                    relations.push(p);
                }
                start = i + 1;
            }
        }
        Ok(PolyPresentation::from_polys(field, vars, relations))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn parse_poly(&self, src: &str) -> Result<Poly> {
        parse_poly(src, &self.vars, self.field)
    }

    pub fn render(&self) -> String {
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| r.render(&self.vars))
            .collect();
        format!("k[{}]/({})", self.vars.join(","), rels.join(", "))
    }

    /// True when every relation lies in the ideal generated by the variables.
    pub fn is_augmented(&self) -> bool {
        self.relations.iter().all(|r| r.constant_term().is_zero())
    }
}

fn validate_vars(vars: &[String]) -> Result<()> {
    for (i, v) in vars.iter().enumerate() {
        let ok = v
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return perr(0, format!("invalid variable name `{v}`"));
        }
        if vars[..i].contains(v) {
            return perr(0, format!("duplicate variable `{v}`"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn grevlex_order() {
        // x > y > z; degree first, then reverse lex
        assert_eq!(grevlex(&[1, 0, 0], &[0, 1, 0]), Ordering::Greater);
        assert_eq!(grevlex(&[0, 0, 2], &[1, 0, 0]), Ordering::Greater);
        // x*z vs y^2: y^2 wins (smaller z exponent)
        assert_eq!(grevlex(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
    }

    #[test]
    fn parse_and_render() {
        let q = FieldSpec::Rationals;
        let v = vars(&["x", "y"]);
        let p = parse_poly("3*x^2*y - 1/2*y^3", &v, q).unwrap();
        assert_eq!(p.render(&v), "3*x^2*y - 1/2*y^3");
        let p = parse_poly("(x+y)^2 - x^2 - y^2", &v, q).unwrap();
        assert_eq!(p.render(&v), "2*x*y");
        assert!(matches!(
            parse_poly("x + z", &v, q),
            Err(Error::UndeclaredVariable(_))
        ));
        match parse_poly("x + * y", &v, q) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inline_presentation() {
        let f = FieldSpec::prime(101).unwrap();
        let p = PolyPresentation::parse("k[x,y]/(x^2, x*y, y^2)", f).unwrap();
        assert_eq!(p.vars, vars(&["x", "y"]));
        assert_eq!(p.relations.len(), 3);
        assert!(p.is_augmented());
        match PolyPresentation::parse("k[x]/(x^2, x^)", f) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 13),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn derivative_in_char_five() {
        let f = FieldSpec::prime(5).unwrap();
        let v = vars(&["x"]);
        let p = parse_poly("x^5", &v, f).unwrap();
        assert!(p.derivative(0).is_zero());
    }
}
