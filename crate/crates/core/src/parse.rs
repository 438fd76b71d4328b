//! Text grammars for rational functions, K₀ elements, 1-forms, skew
//! polynomials and matrix JSON.
//!
//! Expressions share one syntax: `+ - * / ^`, parentheses, decimal
//! integers. Atoms are `t` for rational functions, `t` and `T` for skew
//! polynomials, and bracketed symbols `[1]`, `[E]`, `[L2 E]` for K₀
//! elements.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde_json::Value;
use thiserror::Error;

use crate::cartier::OneForm;
use crate::connections::ExactTriple;
use crate::exact_arith::{check_prime, RatFun};
use crate::lambda_ring::{K0Element, LambdaSymbol};
use crate::matrix::RatMatrix;
use crate::ore::{ore_mul, SkewPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: {}", self.pos, self.msg)
    }
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        msg: msg.into(),
    })
}

/// Value-specific pieces of the expression grammar.
trait Algebra {
    type V: Clone;
    fn int(&self, n: &BigInt) -> Self::V;
    fn ident(&self, name: &str) -> Option<Self::V>;
    fn bracket(&self, _content: &str) -> Option<Self::V> {
        None
    }
    fn add(&self, a: Self::V, b: Self::V) -> Self::V;
    fn neg(&self, a: Self::V) -> Self::V;
    fn mul(&self, a: Self::V, b: Self::V) -> Self::V;
    fn div(&self, a: Self::V, b: Self::V) -> Result<Self::V, String>;
    fn pow(&self, a: Self::V, e: i64) -> Result<Self::V, String>;
}

struct Parser<'a, A: Algebra> {
    src: &'a str,
    pos: usize,
    alg: &'a A,
}

impl<'a, A: Algebra> Parser<'a, A> {
    fn new(src: &'a str, alg: &'a A) -> Self {
        Parser { src, pos: 0, alg }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn parse_all(mut self) -> Result<A::V, ParseError> {
        if self.peek().is_none() {
            return err(self.pos, "empty expression");
        }
        let v = self.expr()?;
        if let Some(c) = self.peek() {
            return err(self.pos, format!("unexpected `{c}`"));
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<A::V, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let rhs = self.term()?;
                acc = self.alg.add(acc, rhs);
            } else if self.eat('-') {
                let rhs = self.term()?;
                acc = self.alg.add(acc, self.alg.neg(rhs));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<A::V, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let rhs = self.unary()?;
                acc = self.alg.mul(acc, rhs);
            } else if self.peek() == Some('/') {
                let at = self.pos;
                self.pos += 1;
                let rhs = self.unary()?;
                acc = self.alg.div(acc, rhs).or_else(|m| err(at, m))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<A::V, ParseError> {
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(self.alg.neg(v));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<A::V, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let at = self.pos;
            let negative = self.eat('-');
            self.skip_ws();
            let n = self.integer()?;
            let e: i64 = n.try_into().or_else(|_| err(at, "exponent too large"))?;
            let e = if negative { -e } else { e };
            return self.alg.pow(base, e).or_else(|m| err(at, m));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let start = self.pos;
        while self.peek_raw().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return err(start, "expected an integer");
        }
        Ok(self.src[start..self.pos].parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<A::V, ParseError> {
        let at = self.pos;
        match self.peek() {
            None => err(at, "unexpected end of input"),
            Some('(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return err(self.pos, "expected `)`");
                }
                Ok(v)
            }
            Some('[') => {
                let start = self.pos;
                let Some(close) = self.src[start..].find(']') else {
                    return err(start, "unclosed `[`");
                };
                let content = &self.src[start + 1..start + close];
                self.pos = start + close + 1;
                self.alg
                    .bracket(content.trim())
                    .map_or_else(|| err(start, format!("unknown symbol `[{content}]`")), Ok)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(self.alg.int(&n))
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self
                    .peek_raw()
                    .is_some_and(|c| c.is_alphanumeric() || c == '_')
                {
                    self.pos += self.peek_raw().map_or(1, char::len_utf8);
                }
                let name = &self.src[start..self.pos];
                self.alg
                    .ident(name)
                    .map_or_else(|| err(start, format!("unknown identifier `{name}`")), Ok)
            }
            Some(c) => err(at, format!("unexpected `{c}`")),
        }
    }
}

fn reduce_int(n: &BigInt, p: u32) -> i64 {
    let r = n % BigInt::from(p);
    i64::try_from(r).expect("small residue")
}

struct RatAlg(u32);

impl Algebra for RatAlg {
    type V = RatFun;
    fn int(&self, n: &BigInt) -> RatFun {
        RatFun::from_int(reduce_int(n, self.0), self.0)
    }
    fn ident(&self, name: &str) -> Option<RatFun> {
        (name == "t").then(|| RatFun::t(self.0))
    }
    fn add(&self, a: RatFun, b: RatFun) -> RatFun {
        &a + &b
    }
    fn neg(&self, a: RatFun) -> RatFun {
        -a
    }
    fn mul(&self, a: RatFun, b: RatFun) -> RatFun {
        &a * &b
    }
    fn div(&self, a: RatFun, b: RatFun) -> Result<RatFun, String> {
        a.checked_div(&b).map_err(|e| e.to_string())
    }
    fn pow(&self, a: RatFun, e: i64) -> Result<RatFun, String> {
        a.pow(e).map_err(|e| e.to_string())
    }
}

struct ElementAlg;

impl Algebra for ElementAlg {
    type V = K0Element;
    fn int(&self, n: &BigInt) -> K0Element {
        K0Element::from_bigint(n.clone())
    }
    fn ident(&self, _: &str) -> Option<K0Element> {
        None
    }
    fn bracket(&self, content: &str) -> Option<K0Element> {
        if content == "1" {
            return Some(K0Element::one());
        }
        let mut words = content.split_whitespace();
        let (first, second) = (words.next()?, words.next());
        if words.next().is_some() {
            return None;
        }
        let (degree, name) = match second {
            None => (1, first),
            Some(name) => (first.strip_prefix('L')?.parse().ok()?, name),
        };
        if degree == 0 || !crate::lambda_ring::valid_name(name) {
            return None;
        }
        Some(K0Element::symbol(LambdaSymbol::new(name, degree)))
    }
    fn add(&self, a: K0Element, b: K0Element) -> K0Element {
        a + b
    }
    fn neg(&self, a: K0Element) -> K0Element {
        -a
    }
    fn mul(&self, a: K0Element, b: K0Element) -> K0Element {
        a * b
    }
    fn div(&self, _: K0Element, _: K0Element) -> Result<K0Element, String> {
        Err("division is not defined in K₀".into())
    }
    fn pow(&self, a: K0Element, e: i64) -> Result<K0Element, String> {
        let e =
            u32::try_from(e).map_err(|_| "exponent must be a nonnegative integer".to_string())?;
        Ok(a.pow(e))
    }
}

struct SkewAlg(u32);

impl SkewAlg {
    fn scalar(&self, v: &SkewPoly) -> Option<RatFun> {
        match v.degree() {
            None => Some(RatFun::zero(self.0)),
            Some(0) => Some(v.coeff(0)),
            _ => None,
        }
    }
}

impl Algebra for SkewAlg {
    type V = SkewPoly;
    fn int(&self, n: &BigInt) -> SkewPoly {
        SkewPoly::constant(RatFun::from_int(reduce_int(n, self.0), self.0))
    }
    fn ident(&self, name: &str) -> Option<SkewPoly> {
        match name {
            "t" => Some(SkewPoly::constant(RatFun::t(self.0))),
            "T" => Some(SkewPoly::var(self.0)),
            _ => None,
        }
    }
    fn add(&self, a: SkewPoly, b: SkewPoly) -> SkewPoly {
        a.add(&b)
    }
    fn neg(&self, a: SkewPoly) -> SkewPoly {
        a.neg()
    }
    fn mul(&self, a: SkewPoly, b: SkewPoly) -> SkewPoly {
        ore_mul(&a, &b).expect("same characteristic")
    }
    /// `a / c` is `a · c^{-1}` for a nonzero scalar `c`.
    fn div(&self, a: SkewPoly, b: SkewPoly) -> Result<SkewPoly, String> {
        let c = self.scalar(&b).ok_or("can only divide by elements of K")?;
        let inv = c.inverse().ok_or("division by zero")?;
        Ok(ore_mul(&a, &SkewPoly::constant(inv)).expect("same characteristic"))
    }
    fn pow(&self, a: SkewPoly, e: i64) -> Result<SkewPoly, String> {
        if e >= 0 {
            return Ok((0..e).fold(SkewPoly::one(self.0), |acc, _| {
                ore_mul(&acc, &a).expect("same characteristic")
            }));
        }
        let c = self
            .scalar(&a)
            .ok_or("negative powers need an element of K")?;
        let r = c.pow(e).map_err(|e| e.to_string())?;
        Ok(SkewPoly::constant(r))
    }
}

pub fn parse_ratfun(text: &str, p: u32) -> Result<RatFun, ParseError> {
    check_prime(p).or_else(|e| err(0, e.to_string()))?;
    Parser::new(text, &RatAlg(p)).parse_all()
}

pub fn parse_element(text: &str) -> Result<K0Element, ParseError> {
    Parser::new(text, &ElementAlg).parse_all()
}

pub fn parse_skewpoly(text: &str, p: u32) -> Result<SkewPoly, ParseError> {
    check_prime(p).or_else(|e| err(0, e.to_string()))?;
    Parser::new(text, &SkewAlg(p)).parse_all()
}

/// `<ratfun> dt`, e.g. `(2/t) dt`, `t*dt`, `dt`, or `0`.
pub fn parse_form(text: &str, p: u32) -> Result<OneForm, ParseError> {
    let trimmed = text.trim_end();
    let Some(body) = trimmed.strip_suffix("dt") else {
        if parse_ratfun(trimmed, p)?.is_zero() {
            return Ok(OneForm(RatFun::zero(p)));
        }
        return err(trimmed.len(), "expected a form `<ratfun> dt`");
    };
    let body = body.trim_end();
    let body = body.strip_suffix('*').unwrap_or(body).trim_end();
    if body.is_empty() {
        return Ok(OneForm(RatFun::one(p)));
    }
    Ok(OneForm(parse_ratfun(body, p)?))
}

fn json_p(v: &Value, p_default: Option<u32>) -> Result<u32, ParseError> {
    let p = match v.get("p") {
        Some(x) => {
            let n = x.as_u64().ok_or(ParseError {
                pos: 0,
                msg: "`p` must be a positive integer".into(),
            })?;
            u32::try_from(n).or_else(|_| err(0, "`p` too large"))?
        }
        None => match p_default {
            Some(p) => p,
            None => return err(0, "missing `p`"),
        },
    };
    check_prime(p).or_else(|e| err(0, e.to_string()))?;
    if let Some(d) = p_default.filter(|&d| d != p) {
        return err(0, format!("`p` is {p} but --p is {d}"));
    }
    Ok(p)
}

fn json_matrix(v: &Value, p: u32, what: &str) -> Result<RatMatrix, ParseError> {
    let rows = v.as_array().ok_or(ParseError {
        pos: 0,
        msg: format!("{what}: expected an array of rows"),
    })?;
    let mut out = vec![];
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or(ParseError {
            pos: 0,
            msg: format!("{what}: row {i} is not an array"),
        })?;
        let mut parsed = vec![];
        for (j, x) in row.iter().enumerate() {
            let f = match x {
                Value::String(s) => parse_ratfun(s, p),
                Value::Number(n) => parse_ratfun(&n.to_string(), p),
                _ => err(0, "entries must be strings or integers"),
            }
            .map_err(|e| ParseError {
                pos: e.pos,
                msg: format!("{what}[{i}][{j}]: {}", e.msg),
            })?;
            parsed.push(f);
        }
        out.push(parsed);
    }
    RatMatrix::from_rows(p, out).or_else(|e| err(0, format!("{what}: {e}")))
}

fn json_value(text: &str) -> Result<Value, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError {
        pos: e.column(),
        msg: format!("invalid JSON at line {}: {e}", e.line()),
    })
}

/// `{"p": 3, "matrix": [["t", "1/t"], ...]}`, or a bare array of rows when
/// `p_default` is given.
pub fn parse_matrix(text: &str, p_default: Option<u32>) -> Result<(u32, RatMatrix), ParseError> {
    let v = json_value(text)?;
    if v.is_array() {
        let p = json_p(&Value::Null, p_default)?;
        return Ok((p, json_matrix(&v, p, "matrix")?));
    }
    let p = json_p(&v, p_default)?;
    let m = v.get("matrix").ok_or(ParseError {
        pos: 0,
        msg: "missing `matrix`".into(),
    })?;
    Ok((p, json_matrix(m, p, "matrix")?))
}

/// `{"p": 3, "a_u": [[..]], "b": [[..]], "a_w": [[..]]}`.
pub fn parse_triple(text: &str, p_default: Option<u32>) -> Result<ExactTriple, ParseError> {
    let v = json_value(text)?;
    let p = json_p(&v, p_default)?;
    let field = |name: &str| -> Result<RatMatrix, ParseError> {
        let m = v.get(name).ok_or(ParseError {
            pos: 0,
            msg: format!("missing `{name}`"),
        })?;
        json_matrix(m, p, name)
    };
    let (a_u, a_w) = (field("a_u")?, field("a_w")?);
    let b = match v.get("b") {
        Some(_) => field("b")?,
        None => RatMatrix::zeros(p, a_u.rows(), a_w.rows()),
    };
    ExactTriple::new(a_u, b, a_w).or_else(|e| err(0, e.to_string()))
}

/// Inverse of [`parse_matrix`] for a given characteristic.
pub fn matrix_to_json(p: u32, m: &RatMatrix) -> String {
    let rows: Vec<Value> = m
        .to_rows()
        .into_iter()
        .map(|r| {
            Value::Array(
                r.into_iter()
                    .map(|x| Value::String(x.to_string()))
                    .collect(),
            )
        })
        .collect();
    serde_json::json!({"p": p, "matrix": rows}).to_string()
}
