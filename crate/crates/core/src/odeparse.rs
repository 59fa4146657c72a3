//! Text form of quadratic equations.
//!
//! ```text
//! equation := deriv "=" expr
//! deriv    := "w" "'"* | "w^(" integer ")"
//! expr     := term (("+" | "-") term)*
//! term     := unary (("*" | "/") unary)*
//! unary    := ("-" | "+") unary | power
//! power    := atom ("^" ["-"] integer)?
//! atom     := number | "z" | deriv | "(" expr ")"
//! ```
//!
//! Numbers are integers or exact decimals. `w^(k)` is always a derivative;
//! any other `^` is a power. Division is only allowed by expressions free of
//! `w`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::diffpoly::{DiffPoly, Jet};
use crate::ode_model::QuadraticODE;
use crate::symcore::{BigRational, RationalFunction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("term of degree {degree} in w at offset {offset}; only quadratic equations are supported")]
    DegreeTooHigh { degree: u32, offset: usize },
    #[error("derivative w^({order}) at offset {offset} is not allowed here (order {limit})")]
    DerivativeTooHigh {
        order: usize,
        limit: usize,
        offset: usize,
    },
    #[error("malformed expression at offset {offset}: {message}")]
    MalformedExpression { offset: usize, message: String },
    #[error("coefficient at offset {offset} is not a rational function of z: {message}")]
    NonRationalCoefficient { offset: usize, message: String },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::DegreeTooHigh { offset, .. }
            | ParseError::DerivativeTooHigh { offset, .. }
            | ParseError::MalformedExpression { offset, .. }
            | ParseError::NonRationalCoefficient { offset, .. } => *offset,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigRational),
    Z,
    W(usize),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eq,
    End,
}

struct Lexer<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src,
            bytes: src.as_bytes(),
            pos: 0,
        }
    }

    fn malformed(&self, offset: usize, message: impl Into<String>) -> ParseError {
        ParseError::MalformedExpression {
            offset: clamp(offset, self.src.len()),
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let start = self.pos;
            let Some(&b) = self.bytes.get(self.pos) else {
                out.push((Tok::End, self.src.len()));
                return Ok(out);
            };
            let tok = match b {
                b'+' => {
                    self.pos += 1;
                    Tok::Plus
                }
                b'-' => {
                    self.pos += 1;
                    Tok::Minus
                }
                b'*' => {
                    self.pos += 1;
                    Tok::Star
                }
                b'/' => {
                    self.pos += 1;
                    Tok::Slash
                }
                b'^' => {
                    self.pos += 1;
                    Tok::Caret
                }
                b'(' => {
                    self.pos += 1;
                    Tok::LParen
                }
                b')' => {
                    self.pos += 1;
                    Tok::RParen
                }
                b'=' => {
                    self.pos += 1;
                    Tok::Eq
                }
                b'0'..=b'9' | b'.' => self.number(start)?,
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    while self.pos < self.bytes.len()
                        && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    match &self.src[start..self.pos] {
                        "z" => Tok::Z,
                        "w" => self.derivative(start)?,
                        other => Tok::Ident(other.to_string()),
                    }
                }
                _ => {
                    let ch = self.src[start..].chars().next().unwrap_or('?');
                    return Err(self.malformed(start, format!("unexpected character '{ch}'")));
                }
            };
            out.push((tok, start));
        }
    }

    fn number(&mut self, start: usize) -> Result<Tok, ParseError> {
        let int = self.digits();
        let mut value = if int.is_empty() {
            BigInt::zero()
        } else {
            int.parse::<BigInt>().expect("digits")
        };
        let mut den = BigInt::one();
        if self.bytes.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            let frac = self.digits();
            if int.is_empty() && frac.is_empty() {
                return Err(self.malformed(start, "expected a number"));
            }
            for d in frac.bytes() {
                value = value * 10 + BigInt::from(d - b'0');
                den *= 10;
            }
        }
        Ok(Tok::Num(BigRational::new(value, den)))
    }

    /// After `w`: primes, or the `^(k)` derivative form.
    fn derivative(&mut self, start: usize) -> Result<Tok, ParseError> {
        if self.bytes.get(self.pos) == Some(&b'^') && self.bytes.get(self.pos + 1) == Some(&b'(') {
            self.pos += 2;
            self.skip_ws();
            let d = self.digits();
            if d.is_empty() {
                return Err(self.malformed(self.pos, "expected derivative order"));
            }
            let order = d
                .parse::<usize>()
                .map_err(|_| self.malformed(start, "derivative order too large"))?;
            self.skip_ws();
            if self.bytes.get(self.pos) != Some(&b')') {
                return Err(self.malformed(self.pos, "expected ')' after derivative order"));
            }
            self.pos += 1;
            return Ok(Tok::W(order));
        }
        let mut order = 0;
        while self.bytes.get(self.pos) == Some(&b'\'') {
            order += 1;
            self.pos += 1;
        }
        Ok(Tok::W(order))
    }
}

fn clamp(offset: usize, len: usize) -> usize {
    offset.min(len.saturating_sub(1))
}

/// Parsed value with the offset where it starts.
struct Value {
    poly: DiffPoly,
    offset: usize,
}

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
    i: usize,
    order: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn offset(&self) -> usize {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn malformed(&self, offset: usize, message: impl Into<String>) -> ParseError {
        ParseError::MalformedExpression {
            offset: clamp(offset, self.src.len()),
            message: message.into(),
        }
    }

    fn non_rational(&self, offset: usize, message: impl Into<String>) -> ParseError {
        ParseError::NonRationalCoefficient {
            offset: clamp(offset, self.src.len()),
            message: message.into(),
        }
    }

    fn check_degree(&self, p: &DiffPoly, offset: usize) -> Result<(), ParseError> {
        match p.degree() {
            Some(d) if d > 2 => Err(ParseError::DegreeTooHigh {
                degree: d,
                offset: clamp(offset, self.src.len()),
            }),
            _ => Ok(()),
        }
    }

    fn expr(&mut self) -> Result<Value, ParseError> {
        let first = self.term()?;
        let offset = first.offset;
        let mut acc = first.poly;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?.poly);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?.poly);
                }
                _ => return Ok(Value { poly: acc, offset }),
            }
        }
    }

    fn term(&mut self) -> Result<Value, ParseError> {
        let first = self.unary()?;
        let offset = first.offset;
        let mut acc = first.poly;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    let rhs = self.unary()?;
                    acc = acc.mul(&rhs.poly);
                    self.check_degree(&acc, rhs.offset)?;
                }
                Tok::Slash => {
                    self.bump();
                    let rhs = self.unary()?;
                    let d = self.coefficient_of(&rhs)?;
                    if d.is_zero() {
                        return Err(self.non_rational(rhs.offset, "division by zero"));
                    }
                    acc = acc.scale(&d.recip().expect("nonzero"));
                }
                _ => return Ok(Value { poly: acc, offset }),
            }
        }
    }

    /// The value as a rational function of `z`, or an error if it involves `w`.
    fn coefficient_of(&self, v: &Value) -> Result<RationalFunction, ParseError> {
        if v.poly.degree().unwrap_or(0) > 0 {
            return Err(self.non_rational(v.offset, "division by an expression in w"));
        }
        Ok(v.poly.coeff(&crate::diffpoly::Monomial::one()))
    }

    fn unary(&mut self) -> Result<Value, ParseError> {
        match self.peek() {
            Tok::Minus => {
                let (_, offset) = self.bump();
                let v = self.unary()?;
                Ok(Value {
                    poly: v.poly.neg(),
                    offset,
                })
            }
            Tok::Plus => {
                let (_, offset) = self.bump();
                let v = self.unary()?;
                Ok(Value {
                    poly: v.poly,
                    offset,
                })
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Value, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let exp_offset = self.offset();
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let e = match self.bump() {
            (Tok::Num(n), _) if n.is_integer() => n.to_integer(),
            (_, off) => return Err(self.malformed(off, "expected an integer exponent")),
        };
        let e = e
            .to_i32()
            .filter(|e| *e <= 4096)
            .ok_or_else(|| self.malformed(exp_offset, "exponent too large"))?;
        let e = if negative { -e } else { e };

        let degree = base.poly.degree().unwrap_or(0);
        if degree == 0 {
            let c = self.coefficient_of(&base)?;
            let p = c
                .pow(e)
                .ok_or_else(|| self.non_rational(base.offset, "division by zero"))?;
            return Ok(Value {
                poly: DiffPoly::constant(p),
                offset: base.offset,
            });
        }
        if e < 1 {
            return Err(self.malformed(exp_offset, "powers of w-terms must be positive"));
        }
        if degree as i64 * e as i64 > 2 {
            return Err(ParseError::DegreeTooHigh {
                degree: (degree as i64 * e as i64).min(u32::MAX as i64) as u32,
                offset: clamp(base.offset, self.src.len()),
            });
        }
        Ok(Value {
            poly: base.poly.pow(e as u32),
            offset: base.offset,
        })
    }

    fn atom(&mut self) -> Result<Value, ParseError> {
        let (tok, offset) = self.bump();
        let poly = match tok {
            Tok::Num(n) => DiffPoly::constant(RationalFunction::constant(n)),
            Tok::Z => DiffPoly::constant(RationalFunction::z()),
            Tok::W(k) => {
                if k >= self.order {
                    return Err(ParseError::DerivativeTooHigh {
                        order: k,
                        limit: self.order,
                        offset: clamp(offset, self.src.len()),
                    });
                }
                DiffPoly::jet(0, k as u32)
            }
            Tok::LParen => {
                let inner = self.expr()?;
                match self.bump() {
                    (Tok::RParen, _) => inner.poly,
                    (_, off) => return Err(self.malformed(off, "expected ')'")),
                }
            }
            Tok::Ident(name) => {
                return Err(self.non_rational(offset, format!("unknown symbol '{name}'")))
            }
            Tok::End => return Err(self.malformed(offset, "unexpected end of input")),
            other => return Err(self.malformed(offset, format!("unexpected token {other:?}"))),
        };
        Ok(Value { poly, offset })
    }
}

/// Parses `w^(n) = rhs` into a [`QuadraticODE`].
pub fn parse(src: &str) -> Result<QuadraticODE, ParseError> {
    let toks = Lexer::new(src).tokens()?;
    let mut p = Parser {
        src,
        toks,
        i: 0,
        order: 0,
    };
    let n = match p.bump() {
        (Tok::W(n), off) => {
            if n < 2 {
                return Err(ParseError::DerivativeTooHigh {
                    order: n,
                    limit: 2,
                    offset: clamp(off, src.len()),
                });
            }
            n
        }
        (_, off) => return Err(p.malformed(off, "left-hand side must be a derivative of w")),
    };
    match p.bump() {
        (Tok::Eq, _) => {}
        (_, off) => return Err(p.malformed(off, "expected '='")),
    }
    p.order = n;
    let rhs = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.malformed(p.offset(), "unexpected trailing input"));
    }
    p.check_degree(&rhs.poly, rhs.offset)?;
    Ok(QuadraticODE::from_rhs_diffpoly(n, &rhs.poly, 0).expect("orders checked while parsing"))
}

fn deriv_name(k: usize) -> String {
    if k <= 4 {
        format!("w{}", "'".repeat(k))
    } else {
        format!("w^({k})")
    }
}

/// Sign and text of a coefficient placed in front of `*monomial`.
fn coefficient_text(c: &RationalFunction) -> (bool, Option<String>) {
    let single = c.numer().term_count() == 1;
    if single && c.is_negative_leading() {
        let abs = -c;
        return (true, (!abs.is_one()).then(|| abs.to_string()));
    }
    if c.is_one() {
        return (false, None);
    }
    if !single && c.is_polynomial() {
        return (false, Some(format!("({c})")));
    }
    (false, Some(c.to_string()))
}

/// Canonical text: quadratic terms by descending `k + j` then `k`, linear terms
/// by descending order, then the free term.
pub fn render(eq: &QuadraticODE) -> String {
    let mut pieces: Vec<(bool, String)> = Vec::new();
    let mut quad: Vec<_> = eq.quadratic_terms().collect();
    quad.sort_by(|((k1, j1), _), ((k2, j2), _)| (k2 + j2, k2).cmp(&(k1 + j1, k1)));
    for ((k, j), c) in quad {
        let mono = if k == j {
            format!("{}^2", deriv_name(k))
        } else {
            format!("{}*{}", deriv_name(j), deriv_name(k))
        };
        pieces.push(attach(c, &mono));
    }
    let mut lin: Vec<_> = eq.linear_terms().collect();
    lin.sort_by(|a, b| b.0.cmp(&a.0));
    for (j, c) in lin {
        pieces.push(attach(c, &deriv_name(j)));
    }
    let c = eq.free_term();
    if !c.is_zero() {
        let s = c.to_string();
        match s.strip_prefix('-') {
            Some(rest) => pieces.push((true, rest.to_string())),
            None => pieces.push((false, s)),
        }
    }

    let mut out = format!("{} = ", deriv_name(eq.order()));
    if pieces.is_empty() {
        out.push('0');
        return out;
    }
    for (i, (neg, text)) in pieces.iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let _ = write!(out, "{text}");
    }
    out
}

fn attach(c: &RationalFunction, mono: &str) -> (bool, String) {
    match coefficient_text(c) {
        (neg, None) => (neg, mono.to_string()),
        (neg, Some(t)) => (neg, format!("{t}*{mono}")),
    }
}

/// Jet name used by [`render`], exposed for report text.
pub fn jet_name(j: Jet) -> String {
    deriv_name(j.order as usize)
}
