use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};

use super::field::FieldElement;
use super::poly::{Polynomial, Rat};
use super::scope::ConstraintSystem;

/// ±1 choices for the declared sign parameters.
pub type SignAssignment = BTreeMap<String, i32>;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(Rat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let text = &src[start..i];
                let n: num_bigint::BigInt = text
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad integer `{text}`")))?;
                out.push(Tok::Int(Rat::from_integer(n)));
            }
            'A'..='Z' | 'a'..='z' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push(Tok::Ident(src[start..i].to_string()));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    cs: &'a ConstraintSystem,
    signs: &'a SignAssignment,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<FieldElement> {
        let mut acc = self.term()?;
        while let Some(op) = self.peek() {
            match op {
                Tok::Plus => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.add(&rhs, self.cs);
                }
                Tok::Minus => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.sub(&rhs, self.cs);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FieldElement> {
        let mut acc = self.unary()?;
        while let Some(op) = self.peek() {
            match op {
                Tok::Star => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.mul(&rhs, self.cs);
                }
                Tok::Slash => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = acc.div(&rhs, self.cs)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<FieldElement> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<FieldElement> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Int(n)) => {
                    if !n.is_integer() {
                        return Err(Error::Parse("exponent must be an integer".into()));
                    }
                    let e: u32 = n
                        .to_integer()
                        .try_into()
                        .map_err(|_| Error::Parse("exponent out of range".into()))?;
                    return base.pow(e as i32, self.cs);
                }
                other => {
                    return Err(Error::Parse(format!(
                        "expected non-negative integer exponent, found {other:?}"
                    )))
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FieldElement> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(FieldElement::from_rat(n)),
            Some(Tok::Ident(name)) => {
                if let Some(s) = self.cs.lookup(&name) {
                    Ok(FieldElement::var(s))
                } else if self.cs.is_sign(&name) {
                    match self.signs.get(&name) {
                        Some(v) if *v == 1 || *v == -1 => {
                            Ok(FieldElement::from_int(*v as i64))
                        }
                        Some(v) => Err(Error::Parse(format!(
                            "sign `{name}` must be +1 or -1, got {v}"
                        ))),
                        None => Err(Error::UnassignedSign(name)),
                    }
                } else {
                    Err(Error::UndeclaredSymbol(name))
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Parse("missing `)`".into())),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses an expression against the scope, evaluating sign parameters with
/// the given ±1 assignment.
pub fn parse_expr(
    src: &str,
    cs: &ConstraintSystem,
    signs: &SignAssignment,
) -> Result<FieldElement> {
    let toks = tokenize(src)?;
    let mut p = Parser { toks, pos: 0, cs, signs };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in `{src}`")));
    }
    Ok(v)
}

/// Parses an expression that must denote a polynomial (constant denominator).
pub fn parse_polynomial(
    src: &str,
    cs: &ConstraintSystem,
    signs: &SignAssignment,
) -> Result<Polynomial> {
    let fe = parse_expr(src, cs, signs)?;
    match fe.denominator().as_constant() {
        Some(d) if !d.is_zero() => {
            let inv = Rat::from_integer(1.into()) / d;
            Ok(fe.numerator().scale(&inv))
        }
        _ => Err(Error::Parse(format!("`{src}` is not polynomial"))),
    }
}
