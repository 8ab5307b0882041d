//! Recursive-descent parser for the polynomial grammar:
//!
//! ```text
//! poly   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := int | int '/' nat | 'zeta' | var | '(' poly ')'
//! var    := [a-zA-Z][a-zA-Z0-9_]*
//! ```
//!
//! `zeta` denotes the generator of the ambient cyclotomic field. Printing a
//! polynomial and parsing it back is the identity.

use super::{Monomial, Polynomial, RingRef};
use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Zeta,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn tokens(mut self) -> Result<Vec<(usize, Tok)>, ParseError> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            let start = self.pos;
            match c {
                b' ' | b'\t' | b'\n' | b'\r' => {
                    self.pos += 1;
                }
                b'+' => {
                    out.push((start, Tok::Plus));
                    self.pos += 1;
                }
                b'-' => {
                    out.push((start, Tok::Minus));
                    self.pos += 1;
                }
                b'*' => {
                    out.push((start, Tok::Star));
                    self.pos += 1;
                }
                b'/' => {
                    out.push((start, Tok::Slash));
                    self.pos += 1;
                }
                b'^' => {
                    out.push((start, Tok::Caret));
                    self.pos += 1;
                }
                b'(' => {
                    out.push((start, Tok::LParen));
                    self.pos += 1;
                }
                b')' => {
                    out.push((start, Tok::RParen));
                    self.pos += 1;
                }
                b'0'..=b'9' => {
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    out.push((start, Tok::Int(text.parse().unwrap())));
                }
                b'a'..=b'z' | b'A'..=b'Z' => {
                    while self.pos < self.src.len()
                        && (self.src[self.pos].is_ascii_alphanumeric()
                            || self.src[self.pos] == b'_')
                    {
                        self.pos += 1;
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    if text == "zeta" {
                        out.push((start, Tok::Zeta));
                    } else {
                        out.push((start, Tok::Ident(text.to_string())));
                    }
                }
                _ => {
                    return Err(ParseError {
                        position: start,
                        message: format!("unexpected character `{}`", c as char),
                    })
                }
            }
        }
        Ok(out)
    }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    ring: &'a RingRef,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.idx).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        self.idx += 1;
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: self.pos(),
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| ParseError {
                            position: self.pos(),
                            message: "exponent out of range".into(),
                        })?;
                    Ok(base.pow(e))
                }
                _ => self.err("expected a natural number exponent after `^`"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.bump() {
            Some(Tok::Int(n)) => {
                // Optional `/ nat` forms a rational literal.
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Int(d)) => {
                            if d == BigInt::from(0) {
                                return self.err("zero denominator");
                            }
                            Ok(Polynomial::constant(
                                self.ring,
                                Scalar::from_rational(
                                    self.ring.field(),
                                    BigRational::new(n, d),
                                ),
                            ))
                        }
                        _ => self.err("expected denominator after `/`"),
                    }
                } else {
                    Ok(Polynomial::constant(
                        self.ring,
                        Scalar::from_rational(self.ring.field(), BigRational::from_integer(n)),
                    ))
                }
            }
            Some(Tok::Zeta) => {
                let z = Scalar::zeta(self.ring.field()).map_err(|e| ParseError {
                    position: self.pos(),
                    message: format!("`zeta` needs a cyclotomic field: {}", e),
                })?;
                Ok(Polynomial::constant(self.ring, z))
            }
            Some(Tok::Ident(name)) => match self.ring.var_index(&name) {
                Some(i) => Ok(Polynomial::monomial(
                    self.ring,
                    Monomial::var(i, self.ring),
                    Scalar::one(self.ring.field()),
                )),
                None => Err(ParseError {
                    position: self.pos(),
                    message: format!("unknown variable `{}`", name),
                }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => self.err("expected `)`"),
                }
            }
            Some(t) => self.err(format!("unexpected token {:?}", t)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse text into a canonical polynomial over the given ring.
pub fn parse_polynomial(text: &str, ring: &RingRef) -> Result<Polynomial, ParseError> {
    let toks = Lexer::new(text).tokens()?;
    let mut parser = Parser {
        toks,
        idx: 0,
        ring,
        end: text.len(),
    };
    let p = parser.expr()?;
    if parser.idx != parser.toks.len() {
        return parser.err("trailing input");
    }
    Ok(p)
}
