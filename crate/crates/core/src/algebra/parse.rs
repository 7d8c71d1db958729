//! Polynomial expressions: integers, rationals `a/b`, the ring's variable
//! names, `+ - * ^` and parentheses.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Polynomial, Rational, Ring};

/// A parse failure at a byte offset into the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at offset {}", self.message, self.offset)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Parser<'a> {
    ring: &'a Ring,
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(src[start..i].parse().unwrap()), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_string()), start));
        } else if "+-*^/()".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            let ch = src[i..].chars().next().unwrap();
            return Err(ParseError { offset: i, message: format!("unexpected character '{ch}'") });
        }
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset: self.offset(), message: message.into() })
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Sym('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Sym('*') {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        if *self.peek() == Tok::Sym('-') {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Sym('^') {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            Tok::Int(e) => match u32::try_from(e) {
                Ok(e) => Ok(base.pow(e)),
                Err(_) => {
                    self.pos -= 1;
                    self.error("exponent too large")
                }
            },
            _ => {
                self.pos = self.pos.saturating_sub(1);
                self.error("expected a non-negative integer exponent")
            }
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let at = self.offset();
        match self.bump() {
            Tok::Int(num) => {
                if *self.peek() != Tok::Sym('/') {
                    return Ok(Polynomial::constant(self.ring, Rational::from_integer(num)));
                }
                self.bump();
                let den_at = self.offset();
                match self.bump() {
                    Tok::Int(den) if den.is_zero() => {
                        Err(ParseError { offset: den_at, message: "zero denominator".into() })
                    }
                    Tok::Int(den) => Ok(Polynomial::constant(self.ring, Rational::new(num, den))),
                    _ => Err(ParseError { offset: den_at, message: "expected an integer denominator".into() }),
                }
            }
            Tok::Ident(name) => match self.ring.index_of(&name) {
                Some(i) => Ok(Polynomial::var(self.ring, i)),
                None => Err(ParseError { offset: at, message: format!("unknown variable '{name}'") }),
            },
            Tok::Sym('(') => {
                let inner = self.expr()?;
                if *self.peek() != Tok::Sym(')') {
                    return self.error("expected ')'");
                }
                self.bump();
                Ok(inner)
            }
            Tok::End => Err(ParseError { offset: at, message: "unexpected end of expression".into() }),
            Tok::Sym(c) => Err(ParseError { offset: at, message: format!("unexpected '{c}'") }),
        }
    }
}

/// Parses one polynomial over `ring`.
pub fn parse_polynomial(ring: &Ring, src: &str) -> Result<Polynomial, ParseError> {
    let mut p = Parser { ring, toks: tokenize(src)?, pos: 0 };
    let poly = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error("unexpected trailing input");
    }
    Ok(poly)
}
