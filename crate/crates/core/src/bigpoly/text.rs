//! Text interchange format for [`MPoly`].
//!
//! Terms are written in ascending monomial order as `<coeff>*q^a*t1^b*...`.
//! Zero exponents are omitted, exponent one is written bare, and unit
//! coefficients are dropped on output. The parser also accepts explicit unit
//! coefficients, `t_1` for `t1`, arbitrary whitespace, and repeated factors.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Var};
use super::poly::MPoly;
use crate::error::Error;

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

impl FromStr for MPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser::new(s).parse()
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn parse(mut self) -> Result<MPoly, Error> {
        let mut out = MPoly::zero();
        let mut first = true;
        loop {
            self.skip_ws();
            if self.pos == self.src.len() {
                if first {
                    return Err(self.err("empty polynomial"));
                }
                return Ok(out);
            }
            let negative = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                return Err(self.err("expected '+' or '-'"));
            };
            first = false;
            let (m, c) = self.term()?;
            out.add_term(m, if negative { -c } else { c });
        }
    }

    fn term(&mut self) -> Result<(Monomial, BigInt), Error> {
        let mut coeff = BigInt::one();
        let mut mono = Monomial::one();
        loop {
            self.skip_ws();
            if let Some(d) = self.digits() {
                coeff *= d.parse::<BigInt>().map_err(|_| self.err("bad integer"))?;
            } else {
                let v = self.variable()?;
                let e = if self.eat('^') {
                    self.skip_ws();
                    self.digits()
                        .ok_or_else(|| self.err("expected exponent"))?
                        .parse::<u32>()
                        .map_err(|_| self.err("exponent out of range"))?
                } else {
                    1
                };
                mono = mono.mul(&Monomial::var(v, e));
            }
            if !self.eat('*') {
                break;
            }
        }
        if coeff.is_zero() {
            mono = Monomial::one();
        }
        Ok((mono, coeff))
    }

    fn variable(&mut self) -> Result<Var, Error> {
        let v = match self.peek() {
            Some('q') => Var::Q,
            Some('x') => Var::X,
            Some('u') => Var::U,
            Some('t') => {
                self.pos += 1;
                if self.peek() == Some('_') {
                    self.pos += 1;
                }
                let idx: u16 = self
                    .digits()
                    .ok_or_else(|| self.err("expected t index"))?
                    .parse()
                    .map_err(|_| self.err("t index out of range"))?;
                if idx == 0 {
                    return Err(self.err("t indices start at 1"));
                }
                return Ok(Var::T(idx));
            }
            _ => return Err(self.err("expected coefficient or variable")),
        };
        self.pos += 1;
        Ok(v)
    }
}
