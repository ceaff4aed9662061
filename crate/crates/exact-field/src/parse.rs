//! Reader for the textual polynomial syntax: sums and products of rationals,
//! variables and parenthesized groups, `^` with nonnegative integer exponents,
//! and `/` for rational functions.

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{FieldError, Result};
use crate::rfunc::RFunc;
use crate::scalar::ExactScalar;
use crate::vars::VarTable;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Arc<VarTable>,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> FieldError {
        FieldError::Parse(format!("{msg} at offset {} in `{}`", self.pos, String::from_utf8_lossy(self.src)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RFunc> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RFunc> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.power()?;
                    acc = acc.checked_div(&d)?;
                }
                Some(b'(') => acc = &acc * &self.power()?,
                Some(c) if c.is_ascii_alphabetic() => acc = &acc * &self.power()?,
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<RFunc> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.integer()?;
            let n: u32 = n.try_into().map_err(|_| self.err("exponent out of range"))?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap())
    }

    fn atom(&mut self) -> Result<RFunc> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(RFunc::constant(self.vars, ExactScalar::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let i = self.vars.require(name)?;
                Ok(RFunc::var(self.vars, i))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

/// Parses text such as `(z_1 - 2*hbar)^2/(z_2 + 1/3)` into a rational function.
pub fn parse_rfunc(vars: &Arc<VarTable>, text: &str) -> Result<RFunc> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars };
    let r = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(r)
}

/// Parses a polynomial; fails if the text denotes a proper fraction.
pub fn parse_mpoly(vars: &Arc<VarTable>, text: &str) -> Result<crate::poly::MPoly> {
    let r = parse_rfunc(vars, text)?;
    r.as_poly().cloned().ok_or_else(|| FieldError::Parse(format!("`{text}` is not a polynomial")))
}
