//! Recursive descent parser for coefficient expressions.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := base ('^' uint)?
//! base     := rational | identifier | '(' expr ')'
//! rational := int ('/' uint)?
//! ```
//!
//! `int` may carry a leading minus sign. Positions in errors are byte
//! offsets into the input.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Polynomial, VarSet};
use crate::scalar::{Rational, Scalar};

/// Parses `text` into a polynomial over `vars`.
pub fn parse_scalar<S: Scalar>(text: &str, vars: &VarSet) -> Result<Polynomial<S>> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.unexpected("operator or end of input"));
    }
    Ok(out)
}

/// Parses a constant rational in the same grammar (no variables).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let p: Polynomial<Rational> = parse_scalar(text, &VarSet::empty())?;
    Ok(p.constant_value().expect("no variables"))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a VarSet,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&self, expected: &str) -> Error {
        let found = match std::str::from_utf8(&self.src[self.pos..])
            .ok()
            .and_then(|s| s.chars().next())
        {
            Some(c) => format!("`{c}`"),
            None => "end of input".to_string(),
        };
        Error::Syntax {
            position: self.pos,
            expected: expected.to_string(),
            found,
        }
    }

    fn expr<S: Scalar>(&mut self) -> Result<Polynomial<S>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term<S: Scalar>(&mut self) -> Result<Polynomial<S>> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor<S: Scalar>(&mut self) -> Result<Polynomial<S>> {
        let base = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            if self.peek() == Some(b'-') {
                return Err(Error::NegativeExponent(self.pos));
            }
            let e = self.uint("exponent")?;
            let e: u32 = e
                .clone()
                .try_into()
                .map_err(|_| Error::Invalid(format!("exponent {e} too large")))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn base<S: Scalar>(&mut self) -> Result<Polynomial<S>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.unexpected("`)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'-' => {
                let r = self.rational()?;
                Ok(Polynomial::constant(self.vars, S::from_rational(&r)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Polynomial::var_named(self.vars, name)
            }
            _ => Err(self.unexpected("number, identifier or `(`")),
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        let neg = if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        // no whitespace between the sign and the digits
        if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            return Err(self.unexpected("digit"));
        }
        let n = self.digits();
        let mut num = BigInt::from(n);
        if neg {
            num = -num;
        }
        let mut den = BigInt::from(1);
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            den = BigInt::from(self.uint("denominator")?);
            if den.is_zero() {
                return Err(Error::Syntax {
                    position: at,
                    expected: "nonzero denominator".into(),
                    found: "`0`".into(),
                });
            }
        }
        Ok(Rational::new(num, den))
    }

    fn digits(&mut self) -> num_bigint::BigUint {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        s.parse().expect("digit run")
    }

    fn uint(&mut self, what: &str) -> Result<num_bigint::BigUint> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(self.digits()),
            _ => Err(self.unexpected(what)),
        }
    }
}
