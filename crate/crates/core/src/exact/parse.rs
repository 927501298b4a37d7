//! Parser for exact constant expressions such as `sin(1/5)/sin(1/3)`.
//!
//! Grammar (standard precedence, `sin`/`cos` arguments are in units of π
//! and must evaluate to a rational):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | atom
//! atom   := number | ('sin' | 'cos') '(' expr ')' | '(' expr ')'
//! number := digits ('.' digits)?
//! ```

use num_bigint::BigInt;
use thiserror::Error;

use super::cyclotomic::Rational;
use super::real::CyclotomicReal;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("division by zero at position {pos}")]
    DivisionByZero { pos: usize },
    #[error("argument of {func} at position {pos} is not rational")]
    IrrationalAngle { func: &'static str, pos: usize },
}

pub fn parse_constant(text: &str) -> Result<CyclotomicReal, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(v.normalize())
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ParseError {
        ParseError::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
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

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<CyclotomicReal, ParseError> {
        let mut acc = self.term()?;
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

    fn term(&mut self) -> Result<CyclotomicReal, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    acc = acc
                        .checked_div(&d)
                        .ok_or(ParseError::DivisionByZero { pos: at })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<CyclotomicReal, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<CyclotomicReal, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(CyclotomicReal::from_rational(&self.number()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                let func: &'static str = match name {
                    b"sin" => "sin",
                    b"cos" => "cos",
                    _ => {
                        self.pos = start;
                        return Err(self.error("unknown identifier"));
                    }
                };
                self.expect(b'(')?;
                let arg_pos = self.pos;
                let arg = self.expr()?;
                self.expect(b')')?;
                let q = arg
                    .is_rational()
                    .ok_or(ParseError::IrrationalAngle { func, pos: arg_pos })?;
                Ok(if func == "sin" {
                    CyclotomicReal::sin_pi(&q)
                } else {
                    CyclotomicReal::cos_pi(&q)
                })
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn number(&mut self) -> Result<Rational, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let int: BigInt = std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| self.error("bad number"))?;
        let mut value = Rational::from_integer(int);
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            let fs = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if fs == self.pos {
                return Err(self.error("expected digits after '.'"));
            }
            let digits = std::str::from_utf8(&self.src[fs..self.pos]).expect("ascii");
            let frac: BigInt = digits.parse().map_err(|_| self.error("bad number"))?;
            let scale = BigInt::from(10).pow(digits.len() as u32);
            value += Rational::new(frac, scale);
        }
        Ok(value)
    }
}

/// Parses `p/q` or an integer as a rational, used for angle fields.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let v = parse_constant(text)?;
    v.is_rational().ok_or(ParseError::Syntax {
        pos: 0,
        msg: "expected a rational number".to_string(),
    })
}
