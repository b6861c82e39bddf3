//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := integer | var | var '^' sint | '(' expr ')'
//! sint   := '-'? integer
//! ```
//!
//! Whitespace is insignificant and implicit multiplication (`2x`) is rejected.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::poly::{ModPoly, PolyError, PrimeModulus};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    UnknownVariable(String),
    InvalidVariableName(String),
    DuplicateVariable(String),
    ExponentOutOfRange,
    Arithmetic(PolyError),
}

/// Parse failure at byte offset `position` of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub position: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => {
                write!(
                    f,
                    "unexpected character {c:?} at position {}",
                    self.position
                )
            }
            ParseErrorKind::UnexpectedEnd => {
                write!(f, "unexpected end of input at position {}", self.position)
            }
            ParseErrorKind::UnknownVariable(v) => {
                write!(f, "unknown variable {v:?} at position {}", self.position)
            }
            ParseErrorKind::InvalidVariableName(v) => write!(f, "invalid variable name {v:?}"),
            ParseErrorKind::DuplicateVariable(v) => write!(f, "variable {v:?} listed twice"),
            ParseErrorKind::ExponentOutOfRange => {
                write!(f, "exponent out of range at position {}", self.position)
            }
            ParseErrorKind::Arithmetic(e) => write!(f, "{e} at position {}", self.position),
        }
    }
}

impl core::error::Error for ParseError {}

/// Validates a variable list and packs it for sharing between polynomials.
pub fn variable_list<S: AsRef<str>>(names: &[S]) -> Result<Arc<[String]>, ParseError> {
    let mut out: Vec<String> = Vec::with_capacity(names.len());
    for name in names {
        let name = name.as_ref();
        let mut chars = name.chars();
        let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(ParseError {
                kind: ParseErrorKind::InvalidVariableName(name.to_string()),
                position: 0,
            });
        }
        if out.iter().any(|v| v == name) {
            return Err(ParseError {
                kind: ParseErrorKind::DuplicateVariable(name.to_string()),
                position: 0,
            });
        }
        out.push(name.to_string());
    }
    Ok(out.into())
}

/// Parses `text` into a polynomial over `vars` modulo `p`.
///
/// Integer literals are reduced modulo `p`; negative exponents are kept.
pub fn parse_poly(
    text: &str,
    vars: &Arc<[String]>,
    p: PrimeModulus,
) -> Result<ModPoly, ParseError> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
        p,
    };
    let out = parser.expr()?;
    parser.skip_ws();
    if let Some(c) = parser.peek() {
        return Err(parser.error(ParseErrorKind::UnexpectedChar(c as char)));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Arc<[String]>,
    p: PrimeModulus,
}

impl Parser<'_> {
    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            kind,
            position: self.pos,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn unexpected(&self) -> ParseError {
        match self.peek() {
            Some(c) => self.error(ParseErrorKind::UnexpectedChar(c as char)),
            None => self.error(ParseErrorKind::UnexpectedEnd),
        }
    }

    fn arith<T>(&self, r: Result<T, PolyError>) -> Result<T, ParseError> {
        r.map_err(|e| self.error(ParseErrorKind::Arithmetic(e)))
    }

    fn expr(&mut self) -> Result<ModPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.arith(acc.add(&t))?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.arith(acc.sub(&t))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ModPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            if self.peek() != Some(b'*') {
                return Ok(acc);
            }
            self.pos += 1;
            let f = self.factor()?;
            acc = self.arith(acc.mul_mod(&f))?;
        }
    }

    fn factor(&mut self) -> Result<ModPoly, ParseError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let p = self.p.get() as u64;
                let mut v = 0u64;
                while let Some(d) = self.peek().filter(u8::is_ascii_digit) {
                    v = (v * 10 + (d - b'0') as u64) % p;
                    self.pos += 1;
                }
                Ok(ModPoly::constant(self.p, self.vars.clone(), v as i64))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(d) if d.is_ascii_alphanumeric() || d == b'_') {
                    self.pos += 1;
                }
                let name = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
                let idx = self.vars.iter().position(|v| v == name).ok_or(ParseError {
                    kind: ParseErrorKind::UnknownVariable(name.to_string()),
                    position: start,
                })?;
                self.skip_ws();
                let mut exp = 1i32;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    exp = self.signed_int()?;
                }
                let mut e = vec![0; self.vars.len()];
                e[idx] = exp;
                Ok(ModPoly::monomial(self.p, self.vars.clone(), e, 1))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.unexpected());
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.unexpected()),
        }
    }

    fn signed_int(&mut self) -> Result<i32, ParseError> {
        self.skip_ws();
        let neg = self.peek() == Some(b'-');
        if neg {
            self.pos += 1;
            self.skip_ws();
        }
        if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            return Err(self.unexpected());
        }
        let start = self.pos;
        let mut v: i64 = 0;
        while let Some(d) = self.peek().filter(u8::is_ascii_digit) {
            v = v * 10 + (d - b'0') as i64;
            if v > i32::MAX as i64 + 1 {
                return Err(ParseError {
                    kind: ParseErrorKind::ExponentOutOfRange,
                    position: start,
                });
            }
            self.pos += 1;
        }
        let v = if neg { -v } else { v };
        i32::try_from(v).map_err(|_| ParseError {
            kind: ParseErrorKind::ExponentOutOfRange,
            position: start,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str, names: &[&str], p: u32) -> Result<ModPoly, ParseError> {
        parse_poly(
            text,
            &variable_list(names).unwrap(),
            PrimeModulus::new(p).unwrap(),
        )
    }

    fn terms(a: &ModPoly) -> Vec<(Vec<i32>, u32)> {
        a.terms().map(|(e, c)| (e.clone(), c)).collect()
    }

    #[test]
    fn toy_polynomial() {
        let a = parse("1+x+x^2", &["x"], 2).unwrap();
        assert_eq!(terms(&a), vec![(vec![0], 1), (vec![1], 1), (vec![2], 1)]);
    }

    #[test]
    fn reduces_integer_coefficients() {
        let a = parse("2+4*x+2*x^2", &["x"], 3).unwrap();
        assert_eq!(terms(&a), vec![(vec![0], 2), (vec![1], 1), (vec![2], 2)]);
    }

    #[test]
    fn cancellation_gives_zero() {
        assert!(parse("x - x", &["x"], 2).unwrap().is_zero());
        assert!(parse("0", &["x"], 5).unwrap().is_zero());
    }

    #[test]
    fn laurent_and_parentheses() {
        let a = parse("x^-1 + x + y^-1 + y", &["x", "y"], 2).unwrap();
        assert_eq!(a.to_string(), "x^-1+y^-1+y+x");
        let b = parse("(1+x)*(1+x)", &["x"], 3).unwrap();
        assert_eq!(b.to_string(), "1+2*x+x^2");
        let c = parse(" 3 * x ^ 2 * y - 1 ", &["x", "y"], 5).unwrap();
        assert_eq!(c.to_string(), "4+3*x^2*y");
    }

    #[test]
    fn implicit_multiplication_rejected() {
        let e = parse("2x", &["x"], 2).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnexpectedChar('x'));
        assert_eq!(e.position, 1);
    }

    #[test]
    fn unknown_variable() {
        let e = parse("1+z", &["x"], 2).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable("z".into()));
        assert_eq!(e.position, 2);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(
            parse("1+", &["x"], 2).unwrap_err().kind,
            ParseErrorKind::UnexpectedEnd
        );
        let e = parse("(1+x", &["x"], 2).unwrap_err();
        assert_eq!((e.kind, e.position), (ParseErrorKind::UnexpectedEnd, 4));
        let e = parse("x^y", &["x", "y"], 2).unwrap_err();
        assert_eq!(e.position, 2);
        let e = parse("x^99999999999", &["x"], 2).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ExponentOutOfRange);
    }

    #[test]
    fn variable_list_validation() {
        assert!(variable_list(&["x", "y1", "_t"]).is_ok());
        assert!(matches!(
            variable_list(&["x", "x"]).unwrap_err().kind,
            ParseErrorKind::DuplicateVariable(_)
        ));
        assert!(matches!(
            variable_list(&["1x"]).unwrap_err().kind,
            ParseErrorKind::InvalidVariableName(_)
        ));
    }

    #[test]
    fn display_round_trips() {
        for text in ["1+x+x^2", "y+x+x*y^2+x^2*y", "2+x^-3*y^4", "0", "4"] {
            let a = parse(text, &["x", "y"], 5).unwrap();
            let b = parse(&a.to_string(), &["x", "y"], 5).unwrap();
            assert_eq!(a, b);
        }
    }
}
