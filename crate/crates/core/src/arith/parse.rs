//! Parser for the ASCII polynomial grammar
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := INT | 'x' | 't' | factor '^' UINT | '(' expr ')'
//! ```
//!
//! Whitespace is ignored and integers of any length are reduced mod p. A
//! leading unary minus is accepted at the start of an `expr`.

use super::bipoly::BiPoly;
use super::fp::FqElem;
use crate::error::{Error, Result};

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u64 = 4096;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    p: u32,
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

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Syntax { offset: self.pos, message: message.into() }
    }

    fn expr(&mut self) -> Result<BiPoly> {
        let negate = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BiPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<BiPoly> {
        let mut base = self.primary()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            if self.peek() == Some(b'-') {
                return Err(Error::NegativeExponent { offset: self.pos });
            }
            let e = self.uint()?;
            if e > MAX_EXPONENT {
                return Err(self.err(format!("exponent {e} exceeds {MAX_EXPONENT}")));
            }
            base = base.pow(e as u32);
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<BiPoly> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                Ok(BiPoly::x(self.p))
            }
            Some(b't') => {
                self.pos += 1;
                Ok(BiPoly::t(self.p))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let c = self.int_mod_p();
                Ok(BiPoly::constant(c))
            }
            Some(c) => Err(self.err(format!("unexpected '{}'", c as char))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn int_mod_p(&mut self) -> FqElem {
        let p = self.p as u64;
        let mut acc = 0u64;
        while let Some(&c) = self.src.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            acc = (acc * 10 + (c - b'0') as u64) % p;
            self.pos += 1;
        }
        FqElem::new(acc as i64, self.p)
    }

    fn uint(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let mut acc: u64 = 0;
        while let Some(&c) = self.src.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            acc = acc.saturating_mul(10).saturating_add((c - b'0') as u64);
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected unsigned integer exponent"));
        }
        Ok(acc)
    }
}

/// Parses `text` into an exact polynomial over F_p. `p` must already be validated.
pub fn parse_bipoly(text: &str, p: u32) -> Result<BiPoly> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0, p };
    let out = parser.expr()?;
    if parser.peek().is_some() {
        return Err(parser.err("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u32, t: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_terms(p, t.iter().copied())
    }

    #[test]
    fn documented_examples() {
        assert_eq!(parse_bipoly("1 + 2*x*t^2 - x^3", 5).unwrap(), poly(5, &[(0, 0, 1), (1, 2, 2), (3, 0, 4)]));
        assert_eq!(parse_bipoly("x + t", 3).unwrap(), poly(3, &[(1, 0, 1), (0, 1, 1)]));
        assert_eq!(parse_bipoly("x^2 - t^3", 7).unwrap(), poly(7, &[(2, 0, 1), (0, 3, 6)]));
    }

    #[test]
    fn big_integers_reduce() {
        let f = parse_bipoly("123456789012345678901234567891*x", 7).unwrap();
        // 123456789012345678901234567891 mod 7 = 1
        assert_eq!(f, poly(7, &[(1, 0, 1)]));
        assert!(parse_bipoly("5*x", 5).unwrap().is_zero());
    }

    #[test]
    fn nested_and_powers() {
        let f = parse_bipoly("(x + t)^2 - x^2 - t^2", 5).unwrap();
        assert_eq!(f, poly(5, &[(1, 1, 2)]));
        assert_eq!(parse_bipoly("-x + 1", 5).unwrap(), poly(5, &[(1, 0, 4), (0, 0, 1)]));
        assert_eq!(parse_bipoly("x^2^3", 5).unwrap(), poly(5, &[(6, 0, 1)]));
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(parse_bipoly("x^-1", 5), Err(Error::NegativeExponent { offset: 2 }));
        match parse_bipoly("x + * t", 5) {
            Err(Error::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_bipoly("(x + t", 5), Err(Error::Syntax { .. })));
        assert!(matches!(parse_bipoly("2x", 5), Err(Error::Syntax { offset: 1, .. })));
        assert!(matches!(parse_bipoly("", 5), Err(Error::Syntax { offset: 0, .. })));
    }
}
