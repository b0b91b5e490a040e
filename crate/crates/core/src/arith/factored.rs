//! Elements of Frac(F_p[[x, t]])^* kept in factored form.

use std::fmt;

use super::bipoly::BiPoly;
use super::fp::FqElem;
use super::parse::parse_bipoly;
use crate::curves::{canonicalize, is_good, Goodness, GoodCurve, DEFAULT_CURVE_PREC};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub enum Factor {
    AxisX,
    AxisT,
    /// Polynomial with nonzero constant term: a unit of F_p[[x, t]].
    Unit(BiPoly),
    /// A good curve. With an originating polynomial the factor is that
    /// polynomial; otherwise it is `x - s(t)`.
    Curve(GoodCurve),
    /// Any other polynomial; admitted by the two-flag composites but not by
    /// curve-boundary computations.
    Monic(BiPoly),
}

impl Factor {
    pub fn is_axis_or_unit(&self) -> bool {
        matches!(self, Factor::AxisX | Factor::AxisT | Factor::Unit(_))
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::AxisX => write!(f, "x"),
            Factor::AxisT => write!(f, "t"),
            Factor::Unit(u) => write!(f, "({u})"),
            Factor::Curve(c) => match c.origin() {
                Some(o) => write!(f, "({o})"),
                None => write!(f, "(x - s(t))"),
            },
            Factor::Monic(m) => write!(f, "({m})"),
        }
    }
}

/// `scalar * prod factor^exponent`.
#[derive(Clone, Debug)]
pub struct FactoredBi {
    p: u32,
    scalar: FqElem,
    factors: Vec<(Factor, i64)>,
}

impl FactoredBi {
    pub fn one(p: u32) -> Self {
        FactoredBi { p, scalar: FqElem::one(p), factors: Vec::new() }
    }

    pub fn scalar_elem(c: FqElem) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FactoredBi { p: c.modulus(), scalar: c, factors: Vec::new() })
    }

    pub fn x(p: u32) -> Self {
        Self::one(p).times(Factor::AxisX, 1)
    }

    pub fn t(p: u32) -> Self {
        Self::one(p).times(Factor::AxisT, 1)
    }

    /// Appends `factor^e` (exponent zero is dropped).
    pub fn times(mut self, factor: Factor, e: i64) -> Self {
        if e != 0 {
            self.factors.push((factor, e));
        }
        self
    }

    /// Classifies a nonzero polynomial into monomial, unit and curve parts.
    pub fn from_poly(f: &BiPoly) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = f.modulus();
        let a = f.x_valuation().unwrap_or(0);
        let b = f.t_valuation().unwrap_or(0);
        let rest = f.div_monomial(a, b).expect("content divides");
        let mut out = Self::one(p).times(Factor::AxisX, a as i64).times(Factor::AxisT, b as i64);
        if rest.num_terms() == 1 && rest.coeff(0, 0) != FqElem::zero(p) {
            out.scalar = rest.coeff(0, 0);
        } else if !rest.coeff(0, 0).is_zero() {
            out = out.times(Factor::Unit(rest), 1);
        } else if is_good(&rest) == Goodness::Good {
            // x does not divide `rest`, so s is nonzero and the curve is not the x-axis.
            out = out.times(Factor::Curve(canonicalize(&rest, DEFAULT_CURVE_PREC)?), 1);
        } else {
            out = out.times(Factor::Monic(rest), 1);
        }
        Ok(out)
    }

    /// Wraps a canonical curve as a factor, folding `s = 0` into the x-axis.
    pub fn from_curve(c: GoodCurve) -> Self {
        let p = c.modulus();
        if let Some(origin) = c.origin() {
            return Self::from_poly(origin).unwrap_or_else(|_| Self::one(p));
        }
        if c.series().is_zero() {
            return Self::x(p);
        }
        Self::one(p).times(Factor::Curve(c), 1)
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn scalar(&self) -> FqElem {
        self.scalar
    }

    pub fn factors(&self) -> &[(Factor, i64)] {
        &self.factors
    }

    pub fn mul(&self, rhs: &FactoredBi) -> FactoredBi {
        let mut out = self.clone();
        out.scalar = out.scalar * rhs.scalar;
        out.factors.extend(rhs.factors.iter().cloned());
        out
    }

    pub fn inv(&self) -> FactoredBi {
        FactoredBi {
            p: self.p,
            scalar: self.scalar.inv().expect("scalar is nonzero"),
            factors: self.factors.iter().map(|(f, e)| (f.clone(), -e)).collect(),
        }
    }

    pub fn powi(&self, e: i64) -> FactoredBi {
        FactoredBi {
            p: self.p,
            scalar: self.scalar.powi(e).expect("scalar is nonzero"),
            factors: self.factors.iter().map(|(f, k)| (f.clone(), k * e)).collect(),
        }
    }

    /// Every factor is an axis or a unit.
    pub fn is_axis_supported(&self) -> bool {
        self.factors.iter().all(|(f, _)| f.is_axis_or_unit())
    }
}

impl fmt::Display for FactoredBi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut sep = "";
        if self.factors.is_empty() || self.scalar.value() != 1 {
            write!(f, "{}", self.scalar)?;
            sep = "*";
        }
        for (fac, e) in &self.factors {
            if *e == 1 {
                write!(f, "{sep}{fac}")?;
            } else {
                write!(f, "{sep}{fac}^{e}")?;
            }
            sep = "*";
        }
        Ok(())
    }
}

fn top_level_positions(text: &str, pred: impl Fn(u8, Option<u8>) -> bool) -> Result<Vec<usize>> {
    let bytes = text.as_bytes();
    let mut depth = 0i32;
    let mut out = Vec::new();
    let mut prev: Option<u8> = None;
    for (i, &c) in bytes.iter().enumerate() {
        match c {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Syntax { offset: i, message: "unbalanced ')'".into() });
                }
            }
            _ if depth == 0 && pred(c, prev) => out.push(i),
            _ => {}
        }
        if !c.is_ascii_whitespace() {
            prev = Some(c);
        }
    }
    Ok(out)
}

/// Parses a factored expression `base^e * base^e * ...` where each base is a
/// polynomial in the ordinary grammar and exponents may be negative, e.g.
/// `x^2 * (x + t)^-1 * (1 - x)`. Text with a top-level sum is one factor.
pub fn parse_factored(text: &str, p: u32) -> Result<FactoredBi> {
    let has_sum = !top_level_positions(text, |c, prev| (c == b'+' || c == b'-') && prev != Some(b'^') && prev.is_some())?.is_empty();
    if has_sum {
        return FactoredBi::from_poly(&parse_bipoly(text, p)?);
    }
    let stars = top_level_positions(text, |c, _| c == b'*')?;
    let mut out = FactoredBi::one(p);
    let mut start = 0;
    for end in stars.into_iter().chain(std::iter::once(text.len())) {
        let piece = &text[start..end];
        let carets = top_level_positions(piece, |c, _| c == b'^')?;
        let (base, exp) = match carets.last() {
            Some(&k) => {
                let e_text = piece[k + 1..].trim();
                let e: i64 = e_text.parse().map_err(|_| Error::Syntax {
                    offset: start + k + 1,
                    message: format!("bad exponent '{e_text}'"),
                })?;
                (&piece[..k], e)
            }
            None => (piece, 1),
        };
        let poly = parse_bipoly(base, p).map_err(|e| match e {
            Error::Syntax { offset, message } => Error::Syntax { offset: offset + start, message },
            Error::NegativeExponent { offset } => Error::NegativeExponent { offset: offset + start },
            other => other,
        })?;
        out = out.mul(&FactoredBi::from_poly(&poly)?.powi(exp));
        start = end + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classification() {
        let f = FactoredBi::from_poly(&parse_bipoly("x^2*t + x^3*t", 5).unwrap()).unwrap();
        let kinds: Vec<_> = f.factors().iter().map(|(k, e)| (k.to_string(), *e)).collect();
        assert_eq!(kinds, vec![("x".into(), 2), ("t".into(), 1), ("(1 + x)".into(), 1)]);
        let g = FactoredBi::from_poly(&parse_bipoly("x + t", 5).unwrap()).unwrap();
        assert!(matches!(g.factors()[0].0, Factor::Curve(_)));
        assert!(!g.is_axis_supported());
        let h = FactoredBi::from_poly(&parse_bipoly("x^2 - t^3", 5).unwrap()).unwrap();
        assert!(matches!(h.factors()[0].0, Factor::Monic(_)));
        let c = FactoredBi::from_poly(&parse_bipoly("3", 5).unwrap()).unwrap();
        assert_eq!(c.scalar(), FqElem::new(3, 5));
        assert!(c.factors().is_empty());
    }

    #[test]
    fn factored_parsing() {
        let f = parse_factored("x * (1 - x)^-1", 5).unwrap();
        assert!(f.is_axis_supported());
        assert_eq!(f.factors().len(), 2);
        assert_eq!(f.factors()[1].1, -1);
        let g = parse_factored("x + t", 5).unwrap();
        assert_eq!(g.factors().len(), 1);
        let h = parse_factored("x^2 * t^-3 * (x+t)^2", 7).unwrap();
        let exps: Vec<i64> = h.factors().iter().map(|(_, e)| *e).collect();
        assert_eq!(exps, vec![2, -3, 2]);
        assert!(parse_factored("x^-1", 5).is_ok());
        assert!(matches!(parse_factored("x * (t", 5), Err(Error::Syntax { .. })));
        assert!(matches!(parse_factored("x^a", 5), Err(Error::Syntax { .. })));
        assert_eq!(parse_factored("0", 5).err(), Some(Error::DivisionByZero));
    }
}
