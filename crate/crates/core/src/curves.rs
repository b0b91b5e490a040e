//! Good curves in Spec F_p[[x, t]]: curves through the origin meeting `t = 0`
//! transversely. Each such curve is the zero locus of a unique `x - s(t)`
//! with `s(0) = 0`, found here by Newton iteration.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{BiPoly, FqElem, TruncSeries, Var};
use crate::error::{Error, Result};

/// Precision at which curve identity is decided.
pub const DEFAULT_CURVE_PREC: usize = 64;

/// Largest precision reached by adaptive refinement.
pub const PRECISION_CAP: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Goodness {
    Good,
    NotThroughOrigin,
    /// `f(x, 0)` vanishes to order other than one: tangent to, or containing, `t = 0`.
    TangentOrContained,
}

impl fmt::Display for Goodness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Goodness::Good => write!(f, "good"),
            Goodness::NotThroughOrigin => write!(f, "not through origin"),
            Goodness::TangentOrContained => write!(f, "tangent to or contained in t=0"),
        }
    }
}

/// Diagnoses whether `f = 0` is a good curve.
pub fn is_good(f: &BiPoly) -> Goodness {
    let p = f.modulus();
    if !f.coeff(0, 0).is_zero() {
        Goodness::NotThroughOrigin
    } else if f.coeff(1, 0) == FqElem::zero(p) {
        Goodness::TangentOrContained
    } else {
        Goodness::Good
    }
}

/// A good curve in Weierstrass form `x = s(t)`, `s` known mod `t^prec`.
#[derive(Clone, Debug)]
pub struct GoodCurve {
    s: TruncSeries<FqElem>,
    origin: Option<BiPoly>,
}

/// Hashable identity of a curve: the coefficients `s_1 .. s_{N-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CurveKey {
    pub p: u32,
    pub s: Vec<u32>,
}

impl CurveKey {
    pub fn is_x_axis(&self) -> bool {
        self.s.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for CurveKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.s.iter().rposition(|&c| c != 0);
        write!(f, "x = ")?;
        match last {
            None => write!(f, "0"),
            Some(last) => {
                let mut first = true;
                for (k, &c) in self.s.iter().enumerate().take(last + 1) {
                    if c == 0 {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    if k == 0 {
                        write!(f, "{c}")?;
                    } else if k == 1 {
                        write!(f, "{c}*t")?;
                    } else {
                        write!(f, "{c}*t^{k}")?;
                    }
                }
                write!(f, " + O(t^{})", self.s.len())
            }
        }
    }
}

impl GoodCurve {
    /// The curve `x = s(t)` given directly by a series with `s(0) = 0`.
    pub fn from_series(s: TruncSeries<FqElem>) -> Result<Self> {
        if s.var() != Var::T {
            return Err(Error::Invalid("curve parameter must be a series in t".into()));
        }
        if s.lowest() < 1 {
            return Err(Error::Invalid("curve parameter must satisfy s(0) = 0".into()));
        }
        Ok(GoodCurve { s, origin: None })
    }

    /// The line `x = 0`, exact to precision `prec`.
    pub fn x_axis(p: u32, prec: usize) -> Self {
        GoodCurve { s: TruncSeries::zero(Var::T, FqElem::zero(p), prec as i64), origin: Some(BiPoly::x(p)) }
    }

    pub fn modulus(&self) -> u32 {
        self.s.zero_elem().modulus()
    }

    pub fn series(&self) -> &TruncSeries<FqElem> {
        &self.s
    }

    pub fn origin(&self) -> Option<&BiPoly> {
        self.origin.as_ref()
    }

    pub fn prec(&self) -> usize {
        self.s.prec() as usize
    }

    /// Dense coefficients `s_0 .. s_{prec-1}` as residues.
    pub fn coeffs(&self) -> Vec<u32> {
        (0..self.s.prec()).map(|k| self.s.coeff(k).value()).collect()
    }

    /// Recomputes at precision `n` from the originating polynomial.
    pub fn refined(&self, n: usize) -> Result<GoodCurve> {
        if n <= self.prec() {
            return Ok(GoodCurve { s: self.s.with_prec(n as i64), origin: self.origin.clone() });
        }
        match &self.origin {
            Some(f) => canonicalize(f, n),
            None => Err(Error::PrecisionMismatch { need: n, have: self.prec() }),
        }
    }

    /// Identity key at [`DEFAULT_CURVE_PREC`].
    pub fn key(&self) -> Result<CurveKey> {
        let c = self.refined(DEFAULT_CURVE_PREC)?;
        Ok(CurveKey { p: self.modulus(), s: c.coeffs() })
    }

    /// `v_t(s)`; `None` if `s` vanishes to the known precision.
    pub fn s_valuation(&self) -> Option<i64> {
        self.s.valuation()
    }
}

/// Solves `f(s(t), t) = 0 mod t^n` for `s` with `s(0) = 0`.
pub fn canonicalize(f: &BiPoly, n: usize) -> Result<GoodCurve> {
    match is_good(f) {
        Goodness::Good => {}
        g => return Err(Error::NotGood(g.to_string())),
    }
    let p = f.modulus();
    let prec = n as i64;
    let fx = f.dx();
    let mut s = TruncSeries::zero(Var::T, FqElem::zero(p), prec);
    // Newton doubles the number of correct coefficients per step.
    let max_steps = usize::BITS - n.leading_zeros() + 2;
    for _ in 0..=max_steps {
        let r = f.substitute_x(&s);
        if r.is_zero() {
            return Ok(GoodCurve { s, origin: Some(f.clone()) });
        }
        let d = fx.substitute_x(&s);
        let step = r.mul(&d.invert()?);
        s = s.sub(&step).with_prec(prec);
    }
    Err(Error::HenselStall)
}

/// Equality of two curves modulo `t^n`.
pub fn curve_eq(c1: &GoodCurve, c2: &GoodCurve, n: usize) -> Result<bool> {
    for c in [c1, c2] {
        if c.prec() < n {
            return Err(Error::PrecisionMismatch { need: n, have: c.prec() });
        }
    }
    Ok((1..n as i64).all(|k| c1.s.coeff(k) == c2.s.coeff(k)))
}
