//! Truncated one-variable Laurent series with absolute precision.
//!
//! A series with precision `N` knows every coefficient of exponent `< N`;
//! nothing is known at or above `N`. Stored form is normalized: the first
//! stored coefficient is nonzero (so the valuation is certified) or there are
//! no stored coefficients at all (the series is `O(var^N)`).

use std::fmt;

use super::fp::Coeff;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    T,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X => write!(f, "x"),
            Var::T => write!(f, "t"),
        }
    }
}

/// Precision used for elements known exactly (exact zeros used as templates).
pub const EXACT_PREC: i64 = 1 << 40;

#[derive(Clone)]
pub struct TruncSeries<D> {
    var: Var,
    val: i64,
    coeffs: Vec<D>,
    prec: i64,
    zero: D,
}

impl<D: Coeff> PartialEq for TruncSeries<D> {
    fn eq(&self, other: &Self) -> bool {
        self.var == other.var && self.val == other.val && self.prec == other.prec && self.coeffs == other.coeffs
    }
}

impl<D: Coeff> TruncSeries<D> {
    /// `O(var^prec)`.
    pub fn zero(var: Var, zero: D, prec: i64) -> Self {
        TruncSeries { var, val: prec, coeffs: Vec::new(), prec, zero }
    }

    /// Builds `sum coeffs[k] var^(val+k) + O(var^prec)`.
    pub fn from_coeffs(var: Var, val: i64, coeffs: Vec<D>, prec: i64, zero: D) -> Self {
        let mut s = TruncSeries { var, val, coeffs, prec, zero };
        s.normalize();
        s
    }

    /// An exactly known zero.
    pub fn exact_zero(var: Var, zero: D) -> Self {
        Self::zero(var, zero, EXACT_PREC)
    }

    pub fn monomial(var: Var, c: D, exp: i64, prec: i64) -> Self {
        let zero = c.zero_like();
        Self::from_coeffs(var, exp, vec![c], prec, zero)
    }

    fn normalize(&mut self) {
        let keep = (self.prec - self.val).max(0) as usize;
        self.coeffs.truncate(keep);
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.val = self.prec;
            }
            Some(k) => {
                self.coeffs.drain(..k);
                self.val += k as i64;
                while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                    self.coeffs.pop();
                }
            }
        }
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn zero_elem(&self) -> &D {
        &self.zero
    }

    /// Certified valuation, or `None` when every known coefficient vanishes.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    /// Certified valuation or [`Error::UncertifiedValuation`].
    pub fn certified_valuation(&self) -> Result<i64> {
        self.valuation().ok_or(Error::UncertifiedValuation)
    }

    /// Lower bound on the valuation (the valuation when certified, else `prec`).
    pub fn lowest(&self) -> i64 {
        self.val
    }

    pub fn leading(&self) -> Option<&D> {
        self.coeffs.first()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `var^k`; exponents at or above the precision read as zero.
    pub fn coeff(&self, k: i64) -> D {
        if k < self.val || k >= self.prec {
            return self.zero.clone();
        }
        self.coeffs.get((k - self.val) as usize).cloned().unwrap_or_else(|| self.zero.clone())
    }

    /// Stored coefficients starting at the valuation.
    pub fn coeffs(&self) -> &[D] {
        &self.coeffs
    }

    /// Lowers the precision to `min(self.prec, n)`.
    pub fn with_prec(&self, n: i64) -> Self {
        let mut s = self.clone();
        s.prec = s.prec.min(n);
        if s.val > s.prec {
            s.val = s.prec;
        }
        s.normalize();
        s
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut s = self.clone();
        s.val += k;
        s.prec += k;
        s
    }

    pub fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.var, rhs.var);
        let prec = self.prec.min(rhs.prec);
        let lo = self.val.min(rhs.val).min(prec);
        let coeffs = (lo..prec).map(|k| self.coeff(k).add(&rhs.coeff(k))).collect();
        Self::from_coeffs(self.var, lo, coeffs, prec, self.zero.clone())
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        s.coeffs = s.coeffs.iter().map(|c| c.neg()).collect();
        s
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &D) -> Self {
        let mut s = self.clone();
        s.coeffs = s.coeffs.iter().map(|a| a.mul(c)).collect();
        s.normalize();
        s
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.var, rhs.var);
        let prec = (self.prec + rhs.val).min(rhs.prec + self.val);
        let lo = (self.val + rhs.val).min(prec);
        let len = (prec - lo).max(0) as usize;
        let mut coeffs = vec![self.zero.clone(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= len {
                    break;
                }
                coeffs[k] = coeffs[k].add(&a.mul(b));
            }
        }
        Self::from_coeffs(self.var, lo, coeffs, prec, self.zero.clone())
    }

    /// Multiplicative inverse; needs a certified, invertible leading coefficient.
    ///
    /// With `self = var^v (c0 + c1 var + ...) + O(var^N)` the result is known
    /// to the same relative precision `N - v`, i.e. absolute precision `N - 2v`.
    pub fn invert(&self) -> Result<Self> {
        let v = self.certified_valuation()?;
        let c0 = &self.coeffs[0];
        let c0_inv = c0.inv().map_err(|_| Error::NotInvertible(format!("{c0:?}")))?;
        let rel = (self.prec - v) as usize;
        let mut out: Vec<D> = Vec::with_capacity(rel);
        out.push(c0_inv.clone());
        let minus_inv = c0_inv.neg();
        for n in 1..rel {
            let mut acc = self.zero.clone();
            for k in 1..=n.min(self.coeffs.len() - 1) {
                acc = acc.add(&self.coeffs[k].mul(&out[n - k]));
            }
            out.push(minus_inv.mul(&acc));
        }
        Ok(Self::from_coeffs(self.var, -v, out, self.prec - 2 * v, self.zero.clone()))
    }

    /// Integer power; negative exponents go through [`Self::invert`].
    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let one = self.one_series();
        let mut acc = one;
        let mut b = base;
        let mut n = e.unsigned_abs();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&b);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(&b);
            }
        }
        Ok(acc)
    }

    /// The constant series 1 at this series' relative precision.
    fn one_series(&self) -> Self {
        let one = self.zero.one_like();
        let rel = if self.coeffs.is_empty() { 0 } else { self.prec - self.val };
        Self::from_coeffs(self.var, 0, vec![one], rel.max(1), self.zero.clone())
    }

    /// True when `self` and `other` agree on every exponent below the smaller precision.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let n = self.prec.min(other.prec);
        let lo = self.val.min(other.val).min(n);
        (lo..n).all(|k| self.coeff(k) == other.coeff(k))
    }
}

impl<D: Coeff> Coeff for TruncSeries<D> {
    fn zero_like(&self) -> Self {
        TruncSeries::zero(self.var, self.zero.clone(), self.prec)
    }
    fn one_like(&self) -> Self {
        TruncSeries::from_coeffs(self.var, 0, vec![self.zero.one_like()], self.prec.max(1), self.zero.clone())
    }
    fn is_zero(&self) -> bool {
        TruncSeries::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        TruncSeries::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        TruncSeries::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        TruncSeries::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        TruncSeries::neg(self)
    }
    fn inv(&self) -> Result<Self> {
        self.invert()
    }
}

impl<D: Coeff> fmt::Debug for TruncSeries<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c:?}){}^{}", self.var, self.val + k as i64)?;
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "O({}^{})", self.var, self.prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::fp::FqElem;
    use proptest::prelude::*;

    fn fq(v: i64) -> FqElem {
        FqElem::new(v, 5)
    }

    fn tser(val: i64, c: &[i64], prec: i64) -> TruncSeries<FqElem> {
        TruncSeries::from_coeffs(Var::T, val, c.iter().map(|&v| fq(v)).collect(), prec, fq(0))
    }

    #[test]
    fn geometric_series() {
        let s = tser(0, &[1, -1], 4);
        assert_eq!(s.invert().unwrap(), tser(0, &[1, 1, 1, 1], 4));
    }

    #[test]
    fn invert_uniformizer() {
        let inv = tser(1, &[1], 4).invert().unwrap();
        assert_eq!(inv.valuation(), Some(-1));
        assert_eq!(inv.coeffs(), &[fq(1)]);
        assert_eq!(inv.prec(), 2);
    }

    #[test]
    fn nested_inverse_of_x_plus_t() {
        // x + t in F_5((x))((t)), inner precision 4, outer precision 3.
        let x = TruncSeries::from_coeffs(Var::X, 1, vec![fq(1)], 4, fq(0));
        let one = TruncSeries::from_coeffs(Var::X, 0, vec![fq(1)], 4, fq(0));
        let zero_inner = TruncSeries::zero(Var::X, fq(0), 4);
        let s = TruncSeries::from_coeffs(Var::T, 0, vec![x.clone(), one.clone()], 3, zero_inner);
        let inv = s.invert().unwrap();
        // x^-1 - x^-2 t + x^-3 t^2
        assert_eq!(inv.valuation(), Some(0));
        assert_eq!(inv.coeff(0).valuation(), Some(-1));
        assert_eq!(inv.coeff(1).valuation(), Some(-2));
        assert_eq!(inv.coeff(1).leading(), Some(&fq(-1)));
        assert_eq!(inv.coeff(2).valuation(), Some(-3));
        assert_eq!(inv.coeff(2).leading(), Some(&fq(1)));
        // multiplying back gives 1 to the precision reached
        let prod = s.mul(&inv);
        assert_eq!(prod.prec(), 3);
        assert!(prod.coeff(0).agrees_with(&one));
        assert!(prod.coeff(1).is_zero());
        assert!(prod.coeff(2).is_zero());
    }

    #[test]
    fn uncertified_inverse_rejected() {
        let s = TruncSeries::zero(Var::T, fq(0), 3);
        assert_eq!(s.invert(), Err(Error::UncertifiedValuation));
    }

    #[test]
    fn powers() {
        let s = tser(1, &[2, 1], 6);
        let cube = s.powi(3).unwrap();
        assert!(cube.agrees_with(&s.mul(&s).mul(&s)));
        let minus = s.powi(-2).unwrap();
        let back = minus.mul(&s.mul(&s));
        assert_eq!(back.valuation(), Some(0));
        assert!(back.agrees_with(&tser(0, &[1], back.prec())));
    }

    proptest! {
        #[test]
        fn double_inverse(lead in 1i64..5, rest in proptest::collection::vec(0i64..5, 0..8), v in -3i64..4) {
            let mut c = vec![lead];
            c.extend(rest);
            let s = tser(v, &c, v + 10);
            let back = s.invert().unwrap().invert().unwrap();
            prop_assert!(back.agrees_with(&s));
            prop_assert!(s.mul(&s.invert().unwrap()).agrees_with(&tser(0, &[1], 100)));
        }
    }
}
