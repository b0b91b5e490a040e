use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::arith::QPoly;

/// Laurent polynomial in `v` with integer coefficients; `q = v^2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LaurentPoly(BTreeMap<i32, i64>);

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c v^e`.
    pub fn monomial(c: i64, e: i32) -> Self {
        Self::from_terms([(e, c)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut m = BTreeMap::new();
        for (e, c) in terms {
            *m.entry(e).or_insert(0) += c;
        }
        m.retain(|_, c| *c != 0);
        LaurentPoly(m)
    }

    /// `P(q)` at `q = v^2`.
    pub fn from_q(p: &QPoly) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(k, &c)| (2 * k as i32, c)))
    }

    /// `P(q^{-1})` at `q = v^2`.
    pub fn from_q_inverse(p: &QPoly) -> Self {
        Self::from_terms(p.coeffs().iter().enumerate().map(|(k, &c)| (-2 * k as i32, c)))
    }

    pub fn terms(&self) -> &BTreeMap<i32, i64> {
        &self.0
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.0.get(&e).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiplies by `v^e`.
    pub fn shift(&self, e: i32) -> Self {
        LaurentPoly(self.0.iter().map(|(k, c)| (k + e, *c)).collect())
    }

    pub fn scale(&self, s: i64) -> Self {
        Self::from_terms(self.0.iter().map(|(&k, &c)| (k, c * s)))
    }

    /// `(c, e)` when this is `c v^e` with `c = +-1`.
    pub fn unit_monomial(&self) -> Option<(i64, i32)> {
        match self.0.iter().collect::<Vec<_>>().as_slice() {
            [(&e, &c)] if c.abs() == 1 => Some((c, e)),
            _ => None,
        }
    }

    /// Single-term `(c, e)`, any coefficient.
    pub fn as_monomial(&self) -> Option<(i64, i32)> {
        match self.0.iter().collect::<Vec<_>>().as_slice() {
            [(&e, &c)] => Some((c, e)),
            _ => None,
        }
    }

    /// Value at `q` when every exponent is even and nonnegative.
    pub fn eval_q(&self, q: i64) -> Option<i64> {
        self.0.iter().try_fold(0i64, |acc, (&e, &c)| {
            (e >= 0 && e % 2 == 0).then(|| acc + c * q.pow(e as u32 / 2))
        })
    }

    /// `v -> v^{-1}`.
    pub fn bar(&self) -> Self {
        LaurentPoly(self.0.iter().map(|(k, c)| (-k, *c)).collect())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(self.0.iter().chain(&rhs.0).map(|(&e, &c)| (e, c)))
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly(self.0.iter().map(|(k, c)| (*k, -c)).collect())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(self.0.iter().flat_map(|(a, x)| rhs.0.iter().map(move |(b, y)| (a + b, x * y))))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, &c)) in self.0.iter().rev().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (e, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => write!(f, "v")?,
                (1, _) => write!(f, "{a}*v")?,
                (_, 1) => write!(f, "v^{e}")?,
                _ => write!(f, "{a}*v^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = LaurentPoly::from_terms([(2, 1), (0, 1)]);
        let b = LaurentPoly::from_terms([(-1, 1), (1, -1)]);
        assert_eq!((&a * &b).to_string(), "-v^3 + v^-1");
        assert!((&a - &a).is_zero());
        assert_eq!(LaurentPoly::from_q(&QPoly::from_coeffs(vec![1, 1])), a);
        assert_eq!(a.eval_q(3), Some(4));
        assert_eq!(b.eval_q(3), None);
        assert_eq!(LaurentPoly::monomial(-1, 3).unit_monomial(), Some((-1, 3)));
        assert_eq!(a.unit_monomial(), None);
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"{"0":1,"2":1}"#);
    }
}
