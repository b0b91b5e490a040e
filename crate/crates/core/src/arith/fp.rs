//! Prime fields F_p with p < 2^31.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Checks primality of a candidate modulus.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Validates `p` as a supported field characteristic.
pub fn check_prime(p: u64) -> Result<u32> {
    if p < (1 << 31) && is_prime(p) {
        Ok(p as u32)
    } else {
        Err(Error::NotPrime(p))
    }
}

/// An element of F_p. The modulus travels with the value so that series and
/// polynomials over F_p need no separate field handle.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem {
    value: u32,
    p: u32,
}

impl FqElem {
    /// Builds `value mod p`. The caller guarantees `p` is prime (see [`check_prime`]).
    pub fn new(value: i64, p: u32) -> Self {
        let v = value.rem_euclid(p as i64) as u32;
        FqElem { value: v, p }
    }

    pub fn zero(p: u32) -> Self {
        FqElem { value: 0, p }
    }

    pub fn one(p: u32) -> Self {
        FqElem { value: 1 % p, p }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = FqElem::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Integer power, negative exponents through the inverse.
    pub fn powi(self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    pub fn inv(self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.p as u64 - 2))
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for FqElem {
    type Output = FqElem;
    fn add(self, rhs: FqElem) -> FqElem {
        debug_assert_eq!(self.p, rhs.p);
        let s = self.value as u64 + rhs.value as u64;
        FqElem { value: (s % self.p as u64) as u32, p: self.p }
    }
}

impl Sub for FqElem {
    type Output = FqElem;
    fn sub(self, rhs: FqElem) -> FqElem {
        debug_assert_eq!(self.p, rhs.p);
        let s = self.value as u64 + self.p as u64 - rhs.value as u64;
        FqElem { value: (s % self.p as u64) as u32, p: self.p }
    }
}

impl Mul for FqElem {
    type Output = FqElem;
    fn mul(self, rhs: FqElem) -> FqElem {
        debug_assert_eq!(self.p, rhs.p);
        let s = self.value as u64 * rhs.value as u64;
        FqElem { value: (s % self.p as u64) as u32, p: self.p }
    }
}

impl Neg for FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        if self.value == 0 {
            self
        } else {
            FqElem { value: self.p - self.value, p: self.p }
        }
    }
}

/// Coefficient domains usable inside [`TruncSeries`](super::TruncSeries).
///
/// Zero and one are produced from an existing element because the domains
/// carry context (a modulus, a variable tag, a precision).
pub trait Coeff: Clone + fmt::Debug + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// True when no nonzero information is known about the element.
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
}

impl Coeff for FqElem {
    fn zero_like(&self) -> Self {
        FqElem::zero(self.p)
    }
    fn one_like(&self) -> Self {
        FqElem::one(self.p)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        *self + *rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        *self - *rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        *self * *rhs
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn inv(&self) -> Result<Self> {
        FqElem::inv(*self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn primality() {
        assert!(is_prime(2) && is_prime(3) && is_prime(2_147_483_647));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(2_147_483_649));
        assert!(check_prime(4).is_err());
        assert!(check_prime(1 << 31).is_err());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(FqElem::zero(7).inv(), Err(Error::DivisionByZero));
    }

    fn elem(p: u32) -> impl Strategy<Value = FqElem> {
        (0..p as i64).prop_map(move |v| FqElem::new(v, p))
    }

    proptest! {
        #[test]
        fn field_axioms(
            (a, b, c) in prop_oneof![Just(2u32), Just(5), Just(7), Just(2_147_483_647)]
                .prop_flat_map(|p| (elem(p), elem(p), elem(p)))
        ) {
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a * (b + c), a * b + a * c);
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!(a - a, FqElem::zero(a.modulus()));
            if !a.is_zero() {
                prop_assert_eq!(a * a.inv().unwrap(), FqElem::one(a.modulus()));
            }
        }
    }
}
