use std::collections::BTreeMap;
use std::fmt;

use super::fp::FqElem;
use super::series::{TruncSeries, Var};

/// An exact polynomial in F_p[x, t], keyed by `(x exponent, t exponent)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiPoly {
    p: u32,
    terms: BTreeMap<(u32, u32), FqElem>,
}

impl BiPoly {
    pub fn zero(p: u32) -> Self {
        BiPoly { p, terms: BTreeMap::new() }
    }

    pub fn constant(c: FqElem) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn one(p: u32) -> Self {
        Self::constant(FqElem::one(p))
    }

    pub fn monomial(c: FqElem, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { p: c.modulus(), terms }
    }

    pub fn x(p: u32) -> Self {
        Self::monomial(FqElem::one(p), 1, 0)
    }

    pub fn t(p: u32) -> Self {
        Self::monomial(FqElem::one(p), 0, 1)
    }

    /// Builds from `(i, j, c)` triples, summing repeats and dropping zeros.
    pub fn from_terms(p: u32, it: impl IntoIterator<Item = (u32, u32, i64)>) -> Self {
        let mut out = BiPoly::zero(p);
        for (i, j, c) in it {
            out.add_term(i, j, FqElem::new(c, p));
        }
        out
    }

    fn add_term(&mut self, i: u32, j: u32, c: FqElem) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert(FqElem::zero(self.p));
        *e = *e + c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> FqElem {
        self.terms.get(&(i, j)).copied().unwrap_or(FqElem::zero(self.p))
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), FqElem)> + '_ {
        self.terms.iter().map(|(&k, &v)| (k, v))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// Largest power of t dividing the polynomial (`None` for zero).
    pub fn t_valuation(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).min()
    }

    /// Largest power of x dividing the polynomial (`None` for zero).
    pub fn x_valuation(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).min()
    }

    /// Coefficient of t^j as a polynomial in x, as a dense coefficient vector.
    pub fn t_row(&self, j: u32) -> Vec<FqElem> {
        let mut out = Vec::new();
        for (&(i, jj), &c) in &self.terms {
            if jj == j {
                let i = i as usize;
                if out.len() <= i {
                    out.resize(i + 1, FqElem::zero(self.p));
                }
                out[i] = c;
            }
        }
        out
    }

    /// Coefficient of x^i as a polynomial in t, as a dense coefficient vector.
    pub fn x_row(&self, i: u32) -> Vec<FqElem> {
        let mut out = Vec::new();
        for (&(ii, j), &c) in &self.terms {
            if ii == i {
                let j = j as usize;
                if out.len() <= j {
                    out.resize(j + 1, FqElem::zero(self.p));
                }
                out[j] = c;
            }
        }
        out
    }

    /// Swaps the roles of x and t.
    pub fn swap_vars(&self) -> BiPoly {
        BiPoly {
            p: self.p,
            terms: self.terms.iter().map(|(&(i, j), &c)| ((j, i), c)).collect(),
        }
    }

    /// Divides by x^a t^b; returns `None` unless the division is exact.
    pub fn div_monomial(&self, a: u32, b: u32) -> Option<BiPoly> {
        let mut terms = BTreeMap::new();
        for (&(i, j), &c) in &self.terms {
            if i < a || j < b {
                return None;
            }
            terms.insert((i - a, j - b), c);
        }
        Some(BiPoly { p: self.p, terms })
    }

    pub fn scale(&self, c: FqElem) -> BiPoly {
        let mut out = BiPoly::zero(self.p);
        for (&(i, j), &a) in &self.terms {
            out.add_term(i, j, a * c);
        }
        out
    }

    pub fn add(&self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (&(i, j), &c) in &rhs.terms {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn sub(&self, rhs: &BiPoly) -> BiPoly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly {
            p: self.p,
            terms: self.terms.iter().map(|(&k, &c)| (k, -c)).collect(),
        }
    }

    pub fn mul(&self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero(self.p);
        for (&(i1, j1), &a) in &self.terms {
            for (&(i2, j2), &b) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, a * b);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::one(self.p);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative in x.
    pub fn dx(&self) -> BiPoly {
        let mut out = BiPoly::zero(self.p);
        for (&(i, j), &c) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, c * FqElem::new(i as i64, self.p));
            }
        }
        out
    }

    /// Keeps only terms with t-exponent below `n`.
    pub fn truncate_t(&self, n: u32) -> BiPoly {
        BiPoly {
            p: self.p,
            terms: self.terms.iter().filter(|(&(_, j), _)| j < n).map(|(&k, &c)| (k, c)).collect(),
        }
    }

    /// Substitutes x = s(t) for a power series `s` in t, giving a series in t.
    ///
    /// The result is exact to the precision of `s` (when `s` has positive
    /// valuation) and to `prec` otherwise.
    pub fn substitute_x(&self, s: &TruncSeries<FqElem>) -> TruncSeries<FqElem> {
        let p = self.p;
        let prec = s.prec();
        let zero = TruncSeries::zero(Var::T, FqElem::zero(p), prec);
        // Horner in x with polynomial-in-t coefficients.
        let mut acc = zero.clone();
        for i in (0..=self.x_degree()).rev() {
            let row = self.x_row(i);
            let c = TruncSeries::from_coeffs(Var::T, 0, row, prec, FqElem::zero(p));
            acc = acc.mul(s).add(&c);
        }
        acc.with_prec(prec)
    }

    /// Evaluates at x = 0, as a polynomial in t.
    pub fn at_x_zero(&self) -> Vec<FqElem> {
        self.x_row(0)
    }

    /// Evaluates at t = 0, as a polynomial in x.
    pub fn at_t_zero(&self) -> Vec<FqElem> {
        self.t_row(0)
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, c: u32, i: u32, j: u32) -> fmt::Result {
    let mut parts = Vec::new();
    if c != 1 || (i == 0 && j == 0) {
        parts.push(c.to_string());
    }
    match i {
        0 => {}
        1 => parts.push("x".into()),
        _ => parts.push(format!("x^{i}")),
    }
    match j {
        0 => {}
        1 => parts.push("t".into()),
        _ => parts.push(format!("t^{j}")),
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // graded order: low total degree first
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by_key(|(&(i, j), _)| (i + j, j, i));
        for (n, (&(i, j), c)) in keys.into_iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            fmt_monomial(f, c.value(), i, j)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly[p={}]({})", self.p, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let x = BiPoly::x(5);
        let t = BiPoly::t(5);
        let s = x.add(&t);
        let sq = s.mul(&s);
        assert_eq!(sq.coeff(1, 1), FqElem::new(2, 5));
        assert_eq!(sq.sub(&x.mul(&x)).sub(&t.mul(&t)).sub(&x.mul(&t).scale(FqElem::new(2, 5))), BiPoly::zero(5));
        assert_eq!(s.pow(5).num_terms(), 2); // Frobenius
    }

    #[test]
    fn valuations_and_rows() {
        let f = BiPoly::from_terms(7, [(2, 1, 1), (3, 1, 2), (0, 3, 1)]);
        assert_eq!(f.t_valuation(), Some(1));
        assert_eq!(f.x_valuation(), Some(0));
        assert_eq!(f.t_row(1), vec![FqElem::zero(7), FqElem::zero(7), FqElem::one(7), FqElem::new(2, 7)]);
        assert_eq!(f.div_monomial(0, 1).unwrap().t_valuation(), Some(0));
        assert!(f.div_monomial(1, 0).is_none());
        assert_eq!(f.dx().coeff(1, 1), FqElem::new(2, 7));
    }

    #[test]
    fn substitution() {
        // (x + t) at x = -t vanishes
        let f = BiPoly::from_terms(5, [(1, 0, 1), (0, 1, 1)]);
        let s = TruncSeries::from_coeffs(Var::T, 0, vec![FqElem::zero(5), FqElem::new(-1, 5)], 10, FqElem::zero(5));
        assert!(f.substitute_x(&s).is_zero());
    }
}
