use serde::{Deserialize, Serialize};

use crate::arith::{FqElem, TruncSeries, Var};
use crate::error::{Error, Result};
use crate::rootdatum::Coweight;

pub type XSeries = TruncSeries<FqElem>;

/// Square matrix over `F_p((x))`, entries known to absolute precision.
#[derive(Clone, Debug)]
pub struct LatMat {
    p: u32,
    rows: Vec<Vec<XSeries>>,
}

/// JSON form: each entry a list of coefficients of `x^0, x^1, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatMatJson(pub Vec<Vec<Vec<i64>>>);

impl LatMat {
    pub fn new(p: u32, rows: Vec<Vec<XSeries>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("matrix must be square".into()));
        }
        Ok(LatMat { p, rows })
    }

    /// Polynomial entries given by coefficient lists, known to `prec`.
    pub fn from_coeff_lists(p: u32, entries: &[Vec<Vec<i64>>], prec: i64) -> Result<Self> {
        let rows = entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| {
                        let coeffs = c.iter().map(|&v| FqElem::new(v, p)).collect();
                        XSeries::from_coeffs(Var::X, 0, coeffs, prec, FqElem::zero(p))
                    })
                    .collect()
            })
            .collect();
        Self::new(p, rows)
    }

    /// `diag(x^{lambda_1}, ..., x^{lambda_n})`.
    pub fn diag_power(p: u32, lam: &[i64], prec: i64) -> Self {
        let n = lam.len();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            XSeries::monomial(Var::X, FqElem::one(p), lam[i], prec)
                        } else {
                            XSeries::zero(Var::X, FqElem::zero(p), prec)
                        }
                    })
                    .collect()
            })
            .collect();
        LatMat { p, rows }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn entry(&self, i: usize, j: usize) -> &XSeries {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<XSeries>] {
        &self.rows
    }

    pub fn mul(&self, rhs: &LatMat) -> LatMat {
        let n = self.n();
        let zero = XSeries::exact_zero(Var::X, FqElem::zero(self.p));
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(zero.clone(), |acc, k| acc.add(&self.rows[i][k].mul(&rhs.rows[k][j]))))
                    .collect()
            })
            .collect();
        LatMat { p: self.p, rows }
    }
}

/// Elementary-divisor exponents `lambda_1 >= ... >= lambda_n` by
/// valuation-pivot elimination. Refuses whenever an unknown entry might
/// undercut the chosen pivot.
pub fn smith_cartan(g: &LatMat) -> Result<Coweight> {
    let n = g.n();
    let mut a = g.rows.clone();
    let mut out = Vec::with_capacity(n);
    for r in 0..n {
        let mut best: Option<(i64, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(r) {
            for (j, e) in row.iter().enumerate().skip(r) {
                if let Some(v) = e.valuation() {
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { return Err(Error::UncertifiedValuation) };
        for row in a.iter().skip(r) {
            for e in row.iter().skip(r) {
                if e.is_zero() && e.prec() <= v {
                    return Err(Error::UncertifiedValuation);
                }
            }
        }
        a.swap(r, pi);
        for row in a.iter_mut() {
            row.swap(r, pj);
        }
        let pinv = a[r][r].invert()?;
        for i in r + 1..n {
            if a[i][r].is_zero() {
                continue;
            }
            let f = a[i][r].mul(&pinv);
            for j in r + 1..n {
                let d = f.mul(&a[r][j]);
                a[i][j] = a[i][j].sub(&d);
            }
        }
        out.push(v);
    }
    out.sort_unstable_by(|x, y| y.cmp(x));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32, e: &[&[&[i64]]]) -> LatMat {
        let v: Vec<Vec<Vec<i64>>> = e.iter().map(|r| r.iter().map(|c| c.to_vec()).collect()).collect();
        LatMat::from_coeff_lists(p, &v, 12).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(smith_cartan(&LatMat::diag_power(3, &[2, 0], 10)).unwrap(), vec![2, 0]);
        assert_eq!(smith_cartan(&m(3, &[&[&[0, 1], &[1]], &[&[], &[0, 1]]])).unwrap(), vec![2, 0]);
        assert_eq!(smith_cartan(&LatMat::diag_power(3, &[1, 1], 10)).unwrap(), vec![1, 1]);
        assert_eq!(smith_cartan(&LatMat::diag_power(5, &[-1, 3, 0], 10)).unwrap(), vec![3, 0, -1]);
        // [[x, x], [x, x + x^2]] ~ diag(x, x^2)
        assert_eq!(smith_cartan(&m(2, &[&[&[0, 1], &[0, 1]], &[&[0, 1], &[0, 1, 1]]])).unwrap(), vec![2, 1]);
    }

    #[test]
    fn insufficient_precision_is_refused() {
        let g = LatMat::from_coeff_lists(3, &[vec![vec![0, 0, 0, 1], vec![]], vec![vec![], vec![]]], 4).unwrap();
        assert_eq!(smith_cartan(&g), Err(Error::UncertifiedValuation));
    }
}
