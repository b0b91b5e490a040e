//! Orbit combinatorics of the affine Grassmannian: dimensions, point counts
//! of `Gr^lambda` and its closure, and the convolution support law.

use serde::Serialize;

use crate::arith::QPoly;
use crate::error::Result;
use crate::rootdatum::{Coweight, RootDatum};

/// `dim Gr^lambda = <lambda, 2 rho>`.
pub fn orbit_dim(d: &RootDatum, lam: &[i64]) -> Result<i64> {
    d.check_dominant(lam)?;
    Ok(d.pairing_2rho(lam))
}

/// `|Gr^lambda(F_q)|` as a polynomial in q: the parabolic Poincare
/// polynomial times the affine fiber `q^{dim - deg}`.
pub fn orbit_count(d: &RootDatum, lam: &[i64]) -> Result<QPoly> {
    let dim = orbit_dim(d, lam)?;
    let p = d.parabolic_poincare(lam)?;
    let deg = p.degree().unwrap_or(0) as i64;
    Ok(p.shift((dim - deg) as usize))
}

/// Points of the closure: the sum over dominant `mu <= lambda`.
pub fn closure_count(d: &RootDatum, lam: &[i64]) -> Result<QPoly> {
    let mut acc = QPoly::zero();
    for mu in d.dominant_below(lam)? {
        acc = &acc + &orbit_count(d, &mu)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvolutionSupport {
    pub target: Coweight,
    pub strata: Vec<Coweight>,
}

/// `Gr^lambda * Gr^mu` lands in the closure of `Gr^{lambda + mu}`.
pub fn convolution_support(d: &RootDatum, lam: &[i64], mu: &[i64]) -> Result<ConvolutionSupport> {
    d.check_dominant(lam)?;
    d.check_dominant(mu)?;
    let target = d.add(lam, mu)?;
    let strata = d.dominant_below(&target)?;
    Ok(ConvolutionSupport { target, strata })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rd(s: &str) -> RootDatum {
        RootDatum::parse(s).unwrap()
    }

    #[test]
    fn dims_and_counts() {
        let gl2 = rd("GL2");
        assert_eq!(orbit_dim(&gl2, &[1, 0]).unwrap(), 1);
        assert_eq!(orbit_dim(&gl2, &[1, 1]).unwrap(), 0);
        assert_eq!(orbit_dim(&rd("GL3"), &[2, 1, 0]).unwrap(), 4);
        assert_eq!(orbit_count(&gl2, &[1, 0]).unwrap().coeffs(), &[1, 1]);
        assert_eq!(orbit_count(&gl2, &[2, 0]).unwrap().coeffs(), &[0, 1, 1]);
        assert_eq!(orbit_count(&rd("GL3"), &[1, 0, 0]).unwrap().coeffs(), &[1, 1, 1]);
        assert_eq!(closure_count(&gl2, &[2, 0]).unwrap().coeffs(), &[1, 1, 1]);
        assert_eq!(closure_count(&gl2, &[1, 1]).unwrap().coeffs(), &[1]);
        // the leading exponent is the dimension; the value at q = 1 is the orbit size
        let a2 = rd("A2-adj");
        for lam in [vec![1, 0], vec![1, 1], vec![2, 1], vec![3, 0]] {
            let c = orbit_count(&a2, &lam).unwrap();
            assert_eq!(c.degree().unwrap() as i64, orbit_dim(&a2, &lam).unwrap());
            assert_eq!(c.eval(1), a2.weyl_orbit(&lam).unwrap().len() as i64);
        }
    }

    #[test]
    fn convolution() {
        let gl2 = rd("GL2");
        let s = convolution_support(&gl2, &[1, 0], &[1, 0]).unwrap();
        assert_eq!(s.target, vec![2, 0]);
        assert_eq!(s.strata, vec![vec![2, 0], vec![1, 1]]);
        assert_eq!(convolution_support(&rd("GL3"), &[1, 0, 0], &[1, 1, 0]).unwrap().target, vec![2, 1, 0]);
    }
}
