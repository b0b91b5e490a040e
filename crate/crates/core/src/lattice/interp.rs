use num::{BigInt, BigRational, One, ToPrimitive, Zero};

use crate::arith::{is_prime, QPoly};
use crate::error::{Error, Result};

/// The first `k` primes.
pub fn interpolation_primes(k: usize) -> Vec<u32> {
    (2u32..).filter(|&n| is_prime(n as u64)).take(k).collect()
}

/// Recovers an integer polynomial of degree `<= degree` from its values at
/// `degree + 1` primes, then checks it at one more prime.
pub fn interpolate<F>(degree: usize, f: F) -> Result<QPoly>
where
    F: Fn(u32) -> Result<i64>,
{
    let primes = interpolation_primes(degree + 2);
    let (fit, check) = primes.split_at(degree + 1);
    let points: Vec<(BigRational, BigRational)> = fit
        .iter()
        .map(|&q| Ok((BigRational::from_integer(q.into()), BigRational::from_integer(f(q)?.into()))))
        .collect::<Result<_>>()?;
    let mut coeffs = vec![BigRational::zero(); degree + 1];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis polynomial prod_{j != i} (q - x_j) / (x_i - x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            *c += b * yi / &denom;
        }
    }
    let ints = coeffs
        .iter()
        .map(|c| {
            c.is_integer()
                .then(|| c.to_integer())
                .and_then(|z: BigInt| z.to_i64())
                .ok_or_else(|| Error::Invalid(format!("interpolated coefficient {c} is not a machine integer")))
        })
        .collect::<Result<Vec<i64>>>()?;
    let poly = QPoly::from_coeffs(ints);
    for &q in check {
        let (want, got) = (f(q)?, poly.eval(q as i64));
        if want != got {
            return Err(Error::Invalid(format!("interpolation check failed at q = {q}: {got} != {want}")));
        }
    }
    Ok(poly)
}
