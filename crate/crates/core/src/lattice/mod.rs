//! Brute-force lattice oracle for `GL(n)` over `F_q[[x]]`.
//!
//! Sublattices of `O^n` are enumerated through their column-Hermite forms;
//! Hall numbers and unipotent-coset counts come from Smith invariants of
//! explicit matrices.

mod interp;
mod smith;

pub use interp::{interpolate, interpolation_primes};
pub use smith::{smith_cartan, LatMat, LatMatJson, XSeries};

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{FqElem, Var};
use crate::error::{Error, Result};
use crate::rootdatum::Coweight;

pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;
pub const DEFAULT_WINDOW_CAP: u32 = 32;

/// Working precision for a problem of total size `size`.
pub fn working_precision(size: i64) -> i64 {
    (2 * size + 2).max(8)
}

fn compositions(n: usize, k: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if k == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=k {
        for mut rest in compositions(n - 1, k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn checked_pow(q: u64, e: u32, cap: u64) -> Result<u64> {
    q.checked_pow(e).filter(|&v| v <= cap).ok_or(Error::EnumerationCap { cap })
}

/// Column-Hermite representative: upper triangular, diagonal `x^{d_i}`,
/// entry `(i, j)` for `j > i` a polynomial of degree `< d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hermite {
    pub diag: Vec<u32>,
    /// `entries[i][j]`: coefficient list of the `(i, j)` entry.
    pub entries: Vec<Vec<Vec<u32>>>,
}

impl Hermite {
    fn free_count(diag: &[u32]) -> u32 {
        let n = diag.len();
        diag.iter().enumerate().map(|(i, d)| d * (n - 1 - i) as u32).sum()
    }

    /// The `idx`-th representative with the given diagonal (mixed radix q).
    fn decode(diag: &[u32], q: u32, mut idx: u64) -> Hermite {
        let n = diag.len();
        let mut entries = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            entries[i][i] = {
                let mut v = vec![0; diag[i] as usize + 1];
                v[diag[i] as usize] = 1;
                v
            };
            for entry in entries[i].iter_mut().skip(i + 1) {
                *entry = (0..diag[i])
                    .map(|_| {
                        let c = (idx % q as u64) as u32;
                        idx /= q as u64;
                        c
                    })
                    .collect();
            }
        }
        Hermite { diag: diag.to_vec(), entries }
    }

    pub fn to_latmat(&self, p: u32, prec: i64) -> LatMat {
        let rows = self
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| {
                        let coeffs = c.iter().map(|&v| FqElem::new(v as i64, p)).collect();
                        XSeries::from_coeffs(Var::X, 0, coeffs, prec, FqElem::zero(p))
                    })
                    .collect()
            })
            .collect();
        LatMat::new(p, rows).expect("square")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sublattice {
    pub index_exponent: u32,
    pub hermite: Hermite,
    pub cotype: Coweight,
}

/// Every sublattice of `O^n` of index `q^k` for `k <= m`, each exactly once.
pub fn enumerate_sublattices(n: usize, q: u32, m: u32, cap: u64) -> Result<Vec<Sublattice>> {
    crate::arith::check_prime(q as u64)?;
    let prec = working_precision(m as i64);
    let mut out = Vec::new();
    let mut visited = 0u64;
    for k in 0..=m {
        for diag in compositions(n, k) {
            let count = checked_pow(q as u64, Hermite::free_count(&diag), cap)?;
            visited += count;
            if visited > cap {
                return Err(Error::EnumerationCap { cap });
            }
            let mut batch: Vec<Sublattice> = (0..count)
                .into_par_iter()
                .map(|idx| {
                    let h = Hermite::decode(&diag, q, idx);
                    let cotype = smith_cartan(&h.to_latmat(q, prec))?;
                    Ok(Sublattice { index_exponent: k, hermite: h, cotype })
                })
                .collect::<Result<_>>()?;
            out.append(&mut batch);
        }
    }
    Ok(out)
}

/// Number of index-`q^k` sublattices of each cotype.
pub fn cotype_counts(n: usize, q: u32, k: u32, cap: u64) -> Result<BTreeMap<Coweight, u64>> {
    crate::arith::check_prime(q as u64)?;
    let prec = working_precision(k as i64);
    let mut total = 0u64;
    let diags = compositions(n, k);
    for d in &diags {
        total += checked_pow(q as u64, Hermite::free_count(d), cap)?;
    }
    if total > cap {
        return Err(Error::EnumerationCap { cap });
    }
    let mut out = BTreeMap::new();
    for diag in diags {
        let count = (q as u64).pow(Hermite::free_count(&diag));
        let part: BTreeMap<Coweight, u64> = (0..count)
            .into_par_iter()
            .map(|idx| smith_cartan(&Hermite::decode(&diag, q, idx).to_latmat(q, prec)))
            .try_fold(BTreeMap::new, |mut acc: BTreeMap<Coweight, u64>, c| {
                *acc.entry(c?).or_insert(0) += 1;
                Ok::<_, Error>(acc)
            })
            .try_reduce(BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                Ok(a)
            })?;
        for (c, v) in part {
            *out.entry(c).or_insert(0) += v;
        }
    }
    Ok(out)
}

fn check_gl(lam: &[i64]) -> Result<()> {
    if lam.is_empty() {
        return Err(Error::Invalid("empty coweight".into()));
    }
    if lam.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotDominant(crate::rootdatum::fmt_coweight(lam)));
    }
    Ok(())
}

fn shifted(lam: &[i64], s: i64) -> Coweight {
    lam.iter().map(|x| x - s).collect()
}

/// Number of sublattices of exact cotype `lambda` (after a central shift).
pub fn orbit_count_bruteforce(lam: &[i64], q: u32, cap: u64) -> Result<u64> {
    check_gl(lam)?;
    let low = *lam.last().expect("nonempty");
    let lam0 = shifted(lam, low);
    let k: i64 = lam0.iter().sum();
    Ok(cotype_counts(lam.len(), q, k as u32, cap)?.get(&lam0).copied().unwrap_or(0))
}

/// `Y = H^{-1} x^nu` by back substitution.
fn solve_upper(h: &LatMat, diag: &[u32], nu: &[i64], prec: i64) -> Vec<Vec<XSeries>> {
    let n = h.n();
    let p = h.modulus();
    let zero = XSeries::zero(Var::X, FqElem::zero(p), prec);
    let mut y = vec![vec![zero.clone(); n]; n];
    for j in 0..n {
        for i in (0..n).rev() {
            let mut s = if i == j { XSeries::monomial(Var::X, FqElem::one(p), nu[j], prec) } else { zero.clone() };
            for k in i + 1..n {
                s = s.sub(&h.entry(i, k).mul(&y[k][j]));
            }
            y[i][j] = s.shift(-(diag[i] as i64));
        }
    }
    y
}

/// `#{L' : O^n > L' > x^nu O^n, cotype(O^n / L') = lambda, cotype(L' / x^nu O^n) = mu}`.
pub fn hall_number(lam: &[i64], mu: &[i64], nu: &[i64], q: u32, cap: u64) -> Result<u64> {
    check_gl(lam)?;
    check_gl(mu)?;
    check_gl(nu)?;
    let n = lam.len();
    if mu.len() != n || nu.len() != n {
        return Err(Error::CoweightLength { expected: n, got: if mu.len() != n { mu.len() } else { nu.len() } });
    }
    let (sl, sm, sn): (i64, i64, i64) = (lam.iter().sum(), mu.iter().sum(), nu.iter().sum());
    if sl + sm != sn {
        return Err(Error::Invalid("hall_number needs |lambda| + |mu| = |nu|".into()));
    }
    crate::arith::check_prime(q as u64)?;
    let (a, b) = (lam[n - 1], mu[n - 1]);
    let (lam0, mu0, nu0) = (shifted(lam, a), shifted(mu, b), shifted(nu, a + b));
    if nu0.iter().any(|&x| x < 0) {
        return Ok(0);
    }
    let k = (sl - a * n as i64) as u32;
    let prec = working_precision(nu0.iter().sum::<i64>() + k as i64);
    let mut visited = 0u64;
    let mut hits = 0u64;
    for diag in compositions(n, k) {
        let count = checked_pow(q as u64, Hermite::free_count(&diag), cap)?;
        visited += count;
        if visited > cap {
            return Err(Error::EnumerationCap { cap });
        }
        hits += (0..count)
            .into_par_iter()
            .map(|idx| -> Result<u64> {
                let h = Hermite::decode(&diag, q, idx).to_latmat(q, prec);
                if smith_cartan(&h)? != lam0 {
                    return Ok(0);
                }
                let y = solve_upper(&h, &diag, &nu0, prec);
                if y.iter().flatten().any(|e| e.lowest() < 0) {
                    return Ok(0);
                }
                Ok((smith_cartan(&LatMat::new(q, y)?)? == mu0) as u64)
            })
            .try_reduce(|| 0, |x, y| Ok(x + y))?;
    }
    Ok(hits)
}

/// Window-by-window counts behind an Iwasawa count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IwasawaCount {
    pub count: u64,
    /// Window at which the count was certified.
    pub window: u32,
    /// Counts at windows `0..=window + 2`.
    pub history: Vec<u64>,
    /// Pole order beyond which no entry of row `i` can contribute.
    pub pole_bound: u32,
}

/// `#{u strictly upper triangular in U(K)/U(O) : cotype(x^mu u) = lambda}`,
/// widening the pole window until it stops changing. `mu` may be any
/// coweight; only `lambda` must be dominant.
pub fn iwasawa_count(lam: &[i64], mu: &[i64], q: u32, window_cap: u32, cap: u64) -> Result<IwasawaCount> {
    check_gl(lam)?;
    let n = lam.len();
    if mu.len() != n {
        return Err(Error::CoweightLength { expected: n, got: mu.len() });
    }
    crate::arith::check_prime(q as u64)?;
    // x^mu u lies in K x^lambda K only if every entry has valuation >= lambda_n.
    let low = lam[n - 1];
    let bounds: Vec<u32> = mu.iter().map(|&m| (m - low).max(0) as u32).collect();
    let pole_bound = bounds[..n - 1].iter().copied().max().unwrap_or(0);
    let same_det = lam.iter().sum::<i64>() == mu.iter().sum::<i64>();
    let mut history = Vec::new();
    let mut window = 0u32;
    loop {
        let c = if same_det { iwasawa_window(lam, mu, &bounds, window, q, cap)? } else { 0 };
        history.push(c);
        let m = history.len();
        if m >= 3 && history[m - 1] == history[m - 2] && history[m - 2] == history[m - 3] && window >= pole_bound + 2 {
            return Ok(IwasawaCount { count: c, window: window - 2, history, pole_bound });
        }
        if window >= window_cap {
            return Err(Error::NoStabilization { cap: window_cap });
        }
        window += 1;
    }
}

fn iwasawa_window(lam: &[i64], mu: &[i64], bounds: &[u32], window: u32, q: u32, cap: u64) -> Result<u64> {
    let n = lam.len();
    let poles: Vec<u32> = bounds.iter().map(|&b| b.min(window)).collect();
    let free: u32 = (0..n).map(|i| poles[i] * (n - 1 - i) as u32).sum();
    let count = checked_pow(q as u64, free, cap)?;
    let size: i64 = lam.iter().chain(mu).map(|x| x.abs()).sum();
    let prec = working_precision(size) + 2 * window as i64;
    let target: Coweight = lam.to_vec();
    (0..count)
        .into_par_iter()
        .map(|mut idx| -> Result<u64> {
            let zero = FqElem::zero(q);
            let mut rows = Vec::with_capacity(n);
            for i in 0..n {
                let mut row = Vec::with_capacity(n);
                for j in 0..n {
                    let e = if j < i {
                        XSeries::zero(Var::X, zero, prec)
                    } else if j == i {
                        XSeries::monomial(Var::X, FqElem::one(q), mu[i], prec)
                    } else {
                        let k = poles[i] as usize;
                        let mut coeffs = vec![zero; k];
                        for c in coeffs.iter_mut() {
                            *c = FqElem::new((idx % q as u64) as i64, q);
                            idx /= q as u64;
                        }
                        // coefficients of x^{mu_i - k}, ..., x^{mu_i - 1}
                        XSeries::from_coeffs(Var::X, mu[i] - k as i64, coeffs, prec, zero)
                    };
                    row.push(e);
                }
                rows.push(row);
            }
            Ok((smith_cartan(&LatMat::new(q, rows)?)? == target) as u64)
        })
        .try_reduce(|| 0, |x, y| Ok(x + y))
}
