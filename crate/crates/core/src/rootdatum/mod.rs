//! Split root data realized on an explicit coweight lattice `Z^m`.
//!
//! Coweights are integer vectors; simple coroots are vectors and simple roots
//! are covectors in the same coordinates. The dual-side computations (weight
//! multiplicities, tensor products, q-analogs) use the coroots of `G` as
//! roots, so the coweight lattice plays the role of the weight lattice of the
//! dual group.

mod cartan;
mod rep;
mod weyl;

pub use cartan::{cartan_matrix, CartanType};
pub use rep::{TensorTerm, WeightDiagram};
pub use weyl::{WeylElement, DEFAULT_WEYL_CAP};

use std::fmt;
use std::str::FromStr;

use num::rational::Ratio;
use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A coweight in the lattice coordinates of its datum.
pub type Coweight = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    SimplyConnected,
    Adjoint,
    /// `GL(n)` on `Z^n`.
    General,
}

/// Group specification such as `A2-sc`, `A2-adj`, `GL3`, `PGL2` or `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub cartan: CartanType,
    pub flavor: Flavor,
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedGroup(s.to_string());
        let t = s.trim();
        let (body, flavor) = if let Some(n) = t.strip_prefix("PGL") {
            let n: usize = n.parse().map_err(|_| bad())?;
            if n < 2 {
                return Err(bad());
            }
            return Ok(GroupSpec { cartan: CartanType::new('A', n - 1).ok_or_else(bad)?, flavor: Flavor::Adjoint });
        } else if let Some(n) = t.strip_prefix("GL") {
            let n: usize = n.parse().map_err(|_| bad())?;
            if n < 1 {
                return Err(bad());
            }
            // GL(1) is a torus; record it as rank-0 type A.
            return Ok(GroupSpec { cartan: CartanType { letter: 'A', rank: n - 1 }, flavor: Flavor::General });
        } else if let Some(n) = t.strip_prefix("SL") {
            let n: usize = n.parse().map_err(|_| bad())?;
            if n < 2 {
                return Err(bad());
            }
            return Ok(GroupSpec { cartan: CartanType::new('A', n - 1).ok_or_else(bad)?, flavor: Flavor::SimplyConnected });
        } else if let Some(b) = t.strip_suffix("-sc") {
            (b, Flavor::SimplyConnected)
        } else if let Some(b) = t.strip_suffix("-adj") {
            (b, Flavor::Adjoint)
        } else {
            (t, Flavor::SimplyConnected)
        };
        let mut chars = body.chars();
        let letter = chars.next().ok_or_else(bad)?;
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        Ok(GroupSpec { cartan: CartanType::new(letter, rank).ok_or_else(bad)?, flavor })
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.flavor {
            Flavor::General => write!(f, "GL{}", self.cartan.rank + 1),
            Flavor::SimplyConnected => write!(f, "{}-sc", self.cartan),
            Flavor::Adjoint => write!(f, "{}-adj", self.cartan),
        }
    }
}

/// A positive root of `G` with its coroot, in lattice coordinates and in
/// simple-root / simple-coroot coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootPair {
    pub root: Vec<i64>,
    pub coroot: Vec<i64>,
    pub root_coords: Vec<i64>,
    pub coroot_coords: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    spec: GroupSpec,
    /// `a_ij = <alpha_i^vee, alpha_j>`.
    cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Ratio<i64>>>,
    simple_roots: Vec<Vec<i64>>,
    simple_coroots: Vec<Vec<i64>>,
    positive: Vec<RootPair>,
    /// Sum of positive roots (a covector).
    two_rho: Vec<i64>,
    /// Sum of positive coroots (a coweight).
    two_rho_hat: Vec<i64>,
    weyl_cap: usize,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

fn unit(m: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; m];
    v[i] = 1;
    v
}

pub(crate) fn pair(x: &[i64], y: &[i64]) -> i64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn invert_rational(a: &[Vec<i64>]) -> Vec<Vec<Ratio<i64>>> {
    let n = a.len();
    let mut m: Vec<Vec<Ratio<i64>>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Ratio<i64>> = row.iter().map(|&x| Ratio::from_integer(x)).collect();
            r.extend((0..n).map(|j| Ratio::from_integer((i == j) as i64)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).expect("Cartan matrices are invertible");
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

impl RootDatum {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        let l = spec.cartan.rank;
        let cartan = cartan_matrix(spec.cartan);
        let (simple_coroots, simple_roots) = match spec.flavor {
            Flavor::General => {
                let n = l + 1;
                let v: Vec<Vec<i64>> = (0..l)
                    .map(|i| {
                        let mut e = vec![0; n];
                        e[i] = 1;
                        e[i + 1] = -1;
                        e
                    })
                    .collect();
                (v.clone(), v)
            }
            Flavor::Adjoint => ((0..l).map(|j| cartan[j].clone()).collect(), (0..l).map(|j| unit(l, j)).collect()),
            Flavor::SimplyConnected => {
                ((0..l).map(|j| unit(l, j)).collect(), (0..l).map(|j| (0..l).map(|i| cartan[i][j]).collect()).collect())
            }
        };
        let positive = positive_system(&cartan, &simple_roots, &simple_coroots);
        let m = match spec.flavor {
            Flavor::General => l + 1,
            _ => l,
        };
        let mut two_rho = vec![0; m];
        let mut two_rho_hat = vec![0; m];
        for r in &positive {
            for k in 0..m {
                two_rho[k] += r.root[k];
                two_rho_hat[k] += r.coroot[k];
            }
        }
        Ok(RootDatum {
            spec,
            cartan_inv: invert_rational(&cartan),
            cartan,
            simple_roots,
            simple_coroots,
            positive,
            two_rho,
            two_rho_hat,
            weyl_cap: DEFAULT_WEYL_CAP,
        })
    }

    pub fn parse(spec: &str) -> Result<Self> {
        Self::new(spec.parse()?)
    }

    /// Replaces the Weyl-group enumeration cap.
    pub fn with_weyl_cap(mut self, cap: usize) -> Self {
        self.weyl_cap = cap;
        self
    }

    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    pub fn flavor(&self) -> Flavor {
        self.spec.flavor
    }

    /// Semisimple rank.
    pub fn rank(&self) -> usize {
        self.spec.cartan.rank
    }

    /// Rank of the coweight lattice.
    pub fn lattice_rank(&self) -> usize {
        self.two_rho.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.simple_coroots
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.positive.iter().map(|r| &r.root)
    }

    pub fn positive_coroots(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.positive.iter().map(|r| &r.coroot)
    }

    pub fn root_pairs(&self) -> &[RootPair] {
        &self.positive
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive.len()
    }

    /// The covector `2 rho` (sum of positive roots).
    pub fn two_rho(&self) -> &[i64] {
        &self.two_rho
    }

    /// The coweight `2 rho-hat` (sum of positive coroots).
    pub fn two_rho_hat(&self) -> &[i64] {
        &self.two_rho_hat
    }

    pub fn weyl_cap(&self) -> usize {
        self.weyl_cap
    }

    pub fn check(&self, lam: &[i64]) -> Result<()> {
        if lam.len() != self.lattice_rank() {
            return Err(Error::CoweightLength { expected: self.lattice_rank(), got: lam.len() });
        }
        Ok(())
    }

    pub fn check_dominant(&self, lam: &[i64]) -> Result<()> {
        self.check(lam)?;
        if !self.is_dominant(lam) {
            return Err(Error::NotDominant(fmt_coweight(lam)));
        }
        Ok(())
    }

    /// `<lambda, alpha_i>` for each simple root.
    pub fn simple_pairings(&self, lam: &[i64]) -> Vec<i64> {
        self.simple_roots.iter().map(|a| pair(lam, a)).collect()
    }

    pub fn is_dominant(&self, lam: &[i64]) -> bool {
        self.simple_roots.iter().all(|a| pair(lam, a) >= 0)
    }

    /// `<lambda, 2 rho>`.
    pub fn pairing_2rho(&self, lam: &[i64]) -> i64 {
        pair(lam, &self.two_rho)
    }

    /// Sum of the simple pairings `<lambda, alpha_i>`.
    pub fn height(&self, lam: &[i64]) -> i64 {
        self.simple_pairings(lam).iter().sum()
    }

    /// Coordinates of `d` in the simple-coroot basis, if `d` lies in their
    /// rational span (entries need not be integral).
    pub fn coroot_coords(&self, d: &[i64]) -> Option<Vec<Ratio<i64>>> {
        let l = self.rank();
        let p = self.simple_pairings(d);
        let c: Vec<Ratio<i64>> =
            (0..l).map(|j| (0..l).map(|i| self.cartan_inv[i][j] * Ratio::from_integer(p[i])).sum()).collect();
        let m = self.lattice_rank();
        for k in 0..m {
            let s: Ratio<i64> = (0..l).map(|i| c[i] * Ratio::from_integer(self.simple_coroots[i][k])).sum();
            if s != Ratio::from_integer(d[k]) {
                return None;
            }
        }
        Some(c)
    }

    /// Integral simple-coroot coordinates of `d`, if any.
    pub fn coroot_coords_int(&self, d: &[i64]) -> Option<Vec<i64>> {
        self.coroot_coords(d)?.into_iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
    }

    /// Whether `lambda - mu` is a nonnegative integral sum of positive
    /// coroots; the certificate is its simple-coroot expansion.
    pub fn dominance_leq(&self, mu: &[i64], lam: &[i64]) -> Result<(bool, Option<Vec<i64>>)> {
        self.check(mu)?;
        self.check(lam)?;
        let d: Vec<i64> = lam.iter().zip(mu).map(|(a, b)| a - b).collect();
        match self.coroot_coords_int(&d) {
            Some(c) if c.iter().all(|&x| x >= 0) => Ok((true, Some(c))),
            _ => Ok((false, None)),
        }
    }

    pub fn leq(&self, mu: &[i64], lam: &[i64]) -> bool {
        self.dominance_leq(mu, lam).map(|(b, _)| b).unwrap_or(false)
    }

    /// `lambda + mu`, checked.
    pub fn add(&self, lam: &[i64], mu: &[i64]) -> Result<Coweight> {
        self.check(lam)?;
        self.check(mu)?;
        Ok(lam.iter().zip(mu).map(|(a, b)| a + b).collect())
    }

    pub fn zero(&self) -> Coweight {
        vec![0; self.lattice_rank()]
    }

    /// Dual Coxeter number `<rho, theta^vee> + 1`.
    pub fn dual_coxeter(&self) -> Result<i64> {
        if self.rank() == 0 {
            return Err(Error::UnsupportedGroup(format!("{} is a torus", self.spec)));
        }
        let theta = self.positive.iter().max_by_key(|r| r.root_coords.iter().sum::<i64>()).expect("nonempty");
        Ok(theta.coroot_coords.iter().sum::<i64>() + 1)
    }

    /// Fundamental coweight `omega_i` when it lies in the lattice.
    pub fn fundamental(&self, i: usize) -> Option<Coweight> {
        match self.flavor() {
            Flavor::Adjoint => Some(unit(self.rank(), i)),
            Flavor::General => Some((0..=self.rank()).map(|k| (k <= i) as i64).collect()),
            Flavor::SimplyConnected => {
                let l = self.rank();
                // omega_i = sum_j (A^{-1})_{ij} alpha_j^vee
                let c: Option<Vec<i64>> =
                    (0..l).map(|j| self.cartan_inv[i][j]).map(|x| x.is_integer().then(|| x.to_integer())).collect();
                c
            }
        }
    }
}

fn positive_system(cartan: &[Vec<i64>], roots: &[Vec<i64>], coroots: &[Vec<i64>]) -> Vec<RootPair> {
    let l = cartan.len();
    let mut found: Vec<(Vec<i64>, Vec<i64>)> = (0..l).map(|i| (unit(l, i), unit(l, i))).collect();
    let mut frontier = found.clone();
    while let Some((k, c)) = frontier.pop() {
        for i in 0..l {
            // s_i(alpha) = alpha - <alpha_i^vee, alpha> alpha_i
            let a: i64 = (0..l).map(|j| k[j] * cartan[i][j]).sum();
            // s_i(alpha^vee) = alpha^vee - <alpha^vee, alpha_i> alpha_i^vee
            let b: i64 = (0..l).map(|j| c[j] * cartan[j][i]).sum();
            let mut k2 = k.clone();
            k2[i] -= a;
            let mut c2 = c.clone();
            c2[i] -= b;
            if k2.iter().all(|&x| x >= 0) && !found.iter().any(|(r, _)| *r == k2) {
                found.push((k2.clone(), c2.clone()));
                frontier.push((k2, c2));
            }
        }
    }
    found.sort_by_key(|(k, _)| (k.iter().sum::<i64>(), std::cmp::Reverse(k.clone())));
    let m = roots.first().map_or(0, |r| r.len());
    found
        .into_iter()
        .map(|(k, c)| RootPair {
            root: (0..m).map(|x| (0..l).map(|j| k[j] * roots[j][x]).sum()).collect(),
            coroot: (0..m).map(|x| (0..l).map(|j| c[j] * coroots[j][x]).sum()).collect(),
            root_coords: k,
            coroot_coords: c,
        })
        .collect()
}

/// `1,0,-1` style rendering.
pub fn fmt_coweight(lam: &[i64]) -> String {
    lam.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Parses comma-separated integers.
pub fn parse_coweight(s: &str) -> Result<Coweight> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Invalid(format!("bad coweight entry '{x}'"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rd(s: &str) -> RootDatum {
        RootDatum::parse(s).unwrap()
    }

    #[test]
    fn basic_data() {
        let a1 = rd("A1-sc");
        assert_eq!(a1.num_positive_roots(), 1);
        assert_eq!(a1.two_rho(), &[2]);
        let gl3 = rd("GL3");
        let coroots: Vec<_> = gl3.positive_coroots().cloned().collect();
        assert_eq!(coroots.len(), 3);
        assert!(coroots.contains(&vec![1, 0, -1]));
        assert_eq!(gl3.two_rho(), &[2, 0, -2]);
        assert_eq!(gl3.pairing_2rho(&[2, 1, 0]), 4);
        assert_eq!(rd("GL2").pairing_2rho(&[1, 0]), 1);
        assert_eq!(rd("GL2").pairing_2rho(&[1, 1]), 0);
        assert_eq!(rd("G2").num_positive_roots(), 6);
        for (s, n) in [("B3", 9), ("C4", 16), ("D4", 12), ("F4", 24), ("E6", 36), ("E8", 120)] {
            assert_eq!(rd(s).num_positive_roots(), n, "{s}");
        }
    }

    #[test]
    fn dual_coxeter_numbers() {
        for (s, h) in [("A1", 2), ("A2", 3), ("G2", 4), ("B3", 5), ("C3", 4), ("D5", 8), ("E7", 18), ("F4", 9), ("GL4", 4)] {
            assert_eq!(rd(s).dual_coxeter().unwrap(), h, "{s}");
        }
        assert!(rd("GL1").dual_coxeter().is_err());
    }

    #[test]
    fn dominance() {
        let gl2 = rd("GL2");
        assert_eq!(gl2.dominance_leq(&[1, 1], &[2, 0]).unwrap(), (true, Some(vec![1])));
        assert_eq!(gl2.dominance_leq(&[2, 0], &[1, 1]).unwrap(), (false, None));
        assert_eq!(gl2.dominance_leq(&[1, 0], &[2, 0]).unwrap(), (false, None));
        assert!(rd("GL3").leq(&[1, 1, 0], &[2, 0, 0]));
        assert_eq!(gl2.dominance_leq(&[3, 1], &[3, 1]).unwrap(), (true, Some(vec![0])));
        assert!(gl2.dominance_leq(&[1], &[1, 0]).is_err());
        let a2 = rd("A2-adj");
        assert!(a2.leq(&[0, 0], &[1, 1]));
        assert!(!a2.leq(&[0, 0], &[1, 0]));
    }

    #[test]
    fn spec_strings() {
        assert_eq!("PGL3".parse::<GroupSpec>().unwrap(), "A2-adj".parse().unwrap());
        assert_eq!("GL3".parse::<GroupSpec>().unwrap().to_string(), "GL3");
        assert!("Z3".parse::<GroupSpec>().is_err());
        assert!("A0".parse::<GroupSpec>().is_err());
        assert!("E9".parse::<GroupSpec>().is_err());
        assert_eq!(parse_coweight("2, -1,0").unwrap(), vec![2, -1, 0]);
        assert_eq!(rd("A2-sc").fundamental(0), None);
        assert_eq!(rd("G2").fundamental(0), Some(vec![2, 3]));
    }
}
