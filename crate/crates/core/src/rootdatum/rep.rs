//! Dual-side representation theory: the coweight lattice as weight lattice
//! of the dual group, with positive coroots as positive roots.
//!
//! Everything involving `rho-hat` is computed on doubled vectors so that all
//! arithmetic stays integral.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num::{BigInt, ToPrimitive};
use serde::Serialize;

use super::{fmt_coweight, pair, Coweight, RootDatum};
use crate::arith::QPoly;
use crate::error::{Error, Result};

/// Dominant weights with multiplicities.
pub type WeightDiagram = BTreeMap<Coweight, i64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TensorTerm {
    pub highest: Coweight,
    pub mult: i64,
}

fn lin(a: &[i64], s: i64, b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

impl RootDatum {
    /// `W`-invariant form `B(x, y) = sum over positive roots of <x,a><y,a>`.
    pub fn form(&self, x: &[i64], y: &[i64]) -> i64 {
        self.positive_roots().map(|a| pair(x, a) * pair(y, a)).sum()
    }

    /// Dominant `mu <= lambda`, sorted by decreasing `<mu, 2 rho>`.
    pub fn dominant_below(&self, lam: &[i64]) -> Result<Vec<Coweight>> {
        self.check_dominant(lam)?;
        let mut seen: BTreeSet<Coweight> = BTreeSet::from([lam.to_vec()]);
        let mut queue = VecDeque::from([lam.to_vec()]);
        while let Some(v) = queue.pop_front() {
            for b in self.positive_coroots() {
                let w = lin(&v, -1, b);
                if self.is_dominant(&w) && seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        let mut out: Vec<Coweight> = seen.into_iter().collect();
        out.sort_by_key(|m| (std::cmp::Reverse(self.pairing_2rho(m)), std::cmp::Reverse(m.clone())));
        Ok(out)
    }

    /// Multiplicities of the dominant weights of `V_lambda` (Freudenthal).
    pub fn dominant_weight_diagram(&self, lam: &[i64]) -> Result<WeightDiagram> {
        let below = self.dominant_below(lam)?;
        let rho2 = self.two_rho_hat().to_vec();
        let big_l = lin(&lin(lam, 1, lam), 1, &rho2);
        let norm_l = self.form(&big_l, &big_l);
        let mut mult: WeightDiagram = BTreeMap::new();
        let coroots: Vec<Vec<i64>> = self.positive_coroots().cloned().collect();
        for mu in below {
            if mu == lam {
                mult.insert(mu, 1);
                continue;
            }
            let big_m = lin(&lin(&mu, 1, &mu), 1, &rho2);
            let denom = norm_l - self.form(&big_m, &big_m);
            let mut acc = 0i64;
            for b in &coroots {
                let mut nu = lin(&mu, 1, b);
                loop {
                    let (dom, _) = self.dominant_conjugate(&nu);
                    let Some(&m) = mult.get(&dom) else { break };
                    acc += m * self.form(&nu, b);
                    nu = lin(&nu, 1, b);
                }
            }
            let num = 8 * acc;
            if denom <= 0 || num % denom != 0 {
                return Err(Error::Invalid(format!("Freudenthal recursion failed at {}", fmt_coweight(&mu))));
            }
            mult.insert(mu, num / denom);
        }
        mult.retain(|_, m| *m != 0);
        Ok(mult)
    }

    /// All weights of `V_lambda` with multiplicities.
    pub fn weight_diagram(&self, lam: &[i64]) -> Result<WeightDiagram> {
        let mut out = BTreeMap::new();
        for (mu, m) in self.dominant_weight_diagram(lam)? {
            for nu in self.weyl_orbit(&mu)? {
                out.insert(nu, m);
            }
        }
        Ok(out)
    }

    /// Multiplicity of `mu` in `V_lambda`.
    pub fn freudenthal_multiplicity(&self, lam: &[i64], mu: &[i64]) -> Result<i64> {
        self.check(mu)?;
        let (dom, _) = self.dominant_conjugate(mu);
        Ok(self.dominant_weight_diagram(lam)?.get(&dom).copied().unwrap_or(0))
    }

    /// Weyl dimension formula.
    pub fn weyl_dimension(&self, lam: &[i64]) -> Result<i64> {
        self.check_dominant(lam)?;
        let big_l = lin(&lin(lam, 1, lam), 1, self.two_rho_hat());
        let mut num = BigInt::from(1);
        let mut den = BigInt::from(1);
        for a in self.positive_roots() {
            num *= pair(&big_l, a);
            den *= pair(self.two_rho_hat(), a);
        }
        (num / den).to_i64().ok_or_else(|| Error::Invalid("dimension overflows i64".into()))
    }

    /// `V_lambda (x) V_mu` by the Brauer-Klimyk rule.
    pub fn tensor_decompose(&self, lam: &[i64], mu: &[i64]) -> Result<Vec<TensorTerm>> {
        self.check_dominant(lam)?;
        self.check_dominant(mu)?;
        let (big, small) = if self.weyl_dimension(lam)? >= self.weyl_dimension(mu)? { (lam, mu) } else { (mu, lam) };
        let rho2 = self.two_rho_hat().to_vec();
        let base = lin(&lin(big, 1, big), 1, &rho2);
        let mut acc: BTreeMap<Coweight, i64> = BTreeMap::new();
        for (nu, m) in self.weight_diagram(small)? {
            let x = lin(&base, 2, &nu);
            let (dom, steps) = self.dominant_conjugate(&x);
            if self.simple_pairings(&dom).contains(&0) {
                continue;
            }
            let hw: Coweight = lin(&dom, -1, &rho2).iter().map(|c| c / 2).collect();
            let sign = if steps % 2 == 0 { 1 } else { -1 };
            *acc.entry(hw).or_insert(0) += sign * m;
        }
        let mut out = Vec::new();
        for (highest, mult) in acc.into_iter().rev() {
            if mult < 0 {
                return Err(Error::Invalid(format!("negative tensor multiplicity at {}", fmt_coweight(&highest))));
            }
            if mult > 0 {
                out.push(TensorTerm { highest, mult });
            }
        }
        Ok(out)
    }

    /// Coefficient of `e^beta` in `prod over positive coroots (1 - q e^a)^{-1}`.
    pub fn q_kostant(&self, beta: &[i64]) -> Result<QPoly> {
        self.check(beta)?;
        let Some(c) = self.coroot_coords_int(beta) else { return Ok(QPoly::zero()) };
        if c.iter().any(|&x| x < 0) {
            return Ok(QPoly::zero());
        }
        let dims: Vec<usize> = c.iter().map(|&x| x as usize + 1).collect();
        let size: usize = dims.iter().product();
        let decode = |mut idx: usize| -> Vec<usize> {
            dims.iter()
                .map(|&d| {
                    let r = idx % d;
                    idx /= d;
                    r
                })
                .collect()
        };
        let mut strides = vec![1usize; dims.len()];
        for k in 1..dims.len() {
            strides[k] = strides[k - 1] * dims[k - 1];
        }
        let mut table = vec![QPoly::zero(); size];
        table[0] = QPoly::one();
        for rp in self.root_pairs() {
            let g = &rp.coroot_coords;
            if g.iter().zip(&c).any(|(a, b)| a > b) {
                continue;
            }
            let offset: usize = g.iter().zip(&strides).map(|(&a, &s)| a as usize * s).sum();
            for idx in 0..size {
                let v = decode(idx);
                if v.iter().zip(g).all(|(&a, &b)| a as i64 >= b) {
                    let add = table[idx - offset].shift(1);
                    table[idx] = &table[idx] + &add;
                }
            }
        }
        Ok(table[size - 1].clone())
    }

    /// `K_{lambda mu}(q) = sum_w (-1)^{l(w)} P_q(w(lambda + rho-hat) - (mu + rho-hat))`.
    pub fn lusztig_q_analog(&self, lam: &[i64], mu: &[i64]) -> Result<QPoly> {
        self.check_dominant(lam)?;
        self.check_dominant(mu)?;
        let rho2 = self.two_rho_hat().to_vec();
        let big_l = lin(&lin(lam, 1, lam), 1, &rho2);
        let big_m = lin(&lin(mu, 1, mu), 1, &rho2);
        let mut acc = QPoly::zero();
        for x in self.weyl_orbit(&big_l)? {
            let d2 = lin(&x, -1, &big_m);
            if d2.iter().any(|c| c % 2 != 0) {
                continue;
            }
            let d: Vec<i64> = d2.iter().map(|c| c / 2).collect();
            let p = self.q_kostant(&d)?;
            acc = if self.inversion_count(&x).is_multiple_of(2) { &acc + &p } else { &acc - &p };
        }
        Ok(acc)
    }
}
