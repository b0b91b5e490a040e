use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use super::{pair, Coweight, RootDatum};
use crate::arith::QPoly;
use crate::error::{Error, Result};

pub const DEFAULT_WEYL_CAP: usize = 1_000_000;

/// A Weyl group element as a reduced word `s_{w[0]} s_{w[1]} ...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub length: usize,
}

impl RootDatum {
    /// `s_i(lambda) = lambda - <lambda, alpha_i> alpha_i^vee`.
    pub fn reflect(&self, i: usize, lam: &[i64]) -> Coweight {
        let c = pair(lam, &self.simple_roots[i]);
        lam.iter().zip(&self.simple_coroots[i]).map(|(x, a)| x - c * a).collect()
    }

    /// Applies a word right to left.
    pub fn apply(&self, w: &WeylElement, lam: &[i64]) -> Coweight {
        w.word.iter().rev().fold(lam.to_vec(), |acc, &i| self.reflect(i, &acc))
    }

    /// Dominant conjugate and the number of simple reflections used.
    pub fn dominant_conjugate(&self, lam: &[i64]) -> (Coweight, usize) {
        let mut v = lam.to_vec();
        let mut steps = 0;
        while let Some(i) = (0..self.rank()).find(|&i| pair(&v, &self.simple_roots[i]) < 0) {
            v = self.reflect(i, &v);
            steps += 1;
        }
        (v, steps)
    }

    /// The W-orbit of `lambda`, sorted.
    pub fn weyl_orbit(&self, lam: &[i64]) -> Result<Vec<Coweight>> {
        self.check(lam)?;
        let mut seen: BTreeSet<Coweight> = BTreeSet::new();
        seen.insert(lam.to_vec());
        let mut queue = VecDeque::from([lam.to_vec()]);
        while let Some(v) = queue.pop_front() {
            for i in 0..self.rank() {
                let w = self.reflect(i, &v);
                if seen.insert(w.clone()) {
                    if seen.len() > self.weyl_cap {
                        return Err(Error::WeylCap { cap: self.weyl_cap });
                    }
                    queue.push_back(w);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// Number of positive roots pairing negatively with `lambda`: the length
    /// of the shortest `w` carrying the dominant conjugate to `lambda`.
    pub fn inversion_count(&self, lam: &[i64]) -> usize {
        self.positive_roots().filter(|a| pair(lam, a) < 0).count()
    }

    /// All elements of W with reduced words, in breadth-first (length) order.
    pub fn weyl_elements(&self) -> Result<Vec<WeylElement>> {
        let start = self.two_rho_hat.clone();
        let mut index: HashMap<Coweight, usize> = HashMap::new();
        index.insert(start.clone(), 0);
        let mut out = vec![WeylElement { word: Vec::new(), length: 0 }];
        let mut images = vec![start];
        let mut head = 0;
        while head < out.len() {
            for i in 0..self.rank() {
                let img = self.reflect(i, &images[head]);
                if index.contains_key(&img) {
                    continue;
                }
                if out.len() >= self.weyl_cap {
                    return Err(Error::WeylCap { cap: self.weyl_cap });
                }
                let mut word = vec![i];
                word.extend_from_slice(&out[head].word);
                index.insert(img.clone(), out.len());
                out.push(WeylElement { length: word.len(), word });
                images.push(img);
            }
            head += 1;
        }
        Ok(out)
    }

    pub fn weyl_order(&self) -> Result<usize> {
        Ok(self.weyl_orbit(&self.two_rho_hat.clone())?.len())
    }

    /// `sum over minimal coset representatives of W / W_lambda of q^{l(w)}`.
    pub fn parabolic_poincare(&self, lam: &[i64]) -> Result<QPoly> {
        self.check_dominant(lam)?;
        let mut coeffs = vec![0i64; self.num_positive_roots() + 1];
        for v in self.weyl_orbit(lam)? {
            coeffs[self.inversion_count(&v)] += 1;
        }
        Ok(QPoly::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rd(s: &str) -> RootDatum {
        RootDatum::parse(s).unwrap()
    }

    #[test]
    fn orbits() {
        assert_eq!(rd("GL2").weyl_orbit(&[2, 0]).unwrap(), vec![vec![0, 2], vec![2, 0]]);
        assert_eq!(rd("GL3").weyl_orbit(&[1, 0, 0]).unwrap().len(), 3);
        assert_eq!(rd("A2-adj").weyl_orbit(&[1, 1]).unwrap().len(), 6);
    }

    #[test]
    fn group_enumeration() {
        let a2 = rd("A2-sc");
        let w = a2.weyl_elements().unwrap();
        assert_eq!(w.len(), 6);
        let mut gf = vec![0; 4];
        for e in &w {
            gf[e.length] += 1;
        }
        assert_eq!(gf, vec![1, 2, 2, 1]);
        for (s, n) in [("B3", 48), ("G2", 12), ("D4", 192), ("F4", 1152)] {
            assert_eq!(rd(s).weyl_order().unwrap(), n, "{s}");
        }
        // words act consistently with the stored length
        let b3 = rd("B3-adj");
        for e in b3.weyl_elements().unwrap() {
            let img = b3.apply(&e, b3.two_rho_hat());
            assert_eq!(b3.inversion_count(&img), e.length);
        }
        assert!(matches!(rd("E8").with_weyl_cap(5000).weyl_elements(), Err(Error::WeylCap { cap: 5000 })));
    }

    #[test]
    fn poincare() {
        let gl2 = rd("GL2");
        assert_eq!(gl2.parabolic_poincare(&[1, 0]).unwrap().coeffs(), &[1, 1]);
        assert_eq!(gl2.parabolic_poincare(&[1, 1]).unwrap().coeffs(), &[1]);
        assert_eq!(rd("GL3").parabolic_poincare(&[2, 1, 0]).unwrap().coeffs(), &[1, 2, 2, 1]);
        assert!(gl2.parabolic_poincare(&[0, 1]).is_err());
    }
}
