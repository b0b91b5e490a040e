use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Basis, HeckeAlgebra, HeckeElem, LaurentPoly};
use crate::error::{Error, Result};
use crate::lattice::{interpolate, iwasawa_count};
use crate::rootdatum::{fmt_coweight, Coweight};

/// `W`-invariant exponential sum `sum_mu c_mu m_mu` over dominant `mu`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CharElem {
    pub terms: BTreeMap<Coweight, LaurentPoly>,
}

impl Serialize for CharElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            coweight: &'a Coweight,
            coeffs: &'a LaurentPoly,
        }
        #[derive(Serialize)]
        struct Terms<'a> {
            terms: Vec<Term<'a>>,
        }
        Terms { terms: self.terms.iter().map(|(coweight, coeffs)| Term { coweight, coeffs }).collect() }.serialize(s)
    }
}

impl CharElem {
    pub fn coeff(&self, mu: &[i64]) -> LaurentPoly {
        self.terms.get(mu).cloned().unwrap_or_default()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransitionPath {
    /// Triangular solve against lattice-oracle Satake images (`GL(n)` only).
    Satake,
    /// Closed form through the Lusztig q-analogs.
    Lusztig,
}

impl FromStr for TransitionPath {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "satake" => Ok(TransitionPath::Satake),
            "lusztig" => Ok(TransitionPath::Lusztig),
            _ => Err(Error::Invalid(format!("unknown transition path {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "A->T")]
    AToT,
    #[serde(rename = "T->A")]
    TToA,
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A->T" | "a2t" | "AtoT" => Ok(Direction::AToT),
            "T->A" | "t2a" | "TtoA" => Ok(Direction::TToA),
            _ => Err(Error::Invalid(format!("unknown direction {s:?} (expected A->T or T->A)"))),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::AToT => "A->T",
            Direction::TToA => "T->A",
        })
    }
}

/// `sign * v^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Monomial {
    pub sign: i64,
    pub exponent: i32,
}

impl Monomial {
    fn of(c: &LaurentPoly) -> Option<Monomial> {
        c.unit_monomial().map(|(sign, exponent)| Monomial { sign, exponent })
    }

    fn inverse(self) -> LaurentPoly {
        LaurentPoly::monomial(self.sign, -self.exponent)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transition {
    pub lambda: Coweight,
    pub direction: Direction,
    pub path: TransitionPath,
    /// `A_lambda` in the T-basis, or `T_lambda` in the A-basis.
    pub element: HeckeElem,
    /// Coefficient of the `lambda` term.
    pub diagonal: Monomial,
    /// `<lambda, 2 rho>`; its parity keys the optional sign twist.
    pub pairing_2rho: i64,
    /// The general-group T-basis is fixed only up to this normalization.
    pub convention_dependent: bool,
}

/// The two A-to-T routes for one `lambda`, related by a single monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathComparison {
    pub lambda: Coweight,
    /// `lusztig = monomial * satake`.
    pub monomial: Monomial,
    pub satake: HeckeElem,
    pub lusztig: HeckeElem,
}

impl HeckeAlgebra {
    /// `sum_mu v^{-<mu, 2 rho>} N(lambda, mu)(v^2) m_mu`, with `N` the unipotent
    /// coset counts interpolated in q.
    pub fn satake_of_char(&self, lam: &[i64]) -> Result<CharElem> {
        self.require_path(super::TransitionPath::Satake)?;
        self.datum.check_dominant(lam)?;
        if let Some(c) = self.satake.lock().expect("cache").get(lam) {
            return Ok(c.clone());
        }
        let cfg = self.oracle;
        let mut terms = BTreeMap::new();
        for mu in self.datum.dominant_below(lam)? {
            let deg = (self.datum.pairing_2rho(lam) + self.datum.pairing_2rho(&mu)) / 2;
            let n = interpolate(deg.max(0) as usize, |q| {
                iwasawa_count(lam, &mu, q, cfg.window_cap, cfg.enumeration_cap).map(|c| c.count as i64)
            })?;
            let c = LaurentPoly::from_q(&n).shift(-self.datum.pairing_2rho(&mu) as i32);
            if !c.is_zero() {
                terms.insert(mu, c);
            }
        }
        let out = CharElem { terms };
        self.satake.lock().expect("cache").insert(lam.to_vec(), out.clone());
        Ok(out)
    }

    /// The Weyl character `s_lambda` in monomial coordinates.
    pub fn weyl_character(&self, lam: &[i64]) -> Result<CharElem> {
        let terms = self
            .datum
            .dominant_weight_diagram(lam)?
            .into_iter()
            .filter(|(_, m)| *m != 0)
            .map(|(mu, m)| (mu, LaurentPoly::monomial(m, 0)))
            .collect();
        Ok(CharElem { terms })
    }

    pub fn transition(&self, lam: &[i64], direction: Direction) -> Result<Transition> {
        self.transition_via(lam, direction, self.path)
    }

    pub fn transition_via(&self, lam: &[i64], direction: Direction, path: TransitionPath) -> Result<Transition> {
        self.require_path(path)?;
        self.datum.check_dominant(lam)?;
        let (basis, terms) = match direction {
            Direction::AToT => {
                let key = (lam.to_vec(), path);
                if let Some(t) = self.a_to_t.lock().expect("cache").get(&key) {
                    return Ok(t.clone());
                }
                let terms = match path {
                    TransitionPath::Satake => self.a_in_t_satake(lam)?,
                    TransitionPath::Lusztig => self.a_in_t_lusztig(lam)?,
                };
                (Basis::T, terms)
            }
            Direction::TToA => (Basis::A, self.t_in_a_via(lam, path)?),
        };
        let element = HeckeElem::from_terms(self.group(), basis, terms);
        self.check_triangular(lam, &element)?;
        let diagonal = Monomial::of(&element.coeff(lam))
            .ok_or_else(|| Error::NonTriangular(format!("diagonal at {} is not a unit monomial", fmt_coweight(lam))))?;
        let t = Transition {
            lambda: lam.to_vec(),
            direction,
            path,
            element,
            diagonal,
            pairing_2rho: self.datum.pairing_2rho(lam),
            convention_dependent: path == TransitionPath::Lusztig && self.datum.flavor() != crate::rootdatum::Flavor::General,
        };
        if direction == Direction::AToT {
            self.a_to_t.lock().expect("cache").insert((lam.to_vec(), path), t.clone());
        }
        Ok(t)
    }

    fn check_triangular(&self, lam: &[i64], h: &HeckeElem) -> Result<()> {
        for mu in h.terms().keys() {
            if !self.datum.leq(mu, lam) {
                return Err(Error::NonTriangular(format!(
                    "{} appears in the transition of {}",
                    fmt_coweight(mu),
                    fmt_coweight(lam)
                )));
            }
        }
        Ok(())
    }

    /// Solves `s_lambda = sum_mu a_mu S(T_mu)` top-down in dominance order.
    fn a_in_t_satake(&self, lam: &[i64]) -> Result<BTreeMap<Coweight, LaurentPoly>> {
        let mut residual = self.weyl_character(lam)?.terms;
        let mut out = BTreeMap::new();
        for mu in self.datum.dominant_below(lam)? {
            let r = residual.get(&mu).cloned().unwrap_or_default();
            if r.is_zero() {
                continue;
            }
            let below: BTreeSet<Coweight> = self.datum.dominant_below(&mu)?.into_iter().collect();
            let image = self.satake_of_char(&mu)?;
            let shift = self.datum.pairing_2rho(&mu) as i32;
            if let Some(bad) = image.terms.keys().find(|k| !below.contains(*k)) {
                return Err(Error::NonTriangular(format!("Satake image of {} meets {}", fmt_coweight(&mu), fmt_coweight(bad))));
            }
            let d = Monomial::of(&image.coeff(&mu).shift(shift)).ok_or_else(|| {
                Error::NonTriangular(format!("Satake diagonal at {} is not a unit monomial", fmt_coweight(&mu)))
            })?;
            let a = &r * &d.inverse();
            for (nu, c) in &image.terms {
                let e = residual.entry(nu.clone()).or_default();
                *e = &*e - &(&a * &c.shift(shift));
            }
            out.insert(mu, a);
        }
        if let Some((nu, _)) = residual.iter().find(|(_, c)| !c.is_zero()) {
            return Err(Error::NonTriangular(format!("residual left at {}", fmt_coweight(nu))));
        }
        Ok(out)
    }

    /// `A_lambda = sum_mu K_{lambda mu}(v^-2) v^{-2 <mu, 2 rho>} T_mu`.
    fn a_in_t_lusztig(&self, lam: &[i64]) -> Result<BTreeMap<Coweight, LaurentPoly>> {
        let mut out = BTreeMap::new();
        for mu in self.datum.dominant_below(lam)? {
            let k = self.datum.lusztig_q_analog(lam, &mu)?;
            let c = LaurentPoly::from_q_inverse(&k).shift(-2 * self.datum.pairing_2rho(&mu) as i32);
            if !c.is_zero() {
                out.insert(mu, c);
            }
        }
        Ok(out)
    }

    pub(super) fn t_in_a(&self, lam: &[i64]) -> Result<BTreeMap<Coweight, LaurentPoly>> {
        self.t_in_a_via(lam, self.path)
    }

    /// Inverts the triangular A-to-T matrix: `T_lambda = (A_lambda - sum_{mu < lambda} M_{lambda mu} T_mu) / M_{lambda lambda}`.
    fn t_in_a_via(&self, lam: &[i64], path: TransitionPath) -> Result<BTreeMap<Coweight, LaurentPoly>> {
        if path == self.path {
            if let Some(t) = self.t_to_a.lock().expect("cache").get(lam) {
                return Ok(t.clone());
            }
        }
        let row = self.transition_via(lam, Direction::AToT, path)?;
        let diag = row.diagonal.inverse();
        let mut acc: BTreeMap<Coweight, LaurentPoly> = BTreeMap::from([(lam.to_vec(), LaurentPoly::one())]);
        for (mu, c) in row.element.terms() {
            if mu.as_slice() == lam {
                continue;
            }
            for (nu, x) in self.t_in_a_via(mu, path)? {
                let e = acc.entry(nu).or_default();
                *e = &*e - &(c * &x);
            }
        }
        let out: BTreeMap<Coweight, LaurentPoly> =
            acc.into_iter().map(|(k, v)| (k, &v * &diag)).filter(|(_, v)| !v.is_zero()).collect();
        if path == self.path {
            self.t_to_a.lock().expect("cache").insert(lam.to_vec(), out.clone());
        }
        Ok(out)
    }

    /// Runs both A-to-T routes and finds the monomial relating them.
    pub fn compare_paths(&self, lam: &[i64]) -> Result<PathComparison> {
        let s = self.transition_via(lam, Direction::AToT, TransitionPath::Satake)?.element;
        let l = self.transition_via(lam, Direction::AToT, TransitionPath::Lusztig)?.element;
        let ratio = &l.coeff(lam) * &Monomial::of(&s.coeff(lam)).expect("checked diagonal").inverse();
        let monomial = Monomial::of(&ratio)
            .ok_or_else(|| Error::PathsDisagree(format!("diagonal ratio {ratio} at {}", fmt_coweight(lam))))?;
        let scaled = s.scale(&LaurentPoly::monomial(monomial.sign, monomial.exponent));
        if scaled != l {
            return Err(Error::PathsDisagree(format!("{scaled} vs {l}")));
        }
        Ok(PathComparison { lambda: lam.to_vec(), monomial, satake: s, lusztig: l })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdatum::RootDatum;

    fn alg(s: &str) -> HeckeAlgebra {
        HeckeAlgebra::new(RootDatum::parse(s).unwrap())
    }

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn satake_images() {
        let h = alg("GL2");
        assert_eq!(h.satake_of_char(&[1, 0]).unwrap().terms, BTreeMap::from([(vec![1, 0], lp(&[(1, 1)]))]));
        assert_eq!(h.satake_of_char(&[1, 1]).unwrap().terms, BTreeMap::from([(vec![1, 1], lp(&[(0, 1)]))]));
        let s = h.satake_of_char(&[2, 0]).unwrap();
        assert_eq!(s.coeff(&[2, 0]), lp(&[(2, 1)]));
        // N((2,0),(1,1)) = q - 1
        assert_eq!(s.coeff(&[1, 1]), lp(&[(2, 1), (0, -1)]));
    }

    #[test]
    fn transitions_gl2() {
        let h = alg("GL2");
        let t = h.transition(&[1, 0], Direction::AToT).unwrap();
        assert_eq!(t.element.terms(), &BTreeMap::from([(vec![1, 0], lp(&[(-2, 1)]))]));
        let t = h.transition(&[2, 0], Direction::AToT).unwrap();
        assert_eq!(t.element.terms().keys().cloned().collect::<Vec<_>>(), vec![vec![1, 1], vec![2, 0]]);
        assert_eq!(t.diagonal, Monomial { sign: 1, exponent: -4 });
        let c = h.transition(&[3, 3], Direction::AToT).unwrap();
        assert_eq!(c.element.terms(), &BTreeMap::from([(vec![3, 3], LaurentPoly::one())]));
    }

    #[test]
    fn paths_agree_and_round_trip() {
        let h = alg("GL2");
        for lam in [vec![1, 0], vec![2, 0], vec![2, 1], vec![3, 0], vec![1, -1]] {
            assert_eq!(h.compare_paths(&lam).unwrap().monomial, Monomial { sign: 1, exponent: 0 });
            let a = h.basis_element(Basis::A, &lam).unwrap();
            let back = h.to_basis(&h.to_basis(&a, Basis::T).unwrap(), Basis::A).unwrap();
            assert_eq!(back, a);
        }
    }

    #[test]
    fn general_groups_use_q_analogs() {
        let h = alg("PGL2");
        let t = h.transition(&[2], Direction::AToT).unwrap();
        assert!(t.convention_dependent);
        assert_eq!(t.element.terms().keys().cloned().collect::<Vec<_>>(), vec![vec![0], vec![2]]);
        assert!(h.satake_of_char(&[1]).is_err());
        let g2 = alg("G2");
        let t = g2.transition(&[3, 5], Direction::TToA).unwrap();
        assert_eq!(t.diagonal.sign, 1);
    }
}
