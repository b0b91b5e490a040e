//! The finite spherical Hecke algebra over `Z[v, v^-1]` with its A-basis
//! (dual-group characters) and T-basis (`T_lambda = v^{<lambda, 2 rho>} c_lambda`,
//! `c_lambda` the characteristic function of `K x^lambda K`).

mod laurent;
mod transition;

pub use laurent::LaurentPoly;
pub use transition::{CharElem, Direction, Monomial, PathComparison, Transition, TransitionPath};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{DEFAULT_ENUMERATION_CAP, DEFAULT_WINDOW_CAP};
use crate::rootdatum::{fmt_coweight, Coweight, Flavor, GroupSpec, RootDatum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    A,
    T,
}

impl FromStr for Basis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(Basis::A),
            "T" | "t" => Ok(Basis::T),
            _ => Err(Error::Invalid(format!("unknown basis {s:?} (expected A or T)"))),
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basis::A => "A",
            Basis::T => "T",
        })
    }
}

/// A finitely supported element in one of the two bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ElemJson", try_from = "ElemJson")]
pub struct HeckeElem {
    group: GroupSpec,
    basis: Basis,
    terms: BTreeMap<Coweight, LaurentPoly>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct TermJson {
    coweight: Coweight,
    coeffs: LaurentPoly,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ElemJson {
    group: String,
    basis: Basis,
    terms: Vec<TermJson>,
}

impl From<HeckeElem> for ElemJson {
    fn from(h: HeckeElem) -> Self {
        ElemJson {
            group: h.group.to_string(),
            basis: h.basis,
            terms: h.terms.into_iter().map(|(coweight, coeffs)| TermJson { coweight, coeffs }).collect(),
        }
    }
}

impl TryFrom<ElemJson> for HeckeElem {
    type Error = Error;
    fn try_from(j: ElemJson) -> Result<Self> {
        let group: GroupSpec = j.group.parse()?;
        Ok(HeckeElem::from_terms(group, j.basis, j.terms.into_iter().map(|t| (t.coweight, t.coeffs))))
    }
}

impl HeckeElem {
    pub fn zero(group: GroupSpec, basis: Basis) -> Self {
        HeckeElem { group, basis, terms: BTreeMap::new() }
    }

    pub fn from_terms(group: GroupSpec, basis: Basis, terms: impl IntoIterator<Item = (Coweight, LaurentPoly)>) -> Self {
        let mut h = Self::zero(group, basis);
        for (lam, c) in terms {
            h.add_term(lam, &c);
        }
        h
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Coweight, LaurentPoly> {
        &self.terms
    }

    pub fn coeff(&self, lam: &[i64]) -> LaurentPoly {
        self.terms.get(lam).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, lam: Coweight, c: &LaurentPoly) {
        let e = self.terms.entry(lam).or_default();
        *e = &*e + c;
        self.terms.retain(|_, c| !c.is_zero());
    }

    fn check_compatible(&self, other: &HeckeElem) -> Result<()> {
        if self.group != other.group {
            return Err(Error::MismatchedDatum(format!("{} vs {}", self.group, other.group)));
        }
        Ok(())
    }

    pub fn add(&self, other: &HeckeElem) -> Result<HeckeElem> {
        self.check_compatible(other)?;
        if self.basis != other.basis {
            return Err(Error::Invalid("adding elements written in different bases".into()));
        }
        let mut out = self.clone();
        for (lam, c) in &other.terms {
            out.add_term(lam.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElem {
        HeckeElem::from_terms(self.group, self.basis, self.terms.iter().map(|(l, x)| (l.clone(), x * c)))
    }
}

impl fmt::Display for HeckeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (lam, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{}_{}", self.basis, fmt_coweight(lam))?;
        }
        Ok(())
    }
}

/// Dominance-maximal part of the support.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeadingTerm {
    pub terms: Vec<TermView>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermView {
    pub coweight: Coweight,
    pub coeffs: LaurentPoly,
}

/// Limits for the lattice oracle behind the Satake path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub window_cap: u32,
    pub enumeration_cap: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { window_cap: DEFAULT_WINDOW_CAP, enumeration_cap: DEFAULT_ENUMERATION_CAP }
    }
}

/// The algebra attached to a root datum, with memoized transitions.
pub struct HeckeAlgebra {
    datum: RootDatum,
    path: TransitionPath,
    oracle: OracleConfig,
    satake: Mutex<BTreeMap<Coweight, CharElem>>,
    a_to_t: Mutex<BTreeMap<(Coweight, TransitionPath), Transition>>,
    t_to_a: Mutex<BTreeMap<Coweight, BTreeMap<Coweight, LaurentPoly>>>,
}

impl HeckeAlgebra {
    /// Uses the lattice-oracle path for `GL(n)` and the q-analog path otherwise.
    pub fn new(datum: RootDatum) -> Self {
        let path = if datum.flavor() == Flavor::General { TransitionPath::Satake } else { TransitionPath::Lusztig };
        HeckeAlgebra {
            datum,
            path,
            oracle: OracleConfig::default(),
            satake: Mutex::new(BTreeMap::new()),
            a_to_t: Mutex::new(BTreeMap::new()),
            t_to_a: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn with_path(mut self, path: TransitionPath) -> Result<Self> {
        self.require_path(path)?;
        self.path = path;
        Ok(self)
    }

    pub fn with_oracle(mut self, oracle: OracleConfig) -> Self {
        self.oracle = oracle;
        self
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn group(&self) -> GroupSpec {
        self.datum.spec()
    }

    pub fn path(&self) -> TransitionPath {
        self.path
    }

    pub fn oracle(&self) -> OracleConfig {
        self.oracle
    }

    fn require_path(&self, path: TransitionPath) -> Result<()> {
        if path == TransitionPath::Satake && self.datum.flavor() != Flavor::General {
            return Err(Error::TransitionUnavailable(format!(
                "the lattice-oracle path needs GL(n), not {}",
                self.datum.spec()
            )));
        }
        Ok(())
    }

    /// `A_lambda` or `T_lambda`.
    pub fn basis_element(&self, basis: Basis, lam: &[i64]) -> Result<HeckeElem> {
        self.datum.check_dominant(lam)?;
        Ok(HeckeElem::from_terms(self.group(), basis, [(lam.to_vec(), LaurentPoly::one())]))
    }

    pub fn identity(&self) -> HeckeElem {
        HeckeElem::from_terms(self.group(), Basis::A, [(self.datum.zero(), LaurentPoly::one())])
    }

    /// Validates a parsed element against this algebra.
    pub fn check(&self, h: &HeckeElem) -> Result<()> {
        if h.group != self.group() {
            return Err(Error::MismatchedDatum(format!("{} vs {}", h.group, self.group())));
        }
        h.terms.keys().try_for_each(|l| self.datum.check_dominant(l))
    }

    /// Rewrites `h` in the requested basis.
    pub fn to_basis(&self, h: &HeckeElem, basis: Basis) -> Result<HeckeElem> {
        self.check(h)?;
        if h.basis == basis {
            return Ok(h.clone());
        }
        let mut out = HeckeElem::zero(self.group(), basis);
        for (lam, c) in &h.terms {
            let image = match basis {
                Basis::T => self.transition(lam, Direction::AToT)?.element.terms,
                Basis::A => self.t_in_a(lam)?,
            };
            for (mu, x) in image {
                out.add_term(mu, &(&x * c));
            }
        }
        Ok(out)
    }

    /// Convolution product; the result is written in the basis of `a`.
    pub fn mul(&self, a: &HeckeElem, b: &HeckeElem) -> Result<HeckeElem> {
        a.check_compatible(b)?;
        let (xa, xb) = (self.to_basis(a, Basis::A)?, self.to_basis(b, Basis::A)?);
        let pairs: Vec<(&Coweight, &LaurentPoly, &Coweight, &LaurentPoly)> =
            xa.terms.iter().flat_map(|(l, c)| xb.terms.iter().map(move |(m, d)| (l, c, m, d))).collect();
        let parts: Vec<Vec<(Coweight, LaurentPoly)>> = pairs
            .par_iter()
            .map(|(l, c, m, d)| {
                let cd = *c * *d;
                Ok(self
                    .datum
                    .tensor_decompose(l, m)?
                    .into_iter()
                    .map(|t| (t.highest, cd.scale(t.mult)))
                    .collect())
            })
            .collect::<Result<_>>()?;
        let prod = HeckeElem::from_terms(self.group(), Basis::A, parts.into_iter().flatten());
        self.to_basis(&prod, a.basis)
    }

    /// Dominance-maximal support elements with their coefficients.
    pub fn leading_term(&self, h: &HeckeElem) -> Result<LeadingTerm> {
        self.check(h)?;
        let support: Vec<&Coweight> = h.terms.keys().collect();
        let terms = h
            .terms
            .iter()
            .rev()
            .filter(|(l, _)| !support.iter().any(|m| m != l && self.datum.leq(l, m)))
            .map(|(l, c)| TermView { coweight: l.clone(), coeffs: c.clone() })
            .collect();
        Ok(LeadingTerm { terms })
    }

    /// The sign involution `c_lambda -> (-1)^{<lambda, 2 rho>} c_lambda`; the
    /// same rule holds in either basis since transitions preserve parity.
    pub fn twist(&self, h: &HeckeElem) -> Result<HeckeElem> {
        self.check(h)?;
        Ok(HeckeElem::from_terms(
            h.group,
            h.basis,
            h.terms.iter().map(|(l, c)| {
                (l.clone(), if self.datum.pairing_2rho(l).rem_euclid(2) == 1 { -c } else { c.clone() })
            }),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(s: &str) -> HeckeAlgebra {
        HeckeAlgebra::new(RootDatum::parse(s).unwrap())
    }

    fn lp(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn a_basis_products() {
        let h = alg("GL2");
        let a = h.basis_element(Basis::A, &[1, 0]).unwrap();
        let p = h.mul(&a, &a).unwrap();
        let want = HeckeElem::from_terms(h.group(), Basis::A, [(vec![2, 0], lp(&[(0, 1)])), (vec![1, 1], lp(&[(0, 1)]))]);
        assert_eq!(p, want);
        assert_eq!(h.mul(&a, &h.identity()).unwrap(), a);
    }

    #[test]
    fn t_basis_square() {
        let h = alg("GL2");
        let t = h.basis_element(Basis::T, &[1, 0]).unwrap();
        let p = h.mul(&t, &t).unwrap();
        let want =
            HeckeElem::from_terms(h.group(), Basis::T, [(vec![2, 0], lp(&[(0, 1)])), (vec![1, 1], lp(&[(2, 1), (4, 1)]))]);
        assert_eq!(p, want);
        let lead = h.leading_term(&p).unwrap();
        assert_eq!(lead.terms, vec![TermView { coweight: vec![2, 0], coeffs: LaurentPoly::one() }]);
        assert_eq!(h.mul(&t, &h.identity()).unwrap(), t);
    }

    #[test]
    fn twist_is_an_automorphism() {
        let h = alg("GL2");
        let t = h.basis_element(Basis::T, &[1, 0]).unwrap();
        let s = h.basis_element(Basis::T, &[2, 1]).unwrap();
        let lhs = h.twist(&h.mul(&t, &s).unwrap()).unwrap();
        let rhs = h.mul(&h.twist(&t).unwrap(), &h.twist(&s).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(h.twist(&t).unwrap().coeff(&[1, 0]), LaurentPoly::monomial(-1, 0));
    }

    #[test]
    fn json_round_trip() {
        let h = alg("GL2");
        let t = h.basis_element(Basis::T, &[1, 0]).unwrap();
        let p = h.mul(&t, &t).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"group":"GL2","basis":"T","terms":[{"coweight":[1,1],"coeffs":{"2":1,"4":1}},{"coweight":[2,0],"coeffs":{"0":1}}]}"#
        );
        assert_eq!(serde_json::from_str::<HeckeElem>(&s).unwrap(), p);
    }

    #[test]
    fn mismatched_groups_are_rejected() {
        let a = alg("GL2").identity();
        let b = alg("GL3").identity();
        assert!(matches!(alg("GL2").mul(&a, &b), Err(Error::MismatchedDatum(_))));
        assert!(matches!(alg("PGL2").with_path(TransitionPath::Satake), Err(Error::TransitionUnavailable(_))));
    }
}
