//! The free commutative algebra on generators `alpha_C(lambda)`, one
//! semigroup `Lambda+` per good curve `C`, and its map to the finite Hecke
//! algebra.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::curves::{CurveKey, GoodCurve};
use crate::error::{Error, Result};
use crate::hecke::{Basis, HeckeAlgebra, HeckeElem, LaurentPoly};
use crate::rootdatum::{fmt_coweight, Coweight, Flavor, GroupSpec, RootDatum};

/// Curve key to nonzero dominant coweight.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<MonomialFactor>", from = "Vec<MonomialFactor>")]
pub struct RMonomial(BTreeMap<CurveKey, Coweight>);

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MonomialFactor {
    pub curve: CurveKey,
    pub coweight: Coweight,
}

impl From<RMonomial> for Vec<MonomialFactor> {
    fn from(m: RMonomial) -> Self {
        m.0.into_iter().map(|(curve, coweight)| MonomialFactor { curve, coweight }).collect()
    }
}

impl From<Vec<MonomialFactor>> for RMonomial {
    fn from(v: Vec<MonomialFactor>) -> Self {
        let mut m = RMonomial::default();
        for f in v {
            m.insert_add(f.curve, &f.coweight);
        }
        m
    }
}

impl RMonomial {
    pub fn factors(&self) -> &BTreeMap<CurveKey, Coweight> {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    fn insert_add(&mut self, key: CurveKey, lam: &[i64]) {
        let e = self.0.entry(key.clone()).or_insert_with(|| vec![0; lam.len()]);
        for (a, b) in e.iter_mut().zip(lam) {
            *a += b;
        }
        if e.iter().all(|&x| x == 0) {
            self.0.remove(&key);
        }
    }

    pub fn mul(&self, other: &RMonomial) -> RMonomial {
        let mut out = self.clone();
        for (k, lam) in &other.0 {
            out.insert_add(k.clone(), lam);
        }
        out
    }

    /// `sum over curves` of the coweights.
    pub fn total(&self, d: &RootDatum) -> Coweight {
        self.0.values().fold(d.zero(), |acc, l| acc.iter().zip(l).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for RMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|(k, l)| format!("alpha[{k}]({})", fmt_coweight(l))).collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Rational combination of monomials over one root datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RElement {
    group: GroupSpec,
    terms: BTreeMap<RMonomial, BigRational>,
}

#[derive(Serialize, Deserialize)]
struct RTermJson {
    monomial: RMonomial,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct RElementJson {
    group: String,
    terms: Vec<RTermJson>,
}

impl Serialize for RElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RElementJson {
            group: self.group.to_string(),
            terms: self.terms.iter().map(|(m, c)| RTermJson { monomial: m.clone(), coeff: c.to_string() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = RElementJson::deserialize(d)?;
        let group: GroupSpec = j.group.parse().map_err(D::Error::custom)?;
        let terms = j
            .terms
            .into_iter()
            .map(|t| Ok((t.monomial, t.coeff.parse::<BigRational>().map_err(|e| D::Error::custom(format!("{e}")))?)))
            .collect::<std::result::Result<Vec<_>, D::Error>>()?;
        Ok(RElement::from_terms(group, terms))
    }
}

impl RElement {
    pub fn zero(group: GroupSpec) -> Self {
        RElement { group, terms: BTreeMap::new() }
    }

    pub fn one(group: GroupSpec) -> Self {
        Self::from_terms(group, [(RMonomial::default(), BigRational::one())])
    }

    pub fn from_terms(group: GroupSpec, terms: impl IntoIterator<Item = (RMonomial, BigRational)>) -> Self {
        let mut e = Self::zero(group);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn group(&self) -> GroupSpec {
        self.group
    }

    pub fn terms(&self) -> &BTreeMap<RMonomial, BigRational> {
        &self.terms
    }

    pub fn coeff(&self, m: &RMonomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: RMonomial, c: BigRational) {
        let e = self.terms.entry(m.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn same_group(&self, other: &RElement) -> Result<()> {
        if self.group != other.group {
            return Err(Error::MismatchedDatum(format!("{} vs {}", self.group, other.group)));
        }
        Ok(())
    }

    pub fn add(&self, other: &RElement) -> Result<RElement> {
        self.same_group(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> RElement {
        RElement::from_terms(self.group, self.terms.iter().map(|(m, x)| (m.clone(), x * c)))
    }

    /// Bilinear extension of the per-curve coweight addition.
    pub fn mul(&self, other: &RElement) -> Result<RElement> {
        self.same_group(other)?;
        let mut out = RElement::zero(self.group);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<RElement> {
        (0..k).try_fold(RElement::one(self.group), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for RElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})*{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The generator `alpha_C(lambda)`.
pub fn alpha(d: &RootDatum, c: &GoodCurve, lam: &[i64]) -> Result<RElement> {
    d.check_dominant(lam)?;
    let mut m = RMonomial::default();
    m.insert_add(c.key()?, lam);
    Ok(RElement::from_terms(d.spec(), [(m, BigRational::one())]))
}

/// Same support curves at most, with per-curve dominance.
pub fn collection_leq(d: &RootDatum, m1: &RMonomial, m2: &RMonomial) -> bool {
    m1.0.iter().all(|(k, l)| m2.0.get(k).is_some_and(|l2| d.leq(l, l2)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IotaMode {
    ExactGln,
    LeadingOnly,
}

impl std::str::FromStr for IotaMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" | "exact-gln" => Ok(IotaMode::ExactGln),
            "leading" | "leading-only" => Ok(IotaMode::LeadingOnly),
            _ => Err(Error::Invalid(format!("unknown iota mode {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LeadingTermView {
    pub coweight: Coweight,
    pub coeff: String,
}

/// Leading T-terms only; the lower coefficients are not determined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IotaLeading {
    pub terms: Vec<LeadingTermView>,
    pub lower_terms: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum IotaOutput {
    Exact(HeckeElem),
    Leading(IotaLeading),
}

pub fn iota(h: &HeckeAlgebra, e: &RElement, mode: IotaMode) -> Result<IotaOutput> {
    Ok(match mode {
        IotaMode::ExactGln => IotaOutput::Exact(iota_exact(h, e)?),
        IotaMode::LeadingOnly => IotaOutput::Leading(iota_leading(h.datum(), e)?),
    })
}

fn is_type_a(d: &RootDatum) -> bool {
    match d.flavor() {
        Flavor::General => true,
        Flavor::Adjoint => d.spec().cartan.letter == 'A',
        Flavor::SimplyConnected => false,
    }
}

/// `alpha_C(omega_i) -> A_{omega_i}` for every curve, extended
/// multiplicatively; `GL(n)` adds the central `A_{(z,...,z)}`.
pub fn iota_exact(h: &HeckeAlgebra, e: &RElement) -> Result<HeckeElem> {
    let d = h.datum();
    if !is_type_a(d) || e.group != d.spec() {
        return Err(Error::TransitionUnavailable(format!("exact iota needs GL(n) or PGL(n), got {}", e.group)));
    }
    let mut out = HeckeElem::zero(d.spec(), Basis::A);
    for (m, c) in &e.terms {
        if !c.is_integer() {
            return Err(Error::Invalid(format!("coefficient {c} is not integral")));
        }
        let c = c.to_integer().to_i64().ok_or_else(|| Error::Invalid("coefficient overflows i64".into()))?;
        let mut img = h.identity();
        for lam in m.0.values() {
            img = h.mul(&img, &generator_image(h, lam)?)?;
        }
        out = out.add(&img.scale(&LaurentPoly::monomial(c, 0)))?;
    }
    Ok(out)
}

fn generator_image(h: &HeckeAlgebra, lam: &[i64]) -> Result<HeckeElem> {
    let d = h.datum();
    d.check_dominant(lam)?;
    let pairings = d.simple_pairings(lam);
    let mut rest = lam.to_vec();
    let mut img = h.identity();
    for (i, &c) in pairings.iter().enumerate() {
        let w = d.fundamental(i).expect("type A fundamental coweights are integral");
        let a = h.basis_element(Basis::A, &w)?;
        for _ in 0..c {
            img = h.mul(&img, &a)?;
        }
        for (r, x) in rest.iter_mut().zip(&w) {
            *r -= c * x;
        }
    }
    if rest.iter().any(|&x| x != 0) {
        img = h.mul(&img, &h.basis_element(Basis::A, &rest)?)?;
    }
    Ok(img)
}

/// `sum over monomials c_m T_{sum of the coweights of m}`.
pub fn iota_leading(d: &RootDatum, e: &RElement) -> Result<IotaLeading> {
    if e.group != d.spec() {
        return Err(Error::MismatchedDatum(format!("{} vs {}", e.group, d.spec())));
    }
    let mut acc: BTreeMap<Coweight, BigRational> = BTreeMap::new();
    for (m, c) in &e.terms {
        *acc.entry(m.total(d)).or_insert_with(BigRational::zero) += c;
    }
    let terms = acc
        .into_iter()
        .rev()
        .filter(|(_, c)| !c.is_zero())
        .map(|(coweight, c)| LeadingTermView { coweight, coeff: c.to_string() })
        .collect();
    Ok(IotaLeading { terms, lower_terms: "undetermined" })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_bipoly;
    use crate::curves::canonicalize;

    fn curve(s: &str) -> GoodCurve {
        canonicalize(&parse_bipoly(s, 5).unwrap(), 64).unwrap()
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn generators_and_products() {
        let d = RootDatum::parse("GL2").unwrap();
        let (c, c2) = (curve("x + t"), curve("x - t"));
        assert_eq!(alpha(&d, &c, &[0, 0]).unwrap(), RElement::one(d.spec()));
        assert!(alpha(&d, &c, &[0, 1]).is_err());
        let a = alpha(&d, &c, &[1, 0]).unwrap();
        let b = alpha(&d, &c, &[1, 1]).unwrap();
        assert_eq!(a.mul(&b).unwrap(), alpha(&d, &c, &[2, 1]).unwrap());
        let ab2 = alpha(&d, &c2, &[1, 0]).unwrap();
        let p = a.mul(&ab2).unwrap();
        assert_eq!(p, ab2.mul(&a).unwrap());
        assert_eq!(p.terms().keys().next().unwrap().factors().len(), 2);
        let sq = a.add(&ab2).unwrap().pow(2).unwrap();
        assert_eq!(sq.coeff(p.terms().keys().next().unwrap()), rat(2));
        assert_eq!(sq.terms().len(), 3);
        let key = a.terms().keys().next().unwrap().factors().keys().next().unwrap().to_string();
        assert_eq!(key, "x = 4*t + O(t^64)");
    }

    #[test]
    fn order() {
        let d = RootDatum::parse("GL2").unwrap();
        let (c, c2) = (curve("x + t"), curve("x + t^2"));
        let m = |c: &GoodCurve, l: &[i64]| alpha(&d, c, l).unwrap().terms.into_keys().next().unwrap();
        assert!(collection_leq(&d, &m(&c, &[1, 1]), &m(&c, &[2, 0])));
        assert!(!collection_leq(&d, &m(&c, &[2, 0]), &m(&c, &[1, 1])));
        assert!(!collection_leq(&d, &m(&c, &[1, 0]), &m(&c2, &[1, 0])));
        assert!(collection_leq(&d, &m(&c, &[2, 0]), &m(&c, &[2, 0])));
    }

    #[test]
    fn iota_on_generators() {
        let h = HeckeAlgebra::new(RootDatum::parse("PGL3").unwrap());
        let d = h.datum().clone();
        for s in ["x + t", "x + t^2", "x + t + x*t"] {
            let c = curve(s);
            for i in 0..2 {
                let w = d.fundamental(i).unwrap();
                let img = iota_exact(&h, &alpha(&d, &c, &w).unwrap()).unwrap();
                assert_eq!(img, h.basis_element(Basis::A, &w).unwrap());
            }
        }
        let img = iota_exact(&h, &alpha(&d, &curve("x + t"), &[1, 1]).unwrap()).unwrap();
        let keys: Vec<_> = img.terms().keys().cloned().collect();
        assert_eq!(keys, vec![vec![0, 0], vec![1, 1]]);
        let gl = HeckeAlgebra::new(RootDatum::parse("GL2").unwrap());
        let img = iota_exact(&gl, &alpha(gl.datum(), &curve("x + t"), &[2, 1]).unwrap()).unwrap();
        assert_eq!(img.terms().keys().cloned().collect::<Vec<_>>(), vec![vec![2, 1]]);
        assert!(iota_exact(&HeckeAlgebra::new(RootDatum::parse("B2").unwrap()), &RElement::one("B2".parse().unwrap())).is_err());
    }

    #[test]
    fn leading_only() {
        let d = RootDatum::parse("G2").unwrap();
        let c = curve("x + t");
        let e = alpha(&d, &c, &[3, 5]).unwrap().mul(&alpha(&d, &curve("x + t^3"), &[3, 5]).unwrap()).unwrap();
        let l = iota_leading(&d, &e).unwrap();
        assert_eq!(l.terms, vec![LeadingTermView { coweight: vec![6, 10], coeff: "1".into() }]);
    }

    #[test]
    fn json_round_trip() {
        let d = RootDatum::parse("GL2").unwrap();
        let e = alpha(&d, &curve("x + t"), &[1, 0]).unwrap().scale(&BigRational::new(3.into(), 2.into()));
        let s = serde_json::to_string(&e).unwrap();
        assert!(s.contains(r#""coeff":"3/2""#));
        assert_eq!(serde_json::from_str::<RElement>(&s).unwrap(), e);
    }
}
