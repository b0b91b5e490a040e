//! Curve-boundary symbols and the point-reciprocity sum over all flags
//! through the origin.

use serde::Serialize;

use crate::arith::{BiPoly, Factor, FactoredBi, FqElem, TruncSeries};
use crate::curves::{CurveKey, GoodCurve, PRECISION_CAP};
use crate::error::{Error, Result};

/// A curve through the origin along which a boundary symbol is taken.
#[derive(Clone, Debug)]
pub enum Flag {
    /// `x = 0`, parameter t.
    AxisX,
    /// `t = 0`, parameter x.
    AxisT,
    Curve(GoodCurve),
}

impl Flag {
    /// Folds a curve with `s = 0` into the x-axis.
    pub fn from_curve(c: GoodCurve) -> Flag {
        if c.series().is_zero() {
            Flag::AxisX
        } else {
            Flag::Curve(c)
        }
    }

    pub fn label(&self) -> Result<String> {
        Ok(match self {
            Flag::AxisX => "x=0".into(),
            Flag::AxisT => "t=0".into(),
            Flag::Curve(c) => c.key()?.to_string(),
        })
    }
}

fn low_index(v: &[FqElem]) -> Option<i64> {
    v.iter().position(|c| !c.is_zero()).map(|k| k as i64)
}

fn certified(v: Option<i64>, what: &str) -> Result<i64> {
    v.ok_or_else(|| Error::Invalid(format!("{what} restricts to zero")))
}

/// Order of vanishing of `f(s(t), t)`, raising the precision of `s` as needed.
fn order_on_curve(f: &BiPoly, c: &GoodCurve) -> Result<i64> {
    let mut n = c.prec().max(1);
    loop {
        let s = c.refined(n)?;
        if let Some(v) = f.substitute_x(s.series()).valuation() {
            return Ok(v);
        }
        if n >= PRECISION_CAP {
            return Err(Error::PrecisionCap { cap: PRECISION_CAP });
        }
        n = (2 * n).min(PRECISION_CAP);
    }
}

/// Point valuation of the restriction of one factor to the flag, or `None`
/// when the factor cuts out the flag itself.
fn restrict(fac: &Factor, flag: &Flag, flag_key: Option<&CurveKey>) -> Result<Option<i64>> {
    if let Factor::Monic(m) = fac {
        return Err(Error::UnsupportedFactor(format!("({m}) is neither a unit nor a good curve")));
    }
    Ok(match flag {
        Flag::AxisT => match fac {
            Factor::AxisT => None,
            Factor::AxisX => Some(1),
            Factor::Unit(u) => Some(certified(low_index(&u.at_t_zero()), "unit")?),
            Factor::Curve(c) => Some(match c.origin() {
                Some(o) => certified(low_index(&o.at_t_zero()), "curve")?,
                None => 1,
            }),
            Factor::Monic(_) => unreachable!(),
        },
        Flag::AxisX => match fac {
            Factor::AxisX => None,
            Factor::AxisT => Some(1),
            Factor::Unit(u) => Some(certified(low_index(&u.at_x_zero()), "unit")?),
            Factor::Curve(c) => Some(match c.origin() {
                Some(o) => certified(low_index(&o.at_x_zero()), "curve")?,
                None => c.s_valuation().ok_or(Error::UncertifiedValuation)?,
            }),
            Factor::Monic(_) => unreachable!(),
        },
        Flag::Curve(c) => match fac {
            Factor::AxisT => Some(1),
            Factor::AxisX => Some(c.s_valuation().ok_or(Error::UncertifiedValuation)?),
            Factor::Unit(u) => Some(order_on_curve(u, c)?),
            Factor::Curve(d) => {
                if Some(&d.key()?) == flag_key {
                    None
                } else {
                    Some(match d.origin() {
                        Some(o) => order_on_curve(o, c)?,
                        None => {
                            let n = c.prec().min(d.prec()) as i64;
                            let diff: TruncSeries<FqElem> = c.series().with_prec(n).sub(&d.series().with_prec(n));
                            diff.valuation().ok_or(Error::UncertifiedValuation)?
                        }
                    })
                }
            }
            Factor::Monic(_) => unreachable!(),
        },
    })
}

/// `(multiplicity along the flag, sum of restricted point valuations of the rest)`.
fn split(f: &FactoredBi, flag: &Flag, key: Option<&CurveKey>) -> Result<(i64, i64)> {
    let mut mult = 0;
    let mut rest = 0;
    for (fac, e) in f.factors() {
        match restrict(fac, flag, key)? {
            None => mult += e,
            Some(v) => rest += e * v,
        }
    }
    Ok((mult, rest))
}

/// Point valuation of `(-1)^{v_C(f)v_C(g)} f^{v_C(g)} / g^{v_C(f)}` restricted to `C`.
pub fn boundary_along(flag: &Flag, f: &FactoredBi, g: &FactoredBi) -> Result<i64> {
    let key = match flag {
        Flag::Curve(c) => Some(c.key()?),
        _ => None,
    };
    let (n, rf) = split(f, flag, key.as_ref())?;
    let (m, rg) = split(g, flag, key.as_ref())?;
    Ok(m * rf - n * rg)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlagValue {
    pub curve: String,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParshinReport {
    pub flags: Vec<FlagValue>,
    pub total: i64,
}

/// Sum of [`boundary_along`] over both axes and every curve factor of `f` or `g`.
pub fn parshin_sum(f: &FactoredBi, g: &FactoredBi) -> Result<ParshinReport> {
    let mut flags = vec![Flag::AxisT, Flag::AxisX];
    let mut seen: Vec<CurveKey> = Vec::new();
    for (fac, _) in f.factors().iter().chain(g.factors()) {
        if let Factor::Curve(c) = fac {
            let k = c.key()?;
            if !seen.contains(&k) {
                seen.push(k);
                flags.push(Flag::from_curve(c.clone()));
            }
        }
    }
    let mut out = Vec::with_capacity(flags.len());
    let mut total = 0;
    for flag in &flags {
        let value = boundary_along(flag, f, g)?;
        total += value;
        out.push(FlagValue { curve: flag.label()?, value });
    }
    Ok(ParshinReport { flags: out, total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_bipoly, parse_factored};
    use crate::curves::canonicalize;

    fn fb(s: &str) -> FactoredBi {
        parse_factored(s, 5).unwrap()
    }

    fn curve(s: &str) -> Flag {
        Flag::Curve(canonicalize(&parse_bipoly(s, 5).unwrap(), 64).unwrap())
    }

    #[test]
    fn boundaries() {
        assert_eq!(boundary_along(&Flag::AxisT, &fb("x"), &fb("t")).unwrap(), 1);
        assert_eq!(boundary_along(&Flag::AxisX, &fb("x"), &fb("x + t")).unwrap(), -1);
        assert_eq!(boundary_along(&curve("x + t"), &fb("x"), &fb("x + t")).unwrap(), 1);
    }

    fn values(r: &ParshinReport) -> Vec<i64> {
        r.flags.iter().map(|v| v.value).collect()
    }

    #[test]
    fn reciprocity_examples() {
        let r = parshin_sum(&fb("x"), &fb("t")).unwrap();
        assert_eq!((values(&r), r.total), (vec![1, -1], 0));
        let r = parshin_sum(&fb("x"), &fb("x + t")).unwrap();
        assert_eq!((values(&r), r.total), (vec![0, -1, 1], 0));
        let r = parshin_sum(&fb("x + t"), &fb("t")).unwrap();
        assert_eq!((values(&r), r.total), (vec![1, 0, -1], 0));
    }

    #[test]
    fn tangent_curves_and_units() {
        // x + t and x + t + t^2 meet with multiplicity 2
        let f = fb("(x + t)^2 * (1 + x - t)");
        let g = fb("(x + t + t^2)^-1 * x^3 * t");
        let r = parshin_sum(&f, &g).unwrap();
        assert_eq!(r.total, 0);
        assert_eq!(boundary_along(&curve("x + t"), &fb("x + t"), &fb("x + t + t^2")).unwrap(), -2);
        assert!(matches!(parshin_sum(&fb("x^2 - t^3"), &fb("t")), Err(Error::UnsupportedFactor(_))));
    }

    #[test]
    fn same_curve_different_equations() {
        // (x + t)(1 + x) cuts out the same curve as x + t
        let f = fb("x + t");
        let g = fb("x*t + x^2 + x + t");
        let r = parshin_sum(&f, &g).unwrap();
        assert_eq!(r.flags.len(), 3);
        assert_eq!(r.total, 0);
    }
}
