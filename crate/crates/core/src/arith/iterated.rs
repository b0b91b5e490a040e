//! The two iterated-Laurent views of bivariate data: F_p((x))((t)) (order
//! `XT`, outer variable t) and F_p((t))((x)) (order `TX`, outer variable x).

use serde::{Deserialize, Serialize};

use super::bipoly::BiPoly;
use super::factored::{Factor, FactoredBi};
use super::fp::FqElem;
use super::series::{TruncSeries, Var};
use crate::error::Result;

pub type Inner = TruncSeries<FqElem>;
pub type Outer = TruncSeries<Inner>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Order {
    /// Series in t with coefficients in F_p((x)).
    XT,
    /// Series in x with coefficients in F_p((t)).
    TX,
}

impl Order {
    pub fn outer_var(self) -> Var {
        match self {
            Order::XT => Var::T,
            Order::TX => Var::X,
        }
    }

    pub fn inner_var(self) -> Var {
        match self {
            Order::XT => Var::X,
            Order::TX => Var::T,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IterView {
    pub order: Order,
    pub body: Outer,
}

impl IterView {
    pub fn mul(&self, rhs: &IterView) -> IterView {
        debug_assert_eq!(self.order, rhs.order);
        IterView { order: self.order, body: self.body.mul(&rhs.body) }
    }

    pub fn invert(&self) -> Result<IterView> {
        Ok(IterView { order: self.order, body: self.body.invert()? })
    }

    pub fn powi(&self, e: i64) -> Result<IterView> {
        Ok(IterView { order: self.order, body: self.body.powi(e)? })
    }

    /// Outer precision.
    pub fn prec(&self) -> i64 {
        self.body.prec()
    }

    /// Coefficient-wise agreement on the shared outer window, each inner
    /// coefficient compared on its own shared window.
    pub fn agrees_with(&self, other: &IterView) -> bool {
        if self.order != other.order {
            return false;
        }
        let n = self.body.prec().min(other.body.prec());
        let lo = self.body.lowest().min(other.body.lowest()).min(n);
        (lo..n).all(|k| self.body.coeff(k).agrees_with(&other.body.coeff(k)))
    }
}

/// Outer valuation: `v_t` for `XT`, `v_x` for `TX`.
pub fn valuation(view: &IterView) -> Result<i64> {
    view.body.certified_valuation()
}

fn inner_zero(order: Order, p: u32) -> Inner {
    TruncSeries::exact_zero(order.inner_var(), FqElem::zero(p))
}

/// Embeds an exact polynomial. Since the input is exact, any precision is
/// truthful; each coefficient is given `inner` terms past its x-degree
/// span and the outer series `outer` terms past its valuation.
pub fn embed_poly(f: &BiPoly, order: Order, inner: usize, outer: usize) -> IterView {
    let p = f.modulus();
    let g = match order {
        Order::XT => f.clone(),
        Order::TX => f.swap_vars(),
    };
    // now the outer variable is "t" of g, inner is "x" of g
    let inner_prec = g.x_degree() as i64 + 1 + inner as i64;
    let outer_val = g.t_valuation().unwrap_or(0) as i64;
    let outer_prec = outer_val + outer as i64;
    let rows: Vec<Inner> = (outer_val..outer_prec)
        .map(|j| TruncSeries::from_coeffs(order.inner_var(), 0, g.t_row(j as u32), inner_prec, FqElem::zero(p)))
        .collect();
    let body = TruncSeries::from_coeffs(order.outer_var(), outer_val, rows, outer_prec, inner_zero(order, p));
    IterView { order, body }
}

fn embed_factor(fac: &Factor, order: Order, p: u32, inner: usize, outer: usize) -> IterView {
    match fac {
        Factor::AxisX => embed_poly(&BiPoly::x(p), order, inner, outer),
        Factor::AxisT => embed_poly(&BiPoly::t(p), order, inner, outer),
        Factor::Unit(u) | Factor::Monic(u) => embed_poly(u, order, inner, outer),
        Factor::Curve(c) => match c.origin() {
            Some(o) => embed_poly(o, order, inner, outer),
            None => {
                // x - s(t), with s known mod t^N
                let s = c.series();
                let n = s.prec();
                match order {
                    Order::XT => {
                        let inner_prec = 2 + inner as i64;
                        let outer_prec = (outer as i64).min(n);
                        let mut rows = Vec::new();
                        for k in 0..outer_prec {
                            let mut coeffs = vec![-s.coeff(k)];
                            if k == 0 {
                                coeffs.push(FqElem::one(p));
                            }
                            rows.push(TruncSeries::from_coeffs(Var::X, 0, coeffs, inner_prec, FqElem::zero(p)));
                        }
                        let body = TruncSeries::from_coeffs(Var::T, 0, rows, outer_prec, inner_zero(order, p));
                        IterView { order, body }
                    }
                    Order::TX => {
                        let minus_s = s.neg();
                        let one = TruncSeries::from_coeffs(Var::T, 0, vec![FqElem::one(p)], n, FqElem::zero(p));
                        let outer_prec = 2 + outer as i64;
                        let body = TruncSeries::from_coeffs(Var::X, 0, vec![minus_s, one], outer_prec, inner_zero(order, p));
                        IterView { order, body }
                    }
                }
            }
        },
    }
}

/// Expands a factored element in the requested iterated field. `inner` and
/// `outer` are per-factor relative precisions; the result records the
/// precision actually reached.
pub fn embed(f: &FactoredBi, order: Order, inner: usize, outer: usize) -> Result<IterView> {
    let p = f.modulus();
    let scalar = TruncSeries::from_coeffs(order.inner_var(), 0, vec![f.scalar()], inner as i64 + 1, FqElem::zero(p));
    let mut acc = IterView {
        order,
        body: TruncSeries::from_coeffs(order.outer_var(), 0, vec![scalar], outer as i64 + 1, inner_zero(order, p)),
    };
    for (fac, e) in f.factors() {
        let v = embed_factor(fac, order, p, inner, outer).powi(*e)?;
        acc = acc.mul(&v);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factored::parse_factored;
    use crate::arith::parse::parse_bipoly;

    fn fq(v: i64) -> FqElem {
        FqElem::new(v, 5)
    }

    #[test]
    fn embed_x_plus_t() {
        let f = parse_bipoly("x + t", 5).unwrap();
        let xt = embed_poly(&f, Order::XT, 4, 4);
        assert_eq!(valuation(&xt).unwrap(), 0);
        assert_eq!(xt.body.coeff(0).valuation(), Some(1)); // x
        assert_eq!(xt.body.coeff(1).valuation(), Some(0)); // 1
        let tx = embed_poly(&f, Order::TX, 4, 4);
        assert_eq!(valuation(&tx).unwrap(), 0);
        assert_eq!(tx.body.coeff(0).var(), Var::T);
        assert_eq!(tx.body.coeff(0).valuation(), Some(1)); // t
    }

    #[test]
    fn embed_factored_ratio() {
        // (x + t) / x viewed in F((t))((x)): t x^-1 + 1
        let f = parse_factored("(x + t) * x^-1", 5).unwrap();
        let tx = embed(&f, Order::TX, 6, 6).unwrap();
        assert_eq!(valuation(&tx).unwrap(), -1);
        let lead = tx.body.leading().unwrap();
        assert_eq!(lead.valuation(), Some(1));
        assert_eq!(lead.leading(), Some(&fq(1)));
    }

    #[test]
    fn valuations_of_products() {
        let f = parse_factored("t * (x + t)", 5).unwrap();
        assert_eq!(valuation(&embed(&f, Order::XT, 4, 4).unwrap()).unwrap(), 1);
        let g = parse_factored("x + t", 5).unwrap();
        assert_eq!(valuation(&embed(&g, Order::TX, 4, 4).unwrap()).unwrap(), 0);
    }

    #[test]
    fn curve_without_origin_matches_polynomial() {
        use crate::curves::{canonicalize, GoodCurve};
        let poly = parse_bipoly("x + t + x*t", 5).unwrap();
        let c = canonicalize(&poly, 16).unwrap();
        let bare = GoodCurve::from_series(c.series().clone()).unwrap();
        let f = FactoredBi::one(5).times(Factor::Curve(bare), 1);
        // x - s(t) differs from the polynomial by the unit (1 + t): compare ratios' valuations
        for order in [Order::XT, Order::TX] {
            let a = embed(&f, order, 8, 8).unwrap();
            let b = embed_poly(&poly, order, 8, 8);
            assert_eq!(valuation(&a).unwrap(), valuation(&b).unwrap());
            assert_eq!(a.body.leading().unwrap().valuation(), b.body.leading().unwrap().valuation());
        }
    }
}
