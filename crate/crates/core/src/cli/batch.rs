//! Seeded random pairs for the reciprocity property suite.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{BiPoly, FactoredBi};
use crate::error::Result;
use crate::symbols::{exten_values, lemma_exten_check, parshin_sum};

pub const GENERATOR: &str = "ChaCha8";
pub const DEFAULT_SEED: u64 = 42;

/// Shape limits for generated pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PairShape {
    pub max_factors: usize,
    pub max_degree: u32,
    pub max_exponent: i64,
}

impl Default for PairShape {
    fn default() -> Self {
        PairShape { max_factors: 4, max_degree: 4, max_exponent: 3 }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, p: u32, deg: u32, constant: bool) -> BiPoly {
    let mut terms = Vec::new();
    for i in 0..=deg {
        for j in 0..=deg - i {
            if (i, j) == (0, 0) || rng.random_bool(0.4) {
                terms.push((i, j, rng.random_range(0..p as i64)));
            }
        }
    }
    let mut f = BiPoly::from_terms(p, terms);
    let fix = |f: &BiPoly, i, j, rng: &mut ChaCha8Rng| {
        let c = rng.random_range(1..p as i64);
        f.add(&BiPoly::from_terms(p, [(i, j, c - f.coeff(i, j).value() as i64)]))
    };
    if constant {
        f = fix(&f, 0, 0, rng);
    } else {
        f = f.sub(&BiPoly::from_terms(p, [(0, 0, f.coeff(0, 0).value() as i64)]));
        f = fix(&f, 1, 0, rng);
    }
    f
}

/// `scalar * prod factor^e` with axis, unit and (unless `axis_only`) good-curve factors.
pub fn random_element(rng: &mut ChaCha8Rng, p: u32, shape: PairShape, axis_only: bool) -> Result<FactoredBi> {
    let mut out = FactoredBi::scalar_elem(crate::arith::FqElem::new(rng.random_range(1..p as i64), p))?;
    let n = rng.random_range(1..=shape.max_factors);
    for _ in 0..n {
        let mut e = rng.random_range(1..=shape.max_exponent);
        if rng.random_bool(0.5) {
            e = -e;
        }
        let kinds = if axis_only { 3 } else { 4 };
        let kind = rng.random_range(0..kinds);
        let deg = rng.random_range(1..=shape.max_degree);
        let base = match kind {
            0 => FactoredBi::x(p),
            1 => FactoredBi::t(p),
            2 => FactoredBi::from_poly(&random_poly(rng, p, deg, true))?,
            _ => FactoredBi::from_poly(&random_poly(rng, p, deg, false))?,
        };
        out = out.mul(&base.powi(e));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub f: String,
    pub g: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawTally {
    pub run: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPair {
    pub f: String,
    pub g: String,
    pub lhs: i64,
    pub rhs: i64,
    pub parshin_total: i64,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReciprocityReport {
    pub p: u32,
    pub seed: u64,
    pub generator: &'static str,
    pub trials: usize,
    pub shape: PairShape,
    pub parshin: LawTally,
    pub lemma_exten: LawTally,
    pub first_counterexample: Option<Counterexample>,
    pub fixed_pair: FixedPair,
}

/// `trials` general pairs (Parshin sum) and `trials` axis-supported pairs
/// (two-flag identity and Parshin sum), all drawn from one seeded stream.
pub fn reciprocity_batch(p: u32, trials: usize, shape: PairShape, seed: u64) -> Result<ReciprocityReport> {
    crate::arith::check_prime(p as u64)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut parshin = LawTally { run: 0, failures: 0 };
    let mut exten = LawTally { run: 0, failures: 0 };
    let mut first: Option<Counterexample> = None;
    let mut note = |f: &FactoredBi, g: &FactoredBi, detail: String| {
        first.get_or_insert_with(|| Counterexample { f: f.to_string(), g: g.to_string(), detail });
    };
    for _ in 0..trials {
        let f = random_element(&mut rng, p, shape, false)?;
        let g = random_element(&mut rng, p, shape, false)?;
        parshin.run += 1;
        match parshin_sum(&f, &g) {
            Ok(r) if r.total == 0 => {}
            Ok(r) => {
                parshin.failures += 1;
                note(&f, &g, format!("parshin total {}", r.total));
            }
            Err(e) => {
                parshin.failures += 1;
                note(&f, &g, format!("parshin error: {e}"));
            }
        }
        let f = random_element(&mut rng, p, shape, true)?;
        let g = random_element(&mut rng, p, shape, true)?;
        exten.run += 1;
        parshin.run += 1;
        match lemma_exten_check(&f, &g) {
            Ok(c) if c.ok => {}
            Ok(c) => {
                exten.failures += 1;
                note(&f, &g, format!("two-flag identity lhs {} rhs {}", c.lhs, c.rhs));
            }
            Err(e) => {
                exten.failures += 1;
                note(&f, &g, format!("two-flag error: {e}"));
            }
        }
        match parshin_sum(&f, &g) {
            Ok(r) if r.total == 0 => {}
            other => {
                parshin.failures += 1;
                note(&f, &g, format!("parshin on axis pair: {other:?}"));
            }
        }
    }
    Ok(ReciprocityReport {
        p,
        seed,
        generator: GENERATOR,
        trials,
        shape,
        parshin,
        lemma_exten: exten,
        first_counterexample: first,
        fixed_pair: fixed_pair(p)?,
    })
}

/// The pair `(x, x + t)`, where the literal two-flag identity fails but the
/// full flag sum vanishes.
pub fn fixed_pair(p: u32) -> Result<FixedPair> {
    let f = FactoredBi::x(p);
    let g = crate::arith::parse_factored("x + t", p)?;
    let c = exten_values(&f, &g)?;
    let total = parshin_sum(&f, &g)?.total;
    let verdict = match (c.ok, total == 0) {
        (false, true) => "axis identity violated, Parshin holds",
        (true, true) => "both hold",
        (_, false) => "Parshin violated",
    };
    Ok(FixedPair { f: f.to_string(), g: g.to_string(), lhs: c.lhs, rhs: c.rhs, parshin_total: total, verdict: verdict.into() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_batch_is_clean_and_reproducible() {
        let a = reciprocity_batch(5, 20, PairShape::default(), 42).unwrap();
        assert_eq!(a.parshin.failures, 0, "{:?}", a.first_counterexample);
        assert_eq!(a.lemma_exten.failures, 0);
        assert_eq!(a, reciprocity_batch(5, 20, PairShape::default(), 42).unwrap());
        assert_eq!((a.fixed_pair.lhs, a.fixed_pair.rhs, a.fixed_pair.parshin_total), (0, 1, 0));
        assert_eq!(a.fixed_pair.verdict, "axis identity violated, Parshin holds");
    }

    #[test]
    fn general_pairs_meet_curves() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut curved = 0;
        let mut extra_flags = 0;
        for _ in 0..50 {
            let f = random_element(&mut rng, 5, PairShape::default(), false).unwrap();
            let g = random_element(&mut rng, 5, PairShape::default(), false).unwrap();
            if !f.is_axis_supported() || !g.is_axis_supported() {
                curved += 1;
            }
            let r = parshin_sum(&f, &g).unwrap();
            extra_flags += r.flags.len().saturating_sub(2);
            assert_eq!(r.total, 0);
        }
        assert!(curved > 20, "{curved}");
        assert!(extra_flags > 20, "{extra_flags}");
    }
}
