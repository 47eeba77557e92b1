//! Search for models with good reduction at odd primes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::element::{primes_above, PrimeIdeal, QuadElement};
use super::model::{curve_invariants, CurveModel, ModelChange};
use crate::arith::integer::{factor_integer, FactorBudget};
use crate::error::{Error, Result};
use crate::quadratic::QuadraticField;

/// Largest number of `r` values tried at a prime above 3.
pub const R_SEARCH_BUDGET: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionVerdict {
    GoodAfterModelChange,
    BadUnresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeReduction {
    pub p: u64,
    pub prime: String,
    pub v_delta: i64,
    pub verdict: ReductionVerdict,
    pub detail: String,
    /// A model integral at the prime with unit discriminant there.
    pub witness: Option<CurveModel>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    #[serde(with = "crate::arith::serde_big")]
    pub norm_delta: BigInt,
    pub primes: Vec<PrimeReduction>,
}

impl ReductionReport {
    pub fn good_away_from_2(&self) -> bool {
        self.primes.iter().all(|p| p.verdict == ReductionVerdict::GoodAfterModelChange)
    }

    pub fn bad_primes(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .primes
            .iter()
            .filter(|p| p.verdict == ReductionVerdict::BadUnresolved)
            .map(|p| p.p)
            .collect();
        v.dedup();
        v
    }
}

fn integral_at(model: &CurveModel, pr: &PrimeIdeal, k: &QuadraticField) -> bool {
    model.coefficients().iter().all(|a| pr.valuation(a, k).is_none_or(|v| v >= 0))
}

fn residue_reps(p: u64, m: u32) -> impl Iterator<Item = QuadElement> {
    let q = p.pow(m) as i64;
    (0..q).flat_map(move |x| (0..q).map(move |y| QuadElement::from_ints(x, y)))
}

fn try_model(e: &CurveModel, pr: &PrimeIdeal, k: &QuadraticField, u: &QuadElement, r: &QuadElement) -> Result<Option<CurveModel>> {
    let half = BigRational::new(1.into(), 2.into());
    let s = e.a1.scale(&half).neg();
    let t = e.a3.add(&r.mul(&e.a1, k)).scale(&half).neg();
    let m = e.transform(&ModelChange { u: u.clone(), r: r.clone(), s, t })?;
    if !integral_at(&m, pr, k) {
        return Ok(None);
    }
    let inv = curve_invariants(&m)?;
    Ok((pr.valuation(&inv.delta, k) == Some(0)).then_some(m))
}

fn audit_prime(e: &CurveModel, pr: &PrimeIdeal, k: &QuadraticField, delta: &QuadElement, b2: &QuadElement) -> Result<PrimeReduction> {
    let v = pr.valuation(delta, k).unwrap_or(0);
    let mut out = PrimeReduction {
        p: pr.p,
        prime: pr.label(),
        v_delta: v,
        verdict: ReductionVerdict::BadUnresolved,
        detail: String::new(),
        witness: None,
    };
    if v % 12 != 0 {
        out.detail = format!("v(Δ) = {v} is not a multiple of 12");
        return Ok(out);
    }
    let kk = (v / 12) as u32;
    let u = pr.uniformizer(k).pow(kk, k);
    if pr.p >= 5 {
        let r = b2.scale(&BigRational::new((-1).into(), 12.into()));
        if let Some(m) = try_model(e, pr, k, &u, &r)? {
            out.verdict = ReductionVerdict::GoodAfterModelChange;
            out.detail = format!("scaled by π^{kk}");
            out.witness = Some(m);
        } else {
            out.detail = "c4, c6 valuations too small for a unit discriminant".into();
        }
        return Ok(out);
    }
    let m = (2 * kk).div_ceil(pr.e).max(1);
    let count = pr.p.pow(2 * m);
    if count > R_SEARCH_BUDGET {
        out.detail = format!("search over {count} residues exceeds budget");
        return Ok(out);
    }
    for r in residue_reps(pr.p, m) {
        if let Some(model) = try_model(e, pr, k, &u, &r)? {
            out.verdict = ReductionVerdict::GoodAfterModelChange;
            out.detail = format!("scaled by π^{kk}, r = {}", r.format(k));
            out.witness = Some(model);
            return Ok(out);
        }
    }
    out.detail = format!("no model among {count} residues for r");
    Ok(out)
}

/// Per-prime verdicts for the odd primes dividing `N(Δ)`. A failed search is
/// not a proof of bad reduction.
pub fn odd_reduction_audit(e: &CurveModel) -> Result<ReductionReport> {
    if !e.is_integral() {
        return Err(Error::domain("model is not integral"));
    }
    let k = e.field()?;
    let inv = curve_invariants(e)?;
    let norm = inv.delta.norm(&k).to_integer();
    let fact = factor_integer(&norm, FactorBudget::default())?;
    let Some(fact) = fact.complete() else {
        return Err(Error::Budget(format!("could not factor N(Δ) = {norm}")));
    };
    let mut primes = Vec::new();
    for (p, _) in &fact.factors {
        let p = p.to_u64().ok_or_else(|| Error::Budget(format!("prime {p} too large")))?;
        if p == 2 {
            continue;
        }
        for pr in primes_above(&k, p) {
            if pr.valuation(&inv.delta, &k).unwrap_or(0) > 0 {
                primes.push(audit_prime(e, &pr, &k, &inv.delta, &inv.b2)?);
            }
        }
    }
    Ok(ReductionReport { norm_delta: norm.abs(), primes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn congruent_number_curve_is_good_away_from_2() {
        let r = odd_reduction_audit(&CurveModel::from_rational(-1, [0, 0, 0, -1, 0])).unwrap();
        assert!(r.primes.is_empty());
        assert!(r.good_away_from_2());
    }

    #[test]
    fn scaled_model_recovers_good_reduction_at_3() {
        // y^2 + y = x^3 - x scaled by u = 3: Δ = 37·3^12
        let e = CurveModel::from_rational(-1, [0, 0, 27, -81, 0]);
        let r = odd_reduction_audit(&e).unwrap();
        let at3 = r.primes.iter().find(|p| p.p == 3).unwrap();
        assert_eq!(at3.verdict, ReductionVerdict::GoodAfterModelChange);
        assert_eq!(r.bad_primes(), vec![37]);
        let e = CurveModel::from_rational(-1, [0, 0, 0, -5 * 5 * 5 * 5, 0]);
        let r = odd_reduction_audit(&e).unwrap();
        assert!(r.good_away_from_2(), "{r:?}");
    }

    #[test]
    fn bad_at_31() {
        let r = odd_reduction_audit(&CurveModel::from_rational(2, [0, 0, 0, 1, 1])).unwrap();
        assert_eq!(r.bad_primes(), vec![31]);
    }
}
