//! Exclusion chains: compare the discriminant upper bound for a nonsolvable
//! extension ramified only above `p` with the Odlyzko–Poitou lower bound, and
//! solve for the largest `log|d_K|` that still gives a contradiction.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::analytic::{integer_minimum, minimize_ratio, odlyzko_limit, odlyzko_lower, ratio_at, ODLYZKO_COEFF};
use crate::arith::integer::{is_squarefree_i64, kronecker_i64};
use crate::arith::real::{bits_for_digits, Interval};
use crate::data::reference;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseSplit {
    Ramified,
    Inert,
    Split,
}

impl BaseSplit {
    pub fn as_str(&self) -> &'static str {
        match self {
            BaseSplit::Ramified => "ramified",
            BaseSplit::Inert => "inert",
            BaseSplit::Split => "split",
        }
    }

    fn kronecker(&self) -> i8 {
        match self {
            BaseSplit::Ramified => 0,
            BaseSplit::Inert => -1,
            BaseSplit::Split => 1,
        }
    }
}

impl FromStr for BaseSplit {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ramified" => Ok(BaseSplit::Ramified),
            "inert" => Ok(BaseSplit::Inert),
            "split" => Ok(BaseSplit::Split),
            _ => Err(Error::Parse(format!("unknown splitting type {s:?}"))),
        }
    }
}

impl fmt::Display for BaseSplit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Wildness {
    Tame,
    Wild,
}

/// Which constants feed the chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// The printed decimals of the published chain.
    Published,
    /// Rebuilt from the exact different bounds at working precision.
    Recomputed,
}

impl Variant {
    pub fn as_str(&self) -> &'static str {
        match self {
            Variant::Published => "published",
            Variant::Recomputed => "recomputed",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundScenario {
    pub p: u64,
    pub base: BaseSplit,
    pub wildness: Wildness,
    pub n_min: u64,
    /// Lower bound on `n / p^{m−1}`.
    pub tate_ratio: u64,
    /// Lower bound on `n / (e·p^m)`.
    pub inertia_index: u64,
    pub odlyzko_coeff: String,
    /// Significant decimal digits for the interval engine.
    pub digits: u32,
}

impl BoundScenario {
    pub fn new(p: u64, base: BaseSplit, wildness: Wildness) -> Self {
        BoundScenario {
            p,
            base,
            wildness,
            n_min: 60,
            tate_ratio: 30,
            inertia_index: 3,
            odlyzko_coeff: ODLYZKO_COEFF.to_string(),
            digits: 30,
        }
    }

    pub fn with_digits(mut self, digits: u32) -> Self {
        self.digits = digits;
        self
    }

    pub fn prec(&self) -> u32 {
        bits_for_digits(self.digits)
    }

    pub fn key(&self) -> String {
        format!("p{}-{}", self.p, self.base)
    }

    fn validate(&self) -> Result<()> {
        if self.n_min == 0 || self.tate_ratio == 0 {
            return Err(Error::domain("n_min and tate_ratio must be positive"));
        }
        if self.base == BaseSplit::Split {
            return Err(Error::Unsupported(format!(
                "{} split in the base field is not covered by any chain",
                self.p
            )));
        }
        Ok(())
    }

    /// `(c_sup, a, b)` with `c ≤ c_sup − a/p^{m−1} − b/(e·p^m)`.
    pub fn different_shape(&self) -> Result<(BigRational, BigRational, BigRational)> {
        self.validate()?;
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        match (self.p, self.base) {
            (2, BaseSplit::Ramified) => Ok((r(9, 4), r(1, 1), r(0, 1))),
            (2, BaseSplit::Inert) => Ok((r(3, 1), r(1, 1), r(1, 1))),
            (3, BaseSplit::Ramified) => Ok((r(2, 1), r(1, 2), r(1, 2))),
            (p, b) => Err(Error::Unsupported(format!("no different bound for p={p} {b}"))),
        }
    }

    /// Norm of the prime above `p`.
    pub fn norm_p(&self) -> u64 {
        match self.base {
            BaseSplit::Inert => self.p * self.p,
            _ => self.p,
        }
    }
}

/// A fundamental discriminant inside the excluded range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExcludedField {
    pub disc: i64,
    pub d: i64,
}

#[derive(Debug, Clone)]
pub struct ExclusionResult {
    pub scenario: BoundScenario,
    pub variant: Variant,
    pub constant: Interval,
    pub a: Interval,
    pub b: Interval,
    pub minimizer_x0: Interval,
    pub interior: bool,
    pub min_value: Interval,
    pub integer_min: (u64, Interval),
    pub log_threshold: Interval,
    pub abs_threshold: Interval,
    pub excluded: Vec<ExcludedField>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanSummary {
    pub from: u64,
    pub to: u64,
    pub checked: u64,
    /// Points decided by the interval engine because the float margin was tiny.
    pub refined: u64,
    pub violations: Vec<u64>,
    pub closest_n: u64,
}

impl ExclusionResult {
    /// Right-hand side `constant + f(n)` of the per-`n` inequality.
    pub fn evaluate(&self, n: u64) -> Result<Interval> {
        let x = Interval::from_int(n as i64, self.a.prec());
        Ok(self.constant.add(&ratio_at(&self.a, &self.b, &x)?))
    }

    /// Whether `log|d_K|` certainly contradicts the inequality at `n`.
    pub fn contradicts(&self, log_dk: &Interval, n: u64) -> Result<bool> {
        Ok(log_dk.certainly_lt(&self.evaluate(n)?))
    }

    /// Check `f(n) > f_min` for every integer `n` in `[from, to]`, so any
    /// `log|d_K| ≤ log_threshold` contradicts the inequality throughout.
    pub fn scan(&self, from: u64, to: u64) -> Result<ScanSummary> {
        let (a, b, fmin) = (self.a.mid_f64(), self.b.mid_f64(), self.min_value.mid_f64());
        let mut summary = ScanSummary { from, to, checked: 0, refined: 0, violations: Vec::new(), closest_n: from };
        let mut closest = f64::INFINITY;
        for n in from..=to {
            let x = n as f64;
            let margin = (a - b * x.cbrt()) / x - fmin;
            summary.checked += 1;
            if margin < closest {
                closest = margin;
                summary.closest_n = n;
            }
            if margin < 1e-9 {
                summary.refined += 1;
                let fx = ratio_at(&self.a, &self.b, &Interval::from_int(n as i64, self.a.prec()))?;
                if !fx.certainly_gt(&self.min_value) {
                    summary.violations.push(n);
                }
            }
        }
        Ok(summary)
    }
}

/// Fundamental discriminants `D ≠ 1` with `|D| < bound` (certified) and the
/// requested splitting of `p`.
pub fn fundamental_discriminants_below(abs_threshold: &Interval, p: u64, base: BaseSplit) -> Result<Vec<ExcludedField>> {
    let top = abs_threshold.mid_f64().ceil() as i64 + 1;
    let mut out = Vec::new();
    for disc in -top..=top {
        let Some(d) = fundamental_d(disc) else { continue };
        if kronecker_i64(disc, p as i64) != base.kronecker() {
            continue;
        }
        let v = BigRational::from_integer(BigInt::from(disc.abs()));
        if abs_threshold.lower() > v {
            out.push(ExcludedField { disc, d });
        } else if abs_threshold.upper() >= v {
            return Err(Error::Budget(format!(
                "|D| = {} is within the threshold uncertainty; raise the precision",
                disc.abs()
            )));
        }
    }
    out.sort_by_key(|e| (e.disc.abs(), e.disc));
    Ok(out)
}

/// The squarefree `d` of a fundamental discriminant, if `disc` is one.
pub fn fundamental_d(disc: i64) -> Option<i64> {
    if disc == 0 || disc == 1 {
        return None;
    }
    match disc.rem_euclid(4) {
        1 if is_squarefree_i64(disc) => Some(disc),
        0 => {
            let m = disc / 4;
            (matches!(m.rem_euclid(4), 2 | 3) && is_squarefree_i64(m)).then_some(m)
        }
        _ => None,
    }
}

fn build(s: &BoundScenario, variant: Variant, constant: Interval, a: Interval, b: Interval, notes: Vec<String>) -> Result<ExclusionResult> {
    let prec = s.prec();
    let x_min = Interval::from_int(s.n_min as i64, prec);
    let m = minimize_ratio(&a, &b, &x_min)?;
    let integer_min = integer_minimum(&a, &b, &m.x0, s.n_min)?;
    let log_threshold = constant.add(&m.f_min);
    let abs_threshold = log_threshold.exp();
    let excluded = fundamental_discriminants_below(&abs_threshold, s.p, s.base)?;
    Ok(ExclusionResult {
        scenario: s.clone(),
        variant,
        constant,
        a,
        b,
        minimizer_x0: m.x0,
        interior: m.interior,
        min_value: m.f_min,
        integer_min,
        log_threshold,
        abs_threshold,
        excluded,
        notes,
    })
}

/// The chain with the printed constants.
pub fn published_threshold(s: &BoundScenario) -> Result<ExclusionResult> {
    s.validate()?;
    if s.wildness == Wildness::Tame {
        return Err(Error::domain("tame scenarios use tame_exclusion"));
    }
    let chain = reference()
        .chain(s.p, s.base.as_str())
        .ok_or_else(|| Error::Unsupported(format!("no published chain for {}", s.key())))?;
    let prec = s.prec();
    let dec = |v: &str| Interval::from_decimal(v, prec);
    let mut notes = Vec::new();
    if let Some(printed) = &chain.a_printed {
        notes.push(format!(
            "printed A = {printed:?} is malformed; A = 2.197225 x 33/2 = {} is reconstructed from the inequality (derived)",
            chain.a
        ));
    }
    if s.p == 2 && s.base == BaseSplit::Ramified {
        notes.push(format!(
            "published chain uses c_sup = {} where the ramified bound 9/4 - 1/2^(m-1) has supremum 9/4; the recomputed variant uses 9/4",
            chain.c_sup_printed
        ));
    }
    build(s, Variant::Published, dec(&chain.constant)?, dec(&chain.a)?, dec(&chain.b)?, notes)
}

/// The chain rebuilt from the exact different bound and the scenario ratios.
pub fn recomputed_threshold(s: &BoundScenario) -> Result<ExclusionResult> {
    if s.wildness == Wildness::Tame {
        return Err(Error::domain("tame scenarios use tame_exclusion"));
    }
    let (c_sup, ca, cb) = s.different_shape()?;
    let prec = s.prec();
    let two_log_p = Interval::from_int(s.p as i64, prec).ln()?.mul_int(2);
    let limit2 = odlyzko_limit(prec)?.mul_int(2);
    let constant = limit2.sub(&two_log_p.mul(&Interval::from_rational(&c_sup, prec)));
    let weight = ca * BigRational::from_integer(s.tate_ratio.into()) + cb * BigRational::from_integer(s.inertia_index.into());
    let a = two_log_p.mul(&Interval::from_rational(&weight, prec));
    let coeff = Interval::from_decimal(&s.odlyzko_coeff, prec)?;
    // 2·coeff·(2n)^{-2/3} = B·n^{-2/3}
    let two_23 = Interval::from_int(2, prec).cbrt()?.square();
    let b = coeff.mul_int(2).div(&two_23)?;
    build(s, Variant::Recomputed, constant, a, b, Vec::new())
}

/// `exclusion_threshold` for both variants, with cross-variant notes.
pub fn exclusion_threshold(s: &BoundScenario) -> Result<(ExclusionResult, ExclusionResult)> {
    let mut published = published_threshold(s)?;
    let recomputed = recomputed_threshold(s)?;
    let lost: Vec<i64> = published
        .excluded
        .iter()
        .filter(|e| !recomputed.excluded.contains(e))
        .map(|e| e.d)
        .collect();
    if !lost.is_empty() {
        published.notes.push(format!(
            "recomputed threshold |d_K| < {} does not exclude d = {:?}",
            recomputed.abs_threshold.decimal(3),
            lost
        ));
    }
    Ok((published, recomputed))
}

#[derive(Debug, Clone)]
pub struct TameResult {
    pub scenario: BoundScenario,
    pub log_threshold: Interval,
    pub abs_threshold: Interval,
    pub excluded: Vec<ExcludedField>,
    pub notes: Vec<String>,
}

/// Tame case: `2·odlyzko_lower(2n) − log N𝔭 ≤ log|d_K|` must fail. The left
/// side increases with `n`, so the binding case is `n = n_min`.
pub fn tame_exclusion(s: &BoundScenario) -> Result<TameResult> {
    s.validate()?;
    let prec = s.prec();
    let coeff = Interval::from_decimal(&s.odlyzko_coeff, prec)?;
    let lower = odlyzko_lower(2 * s.n_min, &coeff)?;
    let log_np = Interval::from_int(s.norm_p() as i64, prec).ln()?;
    let log_threshold = lower.mul_int(2).sub(&log_np);
    let abs_threshold = log_threshold.exp();
    let excluded = fundamental_discriminants_below(&abs_threshold, s.p, s.base)?;
    let claim = &reference().tame.claimed_bound;
    let notes = vec![format!(
        "published claim |d_K| <= {claim}; derived threshold is |d_K| < {} (log {})",
        abs_threshold.decimal(2),
        log_threshold.decimal(6)
    )];
    Ok(TameResult { scenario: s.clone(), log_threshold, abs_threshold, excluded, notes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wild(p: u64, base: BaseSplit) -> BoundScenario {
        BoundScenario::new(p, base, Wildness::Wild)
    }

    #[test]
    fn fundamental() {
        let got: Vec<i64> = (-30..=30).filter(|&d| fundamental_d(d).is_some()).collect();
        assert_eq!(
            got,
            vec![-24, -23, -20, -19, -15, -11, -8, -7, -4, -3, 5, 8, 12, 13, 17, 21, 24, 28, 29]
        );
    }

    #[test]
    fn split_is_unsupported() {
        assert!(matches!(
            recomputed_threshold(&wild(2, BaseSplit::Split)),
            Err(Error::Unsupported(_))
        ));
        assert!(matches!(
            recomputed_threshold(&wild(3, BaseSplit::Inert)),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn tame_threshold() {
        let t = tame_exclusion(&BoundScenario::new(2, BaseSplit::Ramified, Wildness::Tame)).unwrap();
        assert_eq!(t.log_threshold.decimal(6), "4.959359");
    }
}
