//! Rational 2-torsion for curves with good reduction away from 2, and the
//! resulting nonexistence statements.

use serde::Serialize;

use super::model::CurveModel;
use super::reduction::{odd_reduction_audit, ReductionReport};
use super::torsion::{two_torsion_field, Gl2Image, TwoTorsionReport};
use crate::arith::integer::is_squarefree_i64;
use crate::data::reference;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Prop4Verdict {
    /// Good away from 2 and a rational 2-torsion point exists.
    Consistent,
    NotApplicable { reason: String },
    /// Good away from 2 but no rational 2-torsion point.
    Inconsistent,
}

#[derive(Debug, Clone, Serialize)]
pub struct Prop4Audit {
    pub d: i64,
    pub verdict: Prop4Verdict,
    pub reduction: ReductionReport,
    pub two_torsion: TwoTorsionReport,
}

/// For the nine fields: a curve with good reduction away from 2 must have a
/// rational point of order 2 (mod-2 image trivial or `C2`).
pub fn prop4_audit(e: &CurveModel, d: i64) -> Result<Prop4Audit> {
    if !reference().fields.nine.contains(&d) {
        return Err(Error::domain(format!("d = {d} is not one of the nine fields")));
    }
    if e.d != d {
        return Err(Error::domain(format!("curve is over Q(√{}), not Q(√{d})", e.d)));
    }
    let k = e.field()?;
    let reduction = odd_reduction_audit(e)?;
    let two_torsion = two_torsion_field(e, &k)?;
    let verdict = if !reduction.good_away_from_2() {
        Prop4Verdict::NotApplicable { reason: format!("unresolved odd primes {:?}", reduction.bad_primes()) }
    } else if matches!(two_torsion.image, Gl2Image::Trivial | Gl2Image::C2) {
        Prop4Verdict::Consistent
    } else {
        Prop4Verdict::Inconsistent
    };
    Ok(Prop4Audit { d, verdict, reduction, two_torsion })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdmissibilityRule {
    Comalada,
    Setzer,
}

/// Whether `Q(√d)` carries a curve with good reduction everywhere and a
/// rational 2-torsion point, according to the embedded external results.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityLookup {
    pub rule: Option<AdmissibilityRule>,
    pub source: Option<String>,
    /// `None` outside the range covered by the data.
    pub admissible: Option<bool>,
    pub detail: String,
}

fn is_square_mod(a: i64, n: u64) -> bool {
    if n <= 1 {
        return true;
    }
    let a = a.rem_euclid(n as i64) as u64;
    (0..n).any(|x| (x as u128 * x as u128 % n as u128) as u64 == a)
}

const SQUARE_SEARCH_LIMIT: u64 = 1 << 22;

pub fn admissibility(d: i64) -> AdmissibilityLookup {
    let adm = &reference().admissibility;
    if d > 0 {
        let [lo, hi] = adm.comalada_range;
        if d < lo || d > hi {
            return AdmissibilityLookup {
                rule: Some(AdmissibilityRule::Comalada),
                source: Some(adm.comalada_source.clone()),
                admissible: None,
                detail: format!("d = {d} outside the classified range [{lo}, {hi}]"),
            };
        }
        let yes = adm.comalada.contains(&d);
        return AdmissibilityLookup {
            rule: Some(AdmissibilityRule::Comalada),
            source: Some(adm.comalada_source.clone()),
            admissible: Some(yes),
            detail: format!("d = {d} {} the list {:?}", if yes { "is in" } else { "is not in" }, adm.comalada),
        };
    }
    let f = adm.setzer_factor;
    let source = Some(adm.setzer_source.clone());
    if d % f != 0 {
        return AdmissibilityLookup {
            rule: Some(AdmissibilityRule::Setzer),
            source,
            admissible: Some(false),
            detail: format!("{f} does not divide d = {d}"),
        };
    }
    let d1 = d / f;
    if d1.unsigned_abs() > SQUARE_SEARCH_LIMIT {
        return AdmissibilityLookup { rule: Some(AdmissibilityRule::Setzer), source, admissible: None, detail: format!("|d1| = {} too large", d1.abs()) };
    }
    let c5 = is_square_mod(d1, 5);
    let c13 = is_square_mod(d1, 13);
    let c65 = is_square_mod(f, d1.unsigned_abs());
    AdmissibilityLookup {
        rule: Some(AdmissibilityRule::Setzer),
        source,
        admissible: Some(c5 && c13 && c65),
        detail: format!(
            "d = {f}·({d1}): d1 square mod 5: {c5}, mod 13: {c13}; {f} square mod {}: {c65}",
            d1.abs()
        ),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Corollary3Statement {
    Nonexistence,
    AdmissibleExists,
    LookupOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Corollary3Report {
    pub d: i64,
    pub statement: Corollary3Statement,
    pub chain: Vec<String>,
    pub admissibility: AdmissibilityLookup,
}

/// Nonexistence of curves with good reduction everywhere over `Q(√d)`.
pub fn corollary3_report(d: i64) -> Result<Corollary3Report> {
    if d == 0 || d == 1 || !is_squarefree_i64(d) {
        return Err(Error::domain(format!("d = {d} is not squarefree")));
    }
    let lookup = admissibility(d);
    let in_nine = reference().fields.nine.contains(&d);
    let (statement, chain) = match (in_nine, lookup.admissible) {
        (true, Some(false)) => (
            Corollary3Statement::Nonexistence,
            vec![
                format!(
                    "ray class groups of Q(√{d}) with 2-power conductor{} are 2-groups",
                    if d > 0 { " times the real places" } else { "" }
                ),
                "so every curve with good reduction away from 2 has a rational point of order 2".to_string(),
                format!("no curve with good reduction everywhere and a rational 2-torsion point exists: {}", lookup.detail),
                format!("hence no elliptic curve over Q(√{d}) has good reduction everywhere"),
            ],
        ),
        (_, Some(true)) => (
            Corollary3Statement::AdmissibleExists,
            vec![format!("a curve with good reduction everywhere and rational 2-torsion exists: {}", lookup.detail)],
        ),
        _ => (Corollary3Statement::LookupOnly, vec![lookup.detail.clone()]),
    };
    Ok(Corollary3Report { d, statement, chain, admissibility: lookup })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonexistence_for_eight_fields() {
        for d in [5, 3, 2, -1, -2, -3, -5, -6] {
            assert_eq!(corollary3_report(d).unwrap().statement, Corollary3Statement::Nonexistence, "d={d}");
        }
        assert_eq!(corollary3_report(6).unwrap().statement, Corollary3Statement::AdmissibleExists);
        assert_eq!(corollary3_report(7).unwrap().statement, Corollary3Statement::AdmissibleExists);
        assert_eq!(corollary3_report(10).unwrap().statement, Corollary3Statement::LookupOnly);
    }

    #[test]
    fn setzer_rule() {
        assert_eq!(admissibility(-65).admissible, Some(true));
        assert_eq!(admissibility(-7).admissible, Some(false));
        // -130 = 65·(-2): -2 is not a square mod 5
        assert_eq!(admissibility(-130).admissible, Some(false));
        assert_eq!(admissibility(65).admissible, Some(true));
    }

    #[test]
    fn prop4_examples() {
        let a = prop4_audit(&CurveModel::from_rational(-1, [0, 0, 0, -1, 0]), -1).unwrap();
        assert_eq!(a.verdict, Prop4Verdict::Consistent);
        let a = prop4_audit(&CurveModel::from_rational(2, [0, 0, 0, 1, 1]), 2).unwrap();
        assert!(matches!(a.verdict, Prop4Verdict::NotApplicable { .. }));
        assert!(prop4_audit(&CurveModel::from_rational(7, [0, 0, 0, -1, 0]), 7).is_err());
    }
}
