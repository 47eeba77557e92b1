//! Necessary-condition audits of table polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use super::census::{compatible_groups, cycle_type_census};
use super::newton::newton_polygon;
use super::ore::{dedekind_index_check, field_disc_valuation, ore_local, unramified_at, DedekindVerdict};
use crate::arith::integer::{factor_integer, squarefree_core, valuation, FactorBudget};
use crate::arith::modp::factor_mod_p;
use crate::arith::poly::IntPolynomial;
use crate::arith::zfactor::factor_over_z;
use crate::data::{SexticRow, TableRow};

pub const DEFAULT_CENSUS_BOUND: u64 = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Inconclusive,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub subject: String,
    pub d: i64,
    pub polynomial: IntPolynomial,
    pub checks: Vec<Check>,
    /// Claims carried along without verification.
    pub trusted: Vec<String>,
    pub evidence: Map<String, Value>,
}

impl AuditReport {
    fn new(subject: String, d: i64, polynomial: &IntPolynomial) -> Self {
        AuditReport { subject, d, polynomial: polynomial.clone(), checks: Vec::new(), trusted: Vec::new(), evidence: Map::new() }
    }

    fn check(&mut self, name: &str, verdict: Verdict, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), verdict, detail: detail.into() });
    }

    /// Worst verdict over all checks.
    pub fn overall(&self) -> Verdict {
        self.checks.iter().map(|c| c.verdict).max().unwrap_or(Verdict::Pass)
    }

    pub fn verdict_of(&self, name: &str) -> Option<Verdict> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.verdict)
    }

    pub fn hard_fails(&self) -> usize {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableFieldRecord {
    pub d: i64,
    pub polynomial: IntPolynomial,
    pub claimed_h: u64,
    /// Claimed `(e, f, g)` of `p`.
    pub claimed_efg: [u32; 3],
    pub p: u64,
}

impl TableFieldRecord {
    pub fn from_row(row: &TableRow, p: u64) -> Self {
        TableFieldRecord { d: row.d, polynomial: row.polynomial.clone(), claimed_h: row.h, claimed_efg: row.efg, p }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ramification {
    #[serde(rename = "only_over_2")]
    OnlyOver2,
    Unramified,
}

impl fmt::Display for Ramification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ramification::OnlyOver2 => "only_over_2",
            Ramification::Unramified => "unramified",
        })
    }
}

impl std::str::FromStr for Ramification {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "only_over_2" => Ok(Ramification::OnlyOver2),
            "unramified" => Ok(Ramification::Unramified),
            _ => Err(crate::Error::Parse(format!("unknown ramification class {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SexticRecord {
    pub d: i64,
    pub polynomial: IntPolynomial,
    pub claimed_ramification: Ramification,
}

impl From<&SexticRow> for SexticRecord {
    fn from(row: &SexticRow) -> Self {
        SexticRecord { d: row.d, polynomial: row.polynomial.clone(), claimed_ramification: row.ramification }
    }
}

fn fmt_factors(fs: &[(IntPolynomial, u32)]) -> String {
    fs.iter()
        .map(|(g, m)| if *m == 1 { format!("({g})") } else { format!("({g})^{m}") })
        .collect::<Vec<_>>()
        .join("")
}

fn irreducibility(report: &mut AuditReport, f: &IntPolynomial) -> bool {
    match factor_over_z(f) {
        Ok(z) if z.factors.len() == 1 && z.factors[0].1 == 1 => {
            report.check("irreducible", Verdict::Pass, "irreducible over Q");
            true
        }
        Ok(z) => {
            report.check("irreducible", Verdict::Fail, format!("factors as {}", fmt_factors(&z.factors)));
            false
        }
        Err(e) => {
            report.check("irreducible", Verdict::Inconclusive, e.to_string());
            false
        }
    }
}

/// Irreducibility, signature and the shape of `p` against the claimed
/// `(e, f, g)`. The class number is carried as a trusted claim.
pub fn audit_table_field(r: &TableFieldRecord) -> AuditReport {
    let f = &r.polynomial;
    let mut report = AuditReport::new(format!("d={} p={}", r.d, r.p), r.d, f);
    let [e, fdeg, g] = r.claimed_efg;
    if f.deg() as u32 != e * fdeg * g {
        report.check("degree", Verdict::Fail, format!("degree {} differs from e·f·g = {}", f.deg(), e * fdeg * g));
    }
    irreducibility(&mut report, f);

    match f.real_root_count() {
        Ok((r1, _)) => {
            report.evidence.insert("real_roots".into(), json!(r1));
            if r.d < 0 && r1 > 0 {
                report.check("signature", Verdict::Fail, format!("{r1} real roots over an imaginary base"));
            } else {
                report.check("signature", Verdict::Pass, if r1 == 0 { "totally imaginary".to_string() } else { format!("{r1} real places") });
            }
        }
        Err(e) => report.check("signature", Verdict::Inconclusive, e.to_string()),
    }

    match factor_mod_p(f, r.p) {
        Ok(fs) => {
            let text = fmt_factors(&fs);
            report.evidence.insert("reduction".into(), json!(text));
            let ok = fs.len() as u32 <= g && fs.iter().all(|(pi, _)| fdeg % pi.deg() as u32 == 0);
            if ok {
                report.check("mod_p_shape", Verdict::Pass, format!("{text} mod {}: consistent with ({e},{fdeg},{g})", r.p));
            } else {
                report.check("mod_p_shape", Verdict::Fail, format!("{text} mod {} contradicts ({e},{fdeg},{g})", r.p));
            }
        }
        Err(e) => report.check("mod_p_shape", Verdict::Inconclusive, e.to_string()),
    }

    if g == 1 {
        newton_check(&mut report, f, r.p, e, fdeg);
    }
    report.trusted.push(format!("class number h = {} (asserted, not verified)", r.claimed_h));
    report
}

// One prime above p: the polygon of the single p-adic factor has one side.
fn newton_check(report: &mut AuditReport, f: &IntPolynomial, p: u64, e: u32, fdeg: u32) {
    if !f.coeff(0).is_zero() {
        if let Ok(np) = newton_polygon(f, p) {
            let slopes: Vec<String> = np.iter().map(|s| format!("{}×{}", s.slope, s.length)).collect();
            report.evidence.insert("coefficient_polygon".into(), json!(slopes));
        }
    }
    let local = match ore_local(f, p) {
        Ok(l) => l,
        Err(err) => return report.check("newton_polygon", Verdict::Inconclusive, err.to_string()),
    };
    report.evidence.insert("ore".into(), serde_json::to_value(&local).unwrap_or(Value::Null));
    if !local.simple_degrees.is_empty() || local.sides.len() != 1 {
        let msg = format!("{} sides and {} simple factors for a single prime", local.sides.len(), local.simple_degrees.len());
        return report.check("newton_polygon", Verdict::Fail, msg);
    }
    let side = &local.sides[0];
    let (h, den) = side.slope;
    if !(e as u64).is_multiple_of(den) {
        let msg = format!("slope {h}/{den} needs ramification divisible by {den}, claimed e = {e}");
        return report.check("newton_polygon", Verdict::Fail, msg);
    }
    let certified = local.regular && side.degree == 1 && den == e as u64 && side.phi_degree == fdeg as usize;
    let msg = format!(
        "single side of slope {h}/{den} over φ of degree {}: {} ({e},{fdeg},1)",
        side.phi_degree,
        if certified { "certifies" } else { "consistent with" }
    );
    report.check("newton_polygon", Verdict::Pass, msg);
}

fn odd_primes_of(n: i64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n.unsigned_abs();
    while m.is_multiple_of(2) {
        m /= 2;
    }
    let mut q = 3;
    while q * q <= m {
        if m.is_multiple_of(q) {
            out.push(q);
            while m.is_multiple_of(q) {
                m /= q;
            }
        }
        q += 2;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// `v_2(d_K)` for `K = Q(√d)`.
fn v2_disc(d: i64) -> u32 {
    match d.rem_euclid(4) {
        1 => 0,
        3 => 2,
        _ => 3,
    }
}

pub fn audit_sextic(r: &SexticRecord) -> AuditReport {
    audit_sextic_with_bound(r, DEFAULT_CENSUS_BOUND)
}

/// Irreducibility, odd discriminant support, quadratic subfield, cycle-type
/// census and, for unramified rows, the 2-adic discriminant pattern.
pub fn audit_sextic_with_bound(r: &SexticRecord, census_bound: u64) -> AuditReport {
    let f = &r.polynomial;
    let mut report = AuditReport::new(format!("d={} {}", r.d, r.claimed_ramification), r.d, f);
    if f.deg() != 6 {
        report.check("degree", Verdict::Fail, format!("degree {} is not 6", f.deg()));
        return report;
    }
    if !irreducibility(&mut report, f) {
        return report;
    }
    let disc = match f.discriminant() {
        Ok(d) => d,
        Err(e) => {
            report.check("discriminant", Verdict::Inconclusive, e.to_string());
            return report;
        }
    };
    let fact = match factor_integer(&disc, FactorBudget::default()) {
        Ok(x) => x,
        Err(e) => {
            report.check("odd_support", Verdict::Inconclusive, e.to_string());
            return report;
        }
    };
    report.evidence.insert("disc".into(), json!(fact.known().to_string()));
    odd_support(&mut report, f, r.d, &fact.known().primes(), fact.is_complete());

    match squarefree_core(&disc, FactorBudget::default()) {
        Ok(core) if core == BigInt::from(r.d) => {
            report.check("quadratic_subfield", Verdict::Pass, format!("disc f = {} · square", r.d))
        }
        Ok(core) => report.check("quadratic_subfield", Verdict::Inconclusive, format!("squarefree core {core} differs from d")),
        Err(e) => report.check("quadratic_subfield", Verdict::Inconclusive, e.to_string()),
    }

    match cycle_type_census(f, census_bound) {
        Ok(c) => {
            let groups: Vec<&str> = compatible_groups(&c).iter().map(|g| g.label).collect();
            report.evidence.insert("census".into(), serde_json::to_value(&c).unwrap_or(Value::Null));
            report.evidence.insert("compatible_groups".into(), json!(groups));
            let verdict = if !groups.contains(&"6T3") {
                Verdict::Fail
            } else if groups == ["6T3"] {
                Verdict::Pass
            } else {
                Verdict::Inconclusive
            };
            let types: Vec<&str> = c.frequencies.keys().map(String::as_str).collect();
            report.check("census", verdict, format!("{} primes, cycle types {{{}}}, compatible {:?}", c.primes_used, types.join(", "), groups));
        }
        Err(e) => report.check("census", Verdict::Inconclusive, e.to_string()),
    }

    if r.claimed_ramification == Ramification::Unramified {
        two_adic(&mut report, f, r.d, &disc);
    }
    report
}

fn odd_support(report: &mut AuditReport, f: &IntPolynomial, d: i64, primes: &[BigInt], complete: bool) {
    let allowed = odd_primes_of(d);
    let mut discharged = Vec::new();
    let mut verdict = if complete { Verdict::Pass } else { Verdict::Inconclusive };
    let mut notes = Vec::new();
    for q in primes.iter().filter_map(|q| q.to_u64()).filter(|&q| q != 2) {
        if allowed.contains(&q) {
            continue;
        }
        if dedekind_index_check(f, q).ok() == Some(DedekindVerdict::MaximalAtP) {
            verdict = Verdict::Fail;
            notes.push(format!("{q} ramifies (Z[x]/f maximal at {q})"));
            continue;
        }
        match unramified_at(f, q) {
            Ok(Some(true)) => discharged.push(q),
            Ok(Some(false)) => {
                verdict = Verdict::Fail;
                notes.push(format!("{q} ramifies"));
            }
            _ => {
                verdict = verdict.max(Verdict::Inconclusive);
                notes.push(format!("{q}: ramification undecided"));
            }
        }
    }
    let mut detail = format!("odd support of d: {allowed:?}");
    if !discharged.is_empty() {
        detail += &format!("; discharged {discharged:?}");
    }
    if !notes.is_empty() {
        detail += &format!("; {}", notes.join("; "));
    }
    report.evidence.insert("discharged".into(), json!(discharged));
    report.check("odd_support", verdict, detail);
}

fn two_adic(report: &mut AuditReport, f: &IntPolynomial, d: i64, disc: &BigInt) {
    let e_k: u64 = if d.rem_euclid(4) == 1 { 1 } else { 2 };
    let target = 3 * v2_disc(d) as u64;
    let Ok((v, local)) = field_disc_valuation(f, 2) else {
        return report.check("unramified_at_2", Verdict::Inconclusive, "2-adic data unavailable");
    };
    let ram = local.ramification_indices();
    report.evidence.insert("v2_disc_f".into(), json!(valuation(disc, &BigInt::from(2))));
    report.evidence.insert("ramification_at_2".into(), json!(ram));
    if let Some(bad) = ram.iter().find(|&&x| !e_k.is_multiple_of(x)) {
        let msg = format!("ramification index {bad} at 2 exceeds e(2, K) = {e_k}");
        return report.check("unramified_at_2", Verdict::Fail, msg);
    }
    if !local.regular {
        return report.check("unramified_at_2", Verdict::Inconclusive, "2-adic index not certified");
    }
    report.evidence.insert("v2_disc_m".into(), json!(v));
    let verdict = if v == target { Verdict::Pass } else { Verdict::Inconclusive };
    report.check(
        "unramified_at_2",
        verdict,
        format!("v_2(d_M) = {v}, 3·v_2(d_K) = {target}, indices {ram:?} divide {e_k}"),
    );
}

