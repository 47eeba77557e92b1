//! Polynomial corpora: CSV `degree,coeffs,label` (coefficients low to high,
//! `;`-separated) or a JSON array of `{degree, coeffs, label}`.

use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::audit::{audit_sextic, AuditReport, Ramification, SexticRecord, Verdict};
use crate::arith::integer::{squarefree_core, FactorBudget};
use crate::arith::poly::IntPolynomial;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub degree: usize,
    #[serde(serialize_with = "ser_coeffs")]
    pub coeffs: Vec<BigInt>,
    pub label: Option<String>,
}

fn ser_coeffs<S: serde::Serializer>(c: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(c.iter().map(|x| x.to_string()))
}

impl CorpusEntry {
    pub fn new(coeffs: Vec<BigInt>, label: Option<String>) -> Result<Self> {
        let poly = IntPolynomial::new(coeffs.clone());
        if poly.is_zero() || poly.coeffs().len() != coeffs.len() {
            return Err(Error::Parse("leading coefficient is zero".into()));
        }
        Ok(CorpusEntry { degree: poly.deg(), coeffs, label: label.filter(|l| !l.is_empty()) })
    }

    pub fn polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowError {
    /// 1-based data row (header excluded) or array index + 1.
    pub row: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CorpusLoad {
    pub entries: Vec<CorpusEntry>,
    pub errors: Vec<RowError>,
}

#[derive(Deserialize)]
struct CsvRow {
    degree: String,
    coeffs: String,
    #[serde(default)]
    label: Option<String>,
}

fn build(degree: &str, coeffs: &[String], label: Option<String>) -> Result<CorpusEntry> {
    let degree: usize = degree.trim().parse().map_err(|_| Error::Parse(format!("bad degree {degree:?}")))?;
    let coeffs = coeffs
        .iter()
        .map(|c| c.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad coefficient {c:?}"))))
        .collect::<Result<Vec<_>>>()?;
    let e = CorpusEntry::new(coeffs, label)?;
    if e.degree != degree {
        return Err(Error::Parse(format!("declared degree {degree} but {} coefficients", e.coeffs.len())));
    }
    Ok(e)
}

pub fn parse_csv(text: &str) -> Result<CorpusLoad> {
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(text.as_bytes());
    let headers = rdr.headers().map_err(|e| Error::Parse(e.to_string()))?.clone();
    if headers.iter().take(2).collect::<Vec<_>>() != ["degree", "coeffs"] {
        return Err(Error::Parse("expected header degree,coeffs,label".into()));
    }
    let mut out = CorpusLoad::default();
    for (i, rec) in rdr.deserialize::<CsvRow>().enumerate() {
        let parsed = rec.map_err(|e| Error::Parse(e.to_string())).and_then(|r| {
            let cs: Vec<String> = r.coeffs.split(';').map(str::to_string).collect();
            build(&r.degree, &cs, r.label)
        });
        match parsed {
            Ok(e) => out.entries.push(e),
            Err(e) => out.errors.push(RowError { row: i + 1, message: e.to_string() }),
        }
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonNum {
    Int(i64),
    Str(String),
}

#[derive(Deserialize)]
struct JsonRow {
    degree: usize,
    coeffs: Vec<JsonNum>,
    #[serde(default)]
    label: Option<String>,
}

pub fn parse_json(text: &str) -> Result<CorpusLoad> {
    let rows: Vec<serde_json::Value> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut out = CorpusLoad::default();
    for (i, v) in rows.into_iter().enumerate() {
        let parsed = serde_json::from_value::<JsonRow>(v).map_err(|e| Error::Parse(e.to_string())).and_then(|r| {
            let cs: Vec<String> = r
                .coeffs
                .into_iter()
                .map(|c| match c {
                    JsonNum::Int(x) => x.to_string(),
                    JsonNum::Str(s) => s,
                })
                .collect();
            build(&r.degree.to_string(), &cs, r.label)
        });
        match parsed {
            Ok(e) => out.entries.push(e),
            Err(e) => out.errors.push(RowError { row: i + 1, message: e.to_string() }),
        }
    }
    Ok(out)
}

pub fn to_csv(entries: &[CorpusEntry]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(["degree", "coeffs", "label"]).map_err(io)?;
    for e in entries {
        let cs: Vec<String> = e.coeffs.iter().map(BigInt::to_string).collect();
        w.write_record([e.degree.to_string(), cs.join(";"), e.label.clone().unwrap_or_default()]).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_json(entries: &[CorpusEntry]) -> Result<String> {
    serde_json::to_string_pretty(entries).map_err(|e| Error::Parse(e.to_string()))
}

/// Load a corpus file; `.json` selects the JSON form, anything else CSV.
pub fn load_corpus(path: &Path) -> Result<CorpusLoad> {
    let text = std::fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        parse_json(&text)
    } else {
        parse_csv(&text)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Candidate {
    pub record: SexticRecord,
    pub label: Option<String>,
    pub report: AuditReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct Excluded {
    pub index: usize,
    pub reason: String,
    pub report: Option<AuditReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    pub candidates: Vec<Candidate>,
    pub excluded: Vec<Excluded>,
}

/// Sextics whose discriminant has squarefree core `d` (optionally filtered)
/// and which pass the necessary conditions for `ramification`. Sorted by
/// `|d|`, then by coefficients.
pub fn search_s3_candidates(corpus: &[CorpusEntry], d_filter: Option<i64>, ramification: Ramification) -> SearchOutcome {
    let mut candidates = Vec::new();
    let mut excluded = Vec::new();
    for (index, entry) in corpus.iter().enumerate() {
        if entry.degree != 6 {
            excluded.push(Excluded { index, reason: format!("degree {}", entry.degree), report: None });
            continue;
        }
        let f = entry.polynomial();
        let d = match f.discriminant().and_then(|disc| squarefree_core(&disc, FactorBudget::default())) {
            Ok(c) => c,
            Err(e) => {
                excluded.push(Excluded { index, reason: e.to_string(), report: None });
                continue;
            }
        };
        let Ok(d) = i64::try_from(&d) else {
            excluded.push(Excluded { index, reason: format!("quadratic subfield {d} out of range"), report: None });
            continue;
        };
        if d_filter.is_some_and(|want| want != d) {
            continue;
        }
        let record = SexticRecord { d, polynomial: f, claimed_ramification: ramification };
        let report = audit_sextic(&record);
        if report.overall() == Verdict::Fail {
            let failed: Vec<&str> = report.checks.iter().filter(|c| c.verdict == Verdict::Fail).map(|c| c.name.as_str()).collect();
            excluded.push(Excluded { index, reason: format!("failed {}", failed.join(", ")), report: Some(report) });
        } else {
            candidates.push(Candidate { record, label: entry.label.clone(), report });
        }
    }
    candidates.sort_by(|a, b| {
        (a.record.d.unsigned_abs(), a.record.polynomial.coeffs()).cmp(&(b.record.d.unsigned_abs(), b.record.polynomial.coeffs()))
    });
    SearchOutcome { candidates, excluded }
}
