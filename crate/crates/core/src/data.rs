//! Embedded reference data (published constants, tables, admissibility lists).

use std::sync::OnceLock;

use serde::Deserialize;

use crate::arith::poly::IntPolynomial;
use crate::fields::Ramification;

const REFERENCE: &str = include_str!("../data/reference.toml");

#[derive(Debug, Clone, Deserialize)]
pub struct Reference {
    pub version: u32,
    pub constants: Constants,
    pub tame: TameClaim,
    pub chain: Vec<PublishedChain>,
    pub table1: Vec<TableRow>,
    pub p3field: TableRow,
    pub table2: Vec<SexticRow>,
    pub admissibility: Admissibility,
    pub fields: Fields,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Constants {
    pub odlyzko_coeff: String,
    pub lower_limit_printed: String,
    pub gamma_short: String,
    pub log_4pi_short: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TameClaim {
    pub claimed_bound: String,
    pub n_min: u64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PublishedChain {
    pub key: String,
    pub p: u64,
    pub base: String,
    pub constant: String,
    pub c_sup_printed: String,
    pub a: String,
    #[serde(default)]
    pub a_printed: Option<String>,
    #[serde(default)]
    pub a_provenance: Option<String>,
    pub b: String,
    pub x0: String,
    pub log_threshold: String,
    pub abs_threshold: String,
    pub excludes: Vec<i64>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TableRow {
    pub d: i64,
    pub polynomial: IntPolynomial,
    pub h: u64,
    pub efg: [u32; 3],
}

#[derive(Debug, Clone, Deserialize)]
pub struct SexticRow {
    pub d: i64,
    pub polynomial: IntPolynomial,
    pub ramification: Ramification,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Admissibility {
    pub comalada_range: [i64; 2],
    pub comalada: Vec<i64>,
    pub comalada_source: String,
    pub setzer_factor: i64,
    pub setzer_source: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Fields {
    pub nine: Vec<i64>,
}

/// The embedded reference data, parsed once.
pub fn reference() -> &'static Reference {
    static CELL: OnceLock<Reference> = OnceLock::new();
    CELL.get_or_init(|| toml::from_str(REFERENCE).expect("embedded reference data is valid"))
}

impl Reference {
    pub fn chain(&self, p: u64, base: &str) -> Option<&PublishedChain> {
        self.chain.iter().find(|c| c.p == p && c.base == base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads() {
        let r = reference();
        assert_eq!(r.table1.len(), 9);
        assert_eq!(r.table2.len(), 10);
        assert_eq!(r.chain.len(), 3);
        assert_eq!(r.p3field.polynomial.deg(), 18);
        for row in &r.table1 {
            assert_eq!(row.polynomial.deg() as u32, row.efg.iter().product::<u32>());
        }
        assert!(r.table2.iter().all(|s| s.polynomial.deg() == 6));
    }
}
