//! Frobenius cycle-type census and the transitive groups of degree 6 up to
//! order 12.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::integer::primes_up_to;
use crate::arith::modp::PrimeField;
use crate::arith::poly::IntPolynomial;
use crate::error::{Error, Result};

pub const MIN_PRIME_BOUND: u64 = 50;

/// Cycle type as a descending partition, e.g. `[2, 2, 1, 1]`.
pub type CycleType = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    pub prime_bound: u64,
    pub primes_used: usize,
    /// Keys such as `"2^2 1^2"`.
    pub frequencies: BTreeMap<String, usize>,
    #[serde(skip)]
    pub types: BTreeMap<CycleType, usize>,
}

impl Census {
    pub fn observed(&self) -> BTreeSet<CycleType> {
        self.types.keys().cloned().collect()
    }
}

pub fn format_cycle_type(t: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < t.len() {
        let j = t[i..].iter().take_while(|&&x| x == t[i]).count();
        parts.push(if j == 1 { t[i].to_string() } else { format!("{}^{}", t[i], j) });
        i += j;
    }
    parts.join(" ")
}

/// Degree patterns of `f mod p` for every prime `p ≤ prime_bound` not
/// dividing `lc(f) · disc(f)`.
pub fn cycle_type_census(f: &IntPolynomial, prime_bound: u64) -> Result<Census> {
    if prime_bound < MIN_PRIME_BOUND {
        return Err(Error::domain(format!("census bound {prime_bound} below {MIN_PRIME_BOUND}")));
    }
    if !f.is_squarefree() {
        return Err(Error::domain(format!("{f} is not squarefree")));
    }
    let bad = f.discriminant()? * f.leading();
    let mut types = BTreeMap::new();
    let mut used = 0;
    for p in primes_up_to(prime_bound.min(1 << 30)) {
        if bad.mod_floor(&BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = PrimeField::new(p)?;
        let mut pat = fp.degree_pattern(&fp.reduce(f));
        pat.sort_unstable_by(|a, b| b.cmp(a));
        *types.entry(pat).or_insert(0) += 1;
        used += 1;
    }
    let frequencies = types.iter().map(|(k, v)| (format_cycle_type(k), *v)).collect();
    Ok(Census { prime_bound, primes_used: used, frequencies, types })
}

/// A transitive permutation group of degree 6 with its cycle-type counts.
#[derive(Debug, Clone, Serialize)]
pub struct TransitiveGroup {
    pub label: &'static str,
    pub name: &'static str,
    pub order: usize,
    pub has_normal_order_6: bool,
    pub classes: &'static [(&'static [usize], usize)],
}

impl TransitiveGroup {
    pub fn cycle_types(&self) -> BTreeSet<CycleType> {
        self.classes.iter().map(|(t, _)| t.to_vec()).collect()
    }
}

pub const DEGREE6_GROUPS: [TransitiveGroup; 4] = [
    TransitiveGroup {
        label: "6T1",
        name: "C6",
        order: 6,
        has_normal_order_6: true,
        classes: &[(&[1, 1, 1, 1, 1, 1], 1), (&[6], 2), (&[3, 3], 2), (&[2, 2, 2], 1)],
    },
    TransitiveGroup {
        label: "6T2",
        name: "S3",
        order: 6,
        has_normal_order_6: true,
        classes: &[(&[1, 1, 1, 1, 1, 1], 1), (&[3, 3], 2), (&[2, 2, 2], 3)],
    },
    TransitiveGroup {
        label: "6T3",
        name: "D6",
        order: 12,
        has_normal_order_6: true,
        classes: &[
            (&[1, 1, 1, 1, 1, 1], 1),
            (&[6], 2),
            (&[3, 3], 2),
            (&[2, 2, 2], 4),
            (&[2, 2, 1, 1], 3),
        ],
    },
    TransitiveGroup {
        label: "6T4",
        name: "A4",
        order: 12,
        has_normal_order_6: false,
        classes: &[(&[1, 1, 1, 1, 1, 1], 1), (&[3, 3], 8), (&[2, 2, 1, 1], 3)],
    },
];

pub fn transitive_group(label: &str) -> Option<&'static TransitiveGroup> {
    DEGREE6_GROUPS.iter().find(|g| g.label == label)
}

/// Embedded groups whose cycle types cover everything observed.
pub fn compatible_groups(census: &Census) -> Vec<&'static TransitiveGroup> {
    let obs = census.observed();
    DEGREE6_GROUPS.iter().filter(|g| obs.is_subset(&g.cycle_types())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_sizes_sum_to_order() {
        for g in &DEGREE6_GROUPS {
            assert_eq!(g.classes.iter().map(|c| c.1).sum::<usize>(), g.order, "{}", g.label);
        }
    }

    #[test]
    fn abelian_sextic() {
        let f: IntPolynomial = "x^6 + 1".parse().unwrap();
        let c = cycle_type_census(&f, 1000).unwrap();
        let labels: Vec<_> = compatible_groups(&c).iter().map(|g| g.label).collect();
        assert!(labels.contains(&"6T3"));
        assert!(!c.observed().contains(&vec![6]));
        assert!(cycle_type_census(&f, 49).is_err());
    }

    #[test]
    fn formatting() {
        assert_eq!(format_cycle_type(&[2, 2, 1, 1]), "2^2 1^2");
        assert_eq!(format_cycle_type(&[6]), "6");
    }
}
