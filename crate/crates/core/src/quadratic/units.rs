//! Unit groups: roots of unity and the fundamental unit of real fields.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::field::{QuadInteger, QuadraticField};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct UnitGroup {
    /// Number of roots of unity.
    pub torsion_order: u32,
    pub torsion_generator: QuadInteger,
    pub fundamental: Option<QuadInteger>,
    pub fundamental_norm: Option<i8>,
}

/// Minimal unit `ε > 1` from the continued fraction of `ω`.
///
/// For a convergent `p/q` of `ω`, `p − qω` is small; the first convergent
/// with `N(p − qω) = ±1` yields `ε = p − q·ω̄`.
pub fn fundamental_unit(field: &QuadraticField) -> Result<(QuadInteger, i8)> {
    if !field.is_real() {
        return Err(Error::domain("fundamental unit of an imaginary quadratic field"));
    }
    let disc = field.disc() as i128;
    let s = disc.sqrt();
    let tr = BigInt::from(field.omega_trace());
    let nm = BigInt::from(field.omega_norm());
    // ω = (P + √D)/Q
    let (mut pp, mut qq): (i128, i128) = (field.omega_trace() as i128, 2);
    let (mut p0, mut p1) = (BigInt::zero(), BigInt::one());
    let (mut q0, mut q1) = (BigInt::one(), BigInt::zero());
    for _ in 0..1_000_000 {
        let a = if qq > 0 {
            (pp + s).div_euclid(qq)
        } else {
            -((pp + s).div_euclid(-qq)) - 1
        };
        let p2 = &p1 * a + &p0;
        let q2 = &q1 * a + &q0;
        (p0, p1) = (p1, p2);
        (q0, q1) = (q1, q2);
        let norm = &p1 * &p1 - &p1 * &q1 * &tr + &q1 * &q1 * &nm;
        if norm.abs().is_one() {
            let eps = QuadInteger { a: &p1 - &q1 * &tr, b: q1.clone() };
            let sign = if norm.is_positive() { 1 } else { -1 };
            debug_assert_eq!(field.norm(&eps), norm);
            return Ok((eps, sign));
        }
        let next_p = a * qq - pp;
        qq = (disc - next_p * next_p) / qq;
        pp = next_p;
    }
    Err(Error::Budget(format!("continued fraction of ω for d = {} did not close", field.d())))
}

pub fn unit_group(field: &QuadraticField) -> Result<UnitGroup> {
    if field.is_real() {
        let (eps, n) = fundamental_unit(field)?;
        return Ok(UnitGroup {
            torsion_order: 2,
            torsion_generator: QuadInteger::new(-1, 0),
            fundamental: Some(eps),
            fundamental_norm: Some(n),
        });
    }
    let (w, g) = match field.d() {
        // ω = i
        -1 => (4, QuadInteger::new(0, 1)),
        // ω = (1+√−3)/2 is a primitive sixth root of unity
        -3 => (6, QuadInteger::new(0, 1)),
        _ => (2, QuadInteger::new(-1, 0)),
    };
    Ok(UnitGroup { torsion_order: w, torsion_generator: g, fundamental: None, fundamental_norm: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(d: i64) -> (QuadInteger, i8) {
        fundamental_unit(&QuadraticField::new(d).unwrap()).unwrap()
    }

    #[test]
    fn known_units() {
        assert_eq!(unit(2), (QuadInteger::new(1, 1), -1));
        assert_eq!(unit(5), (QuadInteger::new(0, 1), -1));
        assert_eq!(unit(3), (QuadInteger::new(2, 1), 1));
        assert_eq!(unit(6), (QuadInteger::new(5, 2), 1));
        // 1 + ω for d = 13 ... ε = (3 + √13)/2 = 1 + ω
        assert_eq!(unit(13), (QuadInteger::new(1, 1), -1));
        assert_eq!(unit(94).0, QuadInteger::new(2143295, 221064));
    }

    #[test]
    fn torsion() {
        let k = QuadraticField::new(-3).unwrap();
        let g = unit_group(&k).unwrap();
        assert_eq!(g.torsion_order, 6);
        assert_eq!(k.pow(&g.torsion_generator, 6), QuadInteger::one());
        assert_ne!(k.pow(&g.torsion_generator, 3), QuadInteger::one());
    }
}
