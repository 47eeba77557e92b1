//! Exponents `c` with `D_{E/F} | (p)^c` for the local layers, as exact
//! rationals, and the global discriminant bound built from them.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::real::Interval;
use crate::error::{Error, Result};

/// Which formula produced an exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundSource {
    /// Wild layer `(1 + α/E)(1 − p^{-m})`.
    WildLayer,
    /// Tame layer `(e − 1)/(E₀·e)`.
    TameLayer,
    /// `3 − 2^{1−m} − 1/(e·2^m)`, 2 inert.
    InertTwo,
    /// `9/4 − 2^{1−m}`, 2 ramified.
    RamifiedTwo,
    /// `2 − 1/(2·3^{m−1}) − 1/(2e·3^m)`, 3 ramified.
    RamifiedThree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferentBound {
    #[serde(serialize_with = "ser_rational")]
    pub c: BigRational,
    pub source: BoundSource,
}

pub(crate) fn ser_rational<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Local ramification data `(p, e, m, E₀)`: tame index `e` prime to `p`, wild
/// exponent `m` and the absolute ramification `E₀` of the base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LocalRamification {
    pub p: u64,
    pub e: u64,
    pub m: u32,
    pub base_e: u64,
}

impl LocalRamification {
    pub fn new(p: u64, e: u64, m: u32, base_e: u64) -> Result<Self> {
        if e == 0 || e.gcd(&p) != 1 {
            return Err(Error::domain(format!("tame index {e} must be positive and prime to {p}")));
        }
        if base_e == 0 {
            return Err(Error::domain("base ramification must be positive"));
        }
        Ok(LocalRamification { p, e, m, base_e })
    }

    pub fn wild(&self) -> Result<DifferentBound> {
        moon_bound(self.p, self.e, self.m, self.base_e)
    }

    pub fn tame(&self) -> Result<DifferentBound> {
        tame_different(self.e, self.base_e)
    }

    /// Tame plus wild layer.
    pub fn total(&self) -> Result<DifferentBound> {
        let c = self.tame()?.c + self.wild()?.c;
        Ok(DifferentBound { c, source: BoundSource::WildLayer })
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn inv_pow(p: u64, m: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(p).pow(m))
}

/// `(1 + α/E)(1 − p^{-m})` with `E = base_e·e`, `α = ⌊E/(p−1)⌋ + 1`.
pub fn moon_bound(p: u64, e: u64, m: u32, base_e: u64) -> Result<DifferentBound> {
    if m == 0 {
        return Err(Error::domain("wild exponent m must be at least 1; use the tame layer"));
    }
    if e == 0 || base_e == 0 || p < 2 {
        return Err(Error::domain("ramification indices must be positive"));
    }
    let big_e = (base_e * e) as i64;
    let alpha = big_e / (p as i64 - 1) + 1;
    let c = (BigRational::one() + q(alpha, big_e)) * (BigRational::one() - inv_pow(p, m));
    Ok(DifferentBound { c, source: BoundSource::WildLayer })
}

/// `(e − 1)/(base_e·e)` in the normalisation `v(p) = 1`.
pub fn tame_different(e: u64, base_e: u64) -> Result<DifferentBound> {
    if e == 0 || base_e == 0 {
        return Err(Error::domain("ramification indices must be positive"));
    }
    Ok(DifferentBound {
        c: q(e as i64 - 1, (base_e * e) as i64),
        source: BoundSource::TameLayer,
    })
}

/// 2 inert in the base: `3 − 2^{1−m} − 1/(e·2^m)`.
pub fn corollary1_bound(e: u64, m: u32) -> Result<DifferentBound> {
    if e.is_multiple_of(2) {
        return Err(Error::domain(format!("tame index {e} must be odd")));
    }
    if m == 0 {
        return Err(Error::domain("m must be at least 1"));
    }
    let c = q(3, 1) - inv_pow(2, m - 1) - inv_pow(2, m) / BigInt::from(e);
    Ok(DifferentBound { c, source: BoundSource::InertTwo })
}

/// 2 ramified in the base: `9/4 − 2^{1−m}`.
pub fn lemma2_bound(m: u32) -> Result<DifferentBound> {
    if m == 0 {
        return Err(Error::domain("m must be at least 1"));
    }
    Ok(DifferentBound {
        c: q(9, 4) - inv_pow(2, m - 1),
        source: BoundSource::RamifiedTwo,
    })
}

/// 3 ramified in the base: `2 − 1/(2·3^{m−1}) − 1/(2e·3^m)`.
pub fn prop3_bound(e: u64, m: u32) -> Result<DifferentBound> {
    if e == 0 || e.is_multiple_of(3) {
        return Err(Error::domain(format!("tame index {e} must be prime to 3")));
    }
    if m == 0 {
        return Err(Error::domain("m must be at least 1"));
    }
    let c = q(2, 1) - inv_pow(3, m - 1) / BigInt::from(2) - inv_pow(3, m) / BigInt::from(2 * e);
    Ok(DifferentBound { c, source: BoundSource::RamifiedThree })
}

/// Upper bound for `log|d_L|` when `[L:K] = n` and the relative different
/// divides `(p)^c`: `n·log|d_K| + 2cn·log p` (the norm of `p` from a
/// quadratic field is `p²`).
pub fn global_disc_bound(k_disc: &BigInt, n: u64, c: &BigRational, p: u64, prec: u32) -> Result<Interval> {
    if n == 0 {
        return Err(Error::domain("degree must be positive"));
    }
    if k_disc.is_zero() || c.is_negative() {
        return Err(Error::domain("need a nonzero discriminant and c ≥ 0"));
    }
    let n_i = Interval::from_int(n as i64, prec);
    let log_dk = Interval::from_rational(&BigRational::from_integer(k_disc.abs()), prec).ln()?;
    let log_p = Interval::from_int(p as i64, prec).ln()?;
    let cc = Interval::from_rational(c, prec);
    Ok(n_i.mul(&log_dk).add(&cc.mul(&log_p).mul(&n_i).mul_int(2)))
}

/// Tame variant: the relative discriminant divides `𝔭^n`, so
/// `log|d_L| ≤ n·log|d_K| + n·log N𝔭`.
pub fn tame_global_disc_bound(k_disc: &BigInt, n: u64, norm_p: u64, prec: u32) -> Result<Interval> {
    let n_i = Interval::from_int(n as i64, prec);
    let log_dk = Interval::from_rational(&BigRational::from_integer(k_disc.abs()), prec).ln()?;
    let log_np = Interval::from_int(norm_p as i64, prec).ln()?;
    Ok(n_i.mul(&log_dk.add(&log_np)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(moon_bound(2, 1, 1, 1).unwrap().c, q(3, 2));
        assert_eq!(moon_bound(3, 1, 1, 2).unwrap().c, q(4, 3));
        assert_eq!(tame_different(3, 2).unwrap().c, q(1, 3));
        assert_eq!(corollary1_bound(3, 2).unwrap().c, q(29, 12));
        assert_eq!(lemma2_bound(2).unwrap().c, q(7, 4));
        assert_eq!(prop3_bound(2, 1).unwrap().c, q(17, 12));
        assert!(moon_bound(2, 1, 0, 1).is_err());
        assert!(corollary1_bound(2, 1).is_err());
        assert!(prop3_bound(3, 1).is_err());
    }

    #[test]
    fn wild_layer_tends_to_three() {
        let c = moon_bound(2, 1, 200, 1).unwrap().c;
        assert!(q(3, 1) - c < inv_pow(2, 190));
    }

    #[test]
    fn global_bound_substitution() {
        let v = global_disc_bound(&BigInt::from(8), 2, &q(5, 4), 2, 100).unwrap();
        let expect = 2.0 * 8f64.ln() + 5.0 * 2f64.ln();
        assert!((v.mid_f64() - expect).abs() < 1e-12);
    }
}
