//! Quadratic fields `Q(√d)` with integral basis `(1, ω)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::integer::{is_squarefree_i64, kronecker_i64};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct QuadraticField {
    d: i64,
    disc: i64,
}

/// `a + b·ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QuadInteger {
    #[serde(with = "crate::arith::serde_big")]
    pub a: BigInt,
    #[serde(with = "crate::arith::serde_big")]
    pub b: BigInt,
}

impl QuadInteger {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInteger { a: a.into(), b: b.into() }
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitKind {
    Ramified,
    Inert,
    Split,
}

/// Decomposition of a rational prime: kind plus `(e, f, g)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Splitting {
    pub kind: SplitKind,
    pub e: u32,
    pub f: u32,
    pub g: u32,
}

impl QuadraticField {
    pub fn new(d: i64) -> Result<Self> {
        if d == 0 || d == 1 || !is_squarefree_i64(d) {
            return Err(Error::domain(format!("d = {d} must be squarefree and different from 0, 1")));
        }
        if d.unsigned_abs() > 1 << 40 {
            return Err(Error::domain("d is too large"));
        }
        let disc = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        Ok(QuadraticField { d, disc })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    pub fn is_real(&self) -> bool {
        self.d > 0
    }

    /// `(r1, r2)`.
    pub fn signature(&self) -> (u32, u32) {
        if self.is_real() {
            (2, 0)
        } else {
            (0, 1)
        }
    }

    /// `Tr ω`.
    pub fn omega_trace(&self) -> i64 {
        self.disc.rem_euclid(2)
    }

    /// `N ω`.
    pub fn omega_norm(&self) -> i64 {
        if self.disc.rem_euclid(4) == 1 {
            (1 - self.d) / 4
        } else {
            -self.d
        }
    }

    pub fn splitting(&self, p: u64) -> Splitting {
        match kronecker_i64(self.disc, p as i64) {
            0 => Splitting { kind: SplitKind::Ramified, e: 2, f: 1, g: 1 },
            -1 => Splitting { kind: SplitKind::Inert, e: 1, f: 2, g: 1 },
            _ => Splitting { kind: SplitKind::Split, e: 1, f: 1, g: 2 },
        }
    }

    pub fn mul(&self, x: &QuadInteger, y: &QuadInteger) -> QuadInteger {
        let (t, n) = (self.omega_trace(), self.omega_norm());
        let bb = &x.b * &y.b;
        QuadInteger {
            a: &x.a * &y.a - &bb * n,
            b: &x.a * &y.b + &x.b * &y.a + &bb * t,
        }
    }

    pub fn norm(&self, x: &QuadInteger) -> BigInt {
        let (t, n) = (self.omega_trace(), self.omega_norm());
        &x.a * &x.a + &x.a * &x.b * t + &x.b * &x.b * n
    }

    pub fn trace(&self, x: &QuadInteger) -> BigInt {
        &x.a * 2 + &x.b * self.omega_trace()
    }

    pub fn conj(&self, x: &QuadInteger) -> QuadInteger {
        QuadInteger { a: &x.a + &x.b * self.omega_trace(), b: -&x.b }
    }

    pub fn pow(&self, x: &QuadInteger, mut e: u64) -> QuadInteger {
        let mut acc = QuadInteger::one();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Sign of `x` under the real embedding with `√D > 0` (`second = false`)
    /// or `√D < 0` (`second = true`). Real fields only.
    pub fn real_sign(&self, x: &QuadInteger, second: bool) -> i8 {
        assert!(self.is_real(), "real embedding of an imaginary field");
        // 2x = (2a + b·Trω) + b·√D
        let u = &x.a * 2 + &x.b * self.omega_trace();
        let v = if second { -&x.b } else { x.b.clone() };
        sign_of_surd(&u, &v, self.disc)
    }

    /// Approximate value under the first real embedding.
    pub fn real_value(&self, x: &QuadInteger) -> f64 {
        use num_traits::ToPrimitive;
        let s = (self.disc as f64).sqrt();
        let omega = (self.omega_trace() as f64 + s) / 2.0;
        x.a.to_f64().unwrap_or(f64::NAN) + x.b.to_f64().unwrap_or(f64::NAN) * omega
    }

    /// Reduce the coordinates of `x` modulo `m` into `[0, m)`.
    pub fn reduce_coords(&self, x: &QuadInteger, m: i64) -> (i64, i64) {
        let mb = BigInt::from(m);
        let a = x.a.mod_floor(&mb);
        let b = x.b.mod_floor(&mb);
        (a.try_into().unwrap(), b.try_into().unwrap())
    }

    pub fn display(&self, x: &QuadInteger) -> String {
        let w = if self.disc.rem_euclid(4) == 1 {
            format!("(1+√{})/2", self.d)
        } else {
            format!("√{}", self.d)
        };
        match (x.a.is_zero(), x.b.is_zero()) {
            (_, true) => x.a.to_string(),
            (true, false) if x.b.is_one() => w,
            (true, false) => format!("{}·{w}", x.b),
            (false, false) => {
                let sign = if x.b.is_negative() { "-" } else { "+" };
                let mag = x.b.abs();
                if mag.is_one() {
                    format!("{} {sign} {w}", x.a)
                } else {
                    format!("{} {sign} {mag}·{w}", x.a)
                }
            }
        }
    }
}

/// Sign of `u + v·√D` for a nonsquare `D > 0`.
pub fn sign_of_surd(u: &BigInt, v: &BigInt, disc: i64) -> i8 {
    let su = sign(u);
    let sv = sign(v);
    if sv == 0 {
        return su;
    }
    if su == 0 || su == sv {
        return sv;
    }
    // opposite signs: compare u² with v²·D
    let lhs = u * u;
    let rhs = v * v * disc;
    if lhs > rhs {
        su
    } else {
        sv
    }
}

fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for QuadraticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(√{})", self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_field() {
        let k = QuadraticField::new(5).unwrap();
        assert_eq!((k.disc(), k.signature()), (5, (2, 0)));
        assert_eq!(QuadraticField::new(6).unwrap().disc(), 24);
        let k = QuadraticField::new(-1).unwrap();
        assert_eq!((k.disc(), k.signature()), (-4, (0, 1)));
        assert!(QuadraticField::new(12).is_err());
        assert!(QuadraticField::new(1).is_err());
    }

    #[test]
    fn splitting_types() {
        let s = |d, p| QuadraticField::new(d).unwrap().splitting(p).kind;
        assert_eq!(s(5, 2), SplitKind::Inert);
        assert_eq!(s(-3, 2), SplitKind::Inert);
        assert_eq!(s(-3, 3), SplitKind::Ramified);
        assert_eq!(s(-7, 2), SplitKind::Split);
    }

    #[test]
    fn arithmetic() {
        let k = QuadraticField::new(5).unwrap();
        let phi = QuadInteger::new(0, 1);
        assert_eq!(k.norm(&phi), BigInt::from(-1));
        // φ² = φ + 1
        assert_eq!(k.mul(&phi, &phi), QuadInteger::new(1, 1));
        assert_eq!(k.real_sign(&k.conj(&phi), false), -1);
        let x = QuadInteger::new(3, -7);
        let y = QuadInteger::new(-2, 5);
        assert_eq!(k.norm(&k.mul(&x, &y)), k.norm(&x) * k.norm(&y));
    }

    #[test]
    fn surd_signs() {
        assert_eq!(sign_of_surd(&BigInt::from(-3), &BigInt::from(1), 8), -1);
        assert_eq!(sign_of_surd(&BigInt::from(-3), &BigInt::from(2), 8), 1);
    }
}
