//! Certified real intervals with fixed-point big-integer endpoints.
//!
//! An [`Interval`] at precision `P` is `[lo / 2^P, hi / 2^P]`. Every operation
//! rounds outward, so the true value of any expression built from exact inputs
//! stays inside the enclosure.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{Integer as _};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const EULER_GAMMA: &str = "0.577215664901532860606512090082402431042159335939923598805767234884867726777664670936947063291746749514631447249807082481";

/// Guard bits used by the transcendental kernels.
const GUARD: u32 = 64;

/// Largest supported precision in bits; bounded by the stored Euler constant.
pub const MAX_BITS: u32 = 380;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

fn shr_floor(x: &BigInt, s: u32) -> BigInt {
    // `>>` on BigInt rounds toward negative infinity
    x >> s
}

fn shr_ceil(x: &BigInt, s: u32) -> BigInt {
    -((-x) >> s)
}

fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// Working bits for a requested number of decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 24
}

impl Interval {
    fn new(lo: BigInt, hi: BigInt, prec: u32) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn from_int(n: i64, prec: u32) -> Self {
        let v = BigInt::from(n) << prec;
        Self::new(v.clone(), v, prec)
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        let num = r.numer() << prec;
        Self::new(div_floor(&num, r.denom()), div_ceil(&num, r.denom()), prec)
    }

    pub fn from_ratio(n: i64, d: i64, prec: u32) -> Self {
        Self::from_rational(&BigRational::new(n.into(), d.into()), prec)
    }

    /// Enclose a decimal literal exactly, e.g. `"6.860404"`.
    pub fn from_decimal(s: &str, prec: u32) -> Result<Self> {
        Ok(Self::from_rational(&parse_decimal(s)?, prec))
    }

    pub fn lower(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.prec)
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.prec)
    }

    pub fn width(&self) -> BigRational {
        self.upper() - self.lower()
    }

    pub fn mid_f64(&self) -> f64 {
        let m = BigRational::new(&self.lo + &self.hi, BigInt::one() << (self.prec + 1));
        m.to_f64().unwrap_or(f64::NAN)
    }

    pub fn contains(&self, r: &BigRational) -> bool {
        &self.lower() <= r && r <= &self.upper()
    }

    /// True when every point of `self` is below every point of `other`.
    pub fn certainly_lt(&self, other: &Self) -> bool {
        self.check(other);
        self.hi < other.lo
    }

    pub fn certainly_gt(&self, other: &Self) -> bool {
        other.certainly_lt(self)
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.prec, other.prec, "interval precision mismatch");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        Self::new(&self.lo + &o.lo, &self.hi + &o.hi, self.prec)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.check(o);
        Self::new(&self.lo - &o.hi, &self.hi - &o.lo, self.prec)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.hi, -&self.lo, self.prec)
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap();
        let hi = c.iter().max().unwrap();
        Self::new(shr_floor(lo, self.prec), shr_ceil(hi, self.prec), self.prec)
    }

    pub fn mul_int(&self, k: i64) -> Self {
        let (a, b) = (&self.lo * k, &self.hi * k);
        if k >= 0 {
            Self::new(a, b, self.prec)
        } else {
            Self::new(b, a, self.prec)
        }
    }

    pub fn recip(&self) -> Result<Self> {
        if !self.lo.is_positive() && !self.hi.is_negative() {
            return Err(Error::domain("reciprocal of an interval containing zero"));
        }
        let one = BigInt::one() << (2 * self.prec);
        Ok(Self::new(div_floor(&one, &self.hi), div_ceil(&one, &self.lo), self.prec))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn square(&self) -> Self {
        let a = self.mul(self);
        if self.lo.is_negative() && self.hi.is_positive() {
            Self::new(BigInt::zero(), a.hi, self.prec)
        } else {
            a
        }
    }

    /// Real cube root (the interval must be nonnegative).
    pub fn cbrt(&self) -> Result<Self> {
        if self.lo.is_negative() {
            return Err(Error::domain("cube root of a negative interval"));
        }
        let s = 2 * self.prec;
        let lo = (&self.lo << s).cbrt();
        let hi_arg = &self.hi << s;
        let mut hi = hi_arg.cbrt();
        if &hi * &hi * &hi < hi_arg {
            hi += 1;
        }
        Ok(Self::new(lo, hi, self.prec))
    }

    /// Natural logarithm (the interval must be positive).
    pub fn ln(&self) -> Result<Self> {
        if !self.lo.is_positive() {
            return Err(Error::domain("logarithm of a nonpositive interval"));
        }
        let (a, ea) = ln_point(&self.lo, self.prec);
        let (b, eb) = ln_point(&self.hi, self.prec);
        Ok(Self::new(
            shr_floor(&(a - ea), GUARD),
            shr_ceil(&(b + eb), GUARD),
            self.prec,
        ))
    }

    pub fn exp(&self) -> Self {
        let lo = exp_point(&self.lo, self.prec).0;
        let hi = exp_point(&self.hi, self.prec).1;
        Self::new(lo, hi, self.prec)
    }

    pub fn pi(prec: u32) -> Self {
        let w = prec + GUARD;
        let (a, ea) = atan_inv(5, w);
        let (b, eb) = atan_inv(239, w);
        let v = a * 16 - b * 4;
        let e = BigInt::from(16 * ea + 4 * eb);
        Self::new(shr_floor(&(&v - &e), GUARD), shr_ceil(&(&v + &e), GUARD), prec)
    }

    pub fn ln2(prec: u32) -> Self {
        let (v, e) = ln2_fixed(prec + GUARD);
        Self::new(shr_floor(&(&v - &e), GUARD), shr_ceil(&(&v + &e), GUARD), prec)
    }

    /// Euler–Mascheroni constant from a stored 117-digit expansion.
    pub fn euler_gamma(prec: u32) -> Result<Self> {
        if prec > MAX_BITS {
            return Err(Error::Unsupported(format!(
                "precision above {MAX_BITS} bits exceeds the stored Euler constant"
            )));
        }
        let digits = EULER_GAMMA.len() as u32 - 2;
        let lo = parse_decimal(EULER_GAMMA)?;
        let hi = &lo + BigRational::new(BigInt::one(), BigInt::from(10).pow(digits));
        let a = Self::from_rational(&lo, prec);
        let b = Self::from_rational(&hi, prec);
        Ok(Self::new(a.lo, b.hi, prec))
    }

    /// Midpoint rounded to `places` decimals.
    pub fn decimal(&self, places: usize) -> String {
        let mid = BigRational::new(&self.lo + &self.hi, BigInt::one() << (self.prec + 1));
        format_rational(&mid, places)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let places = (self.prec as usize * 3 / 10).clamp(6, 40);
        write!(
            f,
            "[{}, {}]",
            format_rational(&self.lower(), places),
            format_rational(&self.upper(), places)
        )
    }
}

/// Parse a plain decimal literal (optional sign, optional fraction, optional
/// exponent) into an exact rational.
pub fn parse_decimal(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a decimal number: {s:?}"));
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(digits * ten.pow(scale as u32))
    } else {
        BigRational::new(digits, ten.pow((-scale) as u32))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// Round half away from zero to `places` decimals.
pub fn format_rational(r: &BigRational, places: usize) -> String {
    let scale = BigInt::from(10).pow(places as u32);
    let scaled = r * BigRational::from_integer(scale.clone());
    let n = scaled.abs().round().to_integer();
    let neg = r.is_negative() && !n.is_zero();
    let (i, f) = n.div_rem(&scale);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&i.to_string());
    if places > 0 {
        out.push('.');
        out.push_str(&format!("{:0>width$}", f.to_string(), width = places));
    }
    out
}

/// `atanh(a/b)·2^w` for `0 ≤ a/b ≤ 1/3`, plus an error bound in ulps.
fn atanh_fixed(a: &BigInt, b: &BigInt, w: u32) -> (BigInt, BigInt) {
    if a.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let a2 = a * a;
    let b2 = b * b;
    let mut term = (a << w) / b;
    let mut sum = term.clone();
    let mut n: u64 = 0;
    let mut k: u64 = 1;
    loop {
        term = &term * &a2 / &b2;
        if term.is_zero() {
            break;
        }
        sum += &term / (2 * k + 1);
        k += 1;
        n += 1;
    }
    (sum, BigInt::from((n + 2) * (n + 2) + 2))
}

fn ln2_fixed(w: u32) -> (BigInt, BigInt) {
    let (v, e) = atanh_fixed(&BigInt::one(), &BigInt::from(3), w);
    (v * 2, e * 2)
}

/// `ln(m / 2^p)·2^(p+GUARD)` for `m > 0`, with error bound.
fn ln_point(m: &BigInt, p: u32) -> (BigInt, BigInt) {
    let w = p + GUARD;
    // m = 2^(p+k) · y, y in [1, 2)
    let k = m.bits() as i64 - 1 - p as i64;
    let base = BigInt::one() << (m.bits() - 1);
    let (t, et) = atanh_fixed(&(m - &base), &(m + &base), w);
    let (l2, el2) = ln2_fixed(w);
    let v = t * 2 + &l2 * k;
    let e = et * 2 + el2 * k.unsigned_abs();
    (v, e)
}

/// Returns `(lower, upper)` bounds for `exp(m / 2^p)` at precision `p`.
fn exp_point(m: &BigInt, p: u32) -> (BigInt, BigInt) {
    if m.is_negative() {
        let (lo, hi) = exp_point(&-m, p);
        let one = BigInt::one() << (2 * p);
        return (div_floor(&one, &hi), div_ceil(&one, &lo));
    }
    let s = (m.bits() as i64 - p as i64 + 10).max(0) as u32;
    let w = p + GUARD + s;
    let one = BigInt::one() << w;
    // r = m / 2^(p+s) in fixed point, below 2^-10
    let r = if w >= p + s { m << (w - p - s) } else { m >> (p + s - w) };
    let mut term = one.clone();
    let mut sum = one.clone();
    let mut k: u64 = 1;
    loop {
        term = ((&term * &r) >> w) / k;
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
    }
    let mut err0 = BigInt::from(k + 3);
    let mut y = sum;
    for _ in 0..s {
        // (y+e)^2 = y^2 + 2ye + e^2, rounding adds one ulp
        err0 = ((&y * &err0 * 2) >> w) + &err0 * &err0 / &one + 2;
        y = (&y * &y) >> w;
    }
    let lo = shr_floor(&(&y - &err0), GUARD + s);
    let hi = shr_ceil(&(&y + &err0), GUARD + s);
    (lo, hi)
}

/// `atan(1/n)·2^w` with error bound.
fn atan_inv(n: u64, w: u32) -> (BigInt, u64) {
    let n2 = BigInt::from(n * n);
    let mut power = (BigInt::one() << w) / n;
    let mut sum = power.clone();
    let mut k: u64 = 1;
    loop {
        power /= &n2;
        if power.is_zero() {
            break;
        }
        let t = &power / (2 * k + 1);
        if k % 2 == 1 {
            sum -= t;
        } else {
            sum += t;
        }
        k += 1;
    }
    (sum, 2 * k + 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 200;

    fn close(i: &Interval, v: f64) {
        assert!((i.mid_f64() - v).abs() < 1e-14, "{} vs {v}", i.mid_f64());
        assert!(i.width() < BigRational::new(1.into(), BigInt::one() << 150));
    }

    #[test]
    fn constants() {
        close(&Interval::pi(P), std::f64::consts::PI);
        close(&Interval::ln2(P), std::f64::consts::LN_2);
        close(&Interval::euler_gamma(P).unwrap(), 0.5772156649015329);
        assert_eq!(
            Interval::pi(P).decimal(30),
            "3.141592653589793238462643383280"
        );
    }

    #[test]
    fn ln_exp_roundtrip() {
        for v in ["0.001", "0.5", "1", "2", "3.2152556", "24.90966", "1000000"] {
            let x = Interval::from_decimal(v, P).unwrap();
            let y = x.ln().unwrap().exp();
            assert!(y.contains(&parse_decimal(v).unwrap()), "{v}: {y}");
            close(&x.ln().unwrap(), v.parse::<f64>().unwrap().ln());
        }
        close(&Interval::from_int(-5, P).exp(), (-5f64).exp());
    }

    #[test]
    fn cube_roots() {
        let x = Interval::from_int(27, P).cbrt().unwrap();
        assert!(x.contains(&BigRational::from_integer(3.into())));
        close(&Interval::from_int(2, P).cbrt().unwrap(), 2f64.cbrt());
        assert!(Interval::from_int(-1, P).cbrt().is_err());
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(
            parse_decimal("-1.25e1").unwrap(),
            BigRational::from_integer((-125 / 10).into()) - BigRational::new(1.into(), 2.into())
        );
        assert!(parse_decimal("1.2.3").is_err());
        assert_eq!(format_rational(&parse_decimal("2.0049").unwrap(), 2), "2.00");
        assert_eq!(format_rational(&parse_decimal("-0.001").unwrap(), 2), "0.00");
    }

    #[test]
    fn arithmetic_encloses() {
        let a = Interval::from_ratio(1, 3, 64);
        let b = Interval::from_ratio(-2, 7, 64);
        let exact = BigRational::new(1.into(), 3.into()) * BigRational::new((-2).into(), 7.into());
        assert!(a.mul(&b).contains(&exact));
        let q = a.div(&b).unwrap();
        assert!(q.contains(&(BigRational::new(1.into(), 3.into()) / BigRational::new((-2).into(), 7.into()))));
        assert!(Interval::from_int(0, 64).recip().is_err());
    }
}
