//! Exact elements `x + y·ω` of a quadratic field with rational coordinates.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::integer::{exact_sqrt, valuation};
use crate::error::{Error, Result};
use crate::quadratic::{QuadInteger, QuadraticField, SplitKind};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadElement {
    pub x: BigRational,
    pub y: BigRational,
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

impl QuadElement {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        QuadElement { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(rat(x), rat(y))
    }

    pub fn rational(x: BigRational) -> Self {
        Self::new(x, BigRational::zero())
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.y.is_zero()
    }

    /// `(1, ω)` is an integral basis, so integrality is coordinatewise.
    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.x, -&self.y)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        Self::new(&self.x * k, &self.y * k)
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&rat(k))
    }

    pub fn mul(&self, o: &Self, k: &QuadraticField) -> Self {
        let (t, n) = (rat(k.omega_trace()), rat(k.omega_norm()));
        let yy = &self.y * &o.y;
        Self::new(&self.x * &o.x - &n * &yy, &self.x * &o.y + &self.y * &o.x + &t * &yy)
    }

    pub fn square(&self, k: &QuadraticField) -> Self {
        self.mul(self, k)
    }

    pub fn pow(&self, e: u32, k: &QuadraticField) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self, k))
    }

    pub fn conj(&self, k: &QuadraticField) -> Self {
        Self::new(&self.x + &self.y * rat(k.omega_trace()), -&self.y)
    }

    pub fn norm(&self, k: &QuadraticField) -> BigRational {
        self.mul(&self.conj(k), k).x
    }

    pub fn trace(&self, k: &QuadraticField) -> BigRational {
        rat(2) * &self.x + &self.y * rat(k.omega_trace())
    }

    pub fn inv(&self, k: &QuadraticField) -> Result<Self> {
        let n = self.norm(k);
        if n.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        Ok(self.conj(k).scale(&n.recip()))
    }

    pub fn div(&self, o: &Self, k: &QuadraticField) -> Result<Self> {
        Ok(self.mul(&o.inv(k)?, k))
    }

    /// `(u, v)` with `self = u + v·√D`.
    pub fn surd_coords(&self, k: &QuadraticField) -> (BigRational, BigRational) {
        let half = BigRational::new(1.into(), 2.into());
        (&self.x + &self.y * rat(k.omega_trace()) * &half, &self.y * &half)
    }

    pub fn from_surd(u: &BigRational, v: &BigRational, k: &QuadraticField) -> Self {
        let y = v * rat(2);
        Self::new(u - &y * rat(k.omega_trace()) / rat(2), y)
    }

    /// A square root in `K`, if one exists.
    pub fn sqrt(&self, k: &QuadraticField) -> Option<Self> {
        let (u, v) = self.surd_coords(k);
        let disc = rat(k.disc());
        if v.is_zero() {
            if let Some(s) = rational_sqrt(&u) {
                return Some(Self::from_surd(&s, &BigRational::zero(), k));
            }
            let t = rational_sqrt(&(&u / &disc))?;
            return Some(Self::from_surd(&BigRational::zero(), &t, k));
        }
        // (s + t√D)^2 = u + v√D: s^2 + D t^2 = u, 2st = v
        let n = rational_sqrt(&(&u * &u - &disc * &v * &v))?;
        for cand in [(&u + &n) / rat(2), (&u - &n) / rat(2)] {
            if let Some(s) = rational_sqrt(&cand) {
                if s.is_zero() {
                    continue;
                }
                let t = &v / (rat(2) * &s);
                let r = Self::from_surd(&s, &t, k);
                if &r.square(k) == self {
                    return Some(r);
                }
            }
        }
        None
    }

    pub fn is_square(&self, k: &QuadraticField) -> bool {
        self.is_zero() || self.sqrt(k).is_some()
    }

    /// Least common denominator of the coordinates.
    pub fn denominator(&self) -> BigInt {
        self.x.denom().lcm(self.y.denom())
    }

    pub fn to_quad_integer(&self) -> Option<QuadInteger> {
        self.is_integral().then(|| QuadInteger::new(self.x.to_integer(), self.y.to_integer()))
    }

    pub fn format(&self, k: &QuadraticField) -> String {
        let w = if k.disc().rem_euclid(4) == 1 { "ω".to_string() } else { format!("√{}", k.d()) };
        match (self.x.is_zero(), self.y.is_zero()) {
            (_, true) => self.x.to_string(),
            (true, false) => format!("{}{w}", coeff(&self.y)),
            (false, false) => {
                let sign = if self.y.is_negative() { "-" } else { "+" };
                format!("{} {sign} {}{w}", self.x, coeff(&self.y.abs()))
            }
        }
    }
}

fn coeff(c: &BigRational) -> String {
    if c.is_one() {
        String::new()
    } else if -c == BigRational::one() {
        "-".into()
    } else {
        format!("{c}·")
    }
}

impl From<&QuadInteger> for QuadElement {
    fn from(q: &QuadInteger) -> Self {
        QuadElement::new(BigRational::from_integer(q.a.clone()), BigRational::from_integer(q.b.clone()))
    }
}

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.x, self.y)
    }
}

impl Serialize for QuadElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq([self.x.to_string(), self.y.to_string()])
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Coord {
    Int(i64),
    Str(String),
}

impl Coord {
    fn to_rational(&self) -> std::result::Result<BigRational, String> {
        match self {
            Coord::Int(i) => Ok(rat(*i)),
            Coord::Str(s) => s.trim().parse::<BigRational>().map_err(|_| format!("bad rational {s:?}")),
        }
    }
}

impl<'de> Deserialize<'de> for QuadElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [a, b] = <[Coord; 2]>::deserialize(d)?;
        let x = a.to_rational().map_err(serde::de::Error::custom)?;
        let y = b.to_rational().map_err(serde::de::Error::custom)?;
        Ok(QuadElement::new(x, y))
    }
}

pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    Some(BigRational::new(exact_sqrt(q.numer())?, exact_sqrt(q.denom())?))
}

/// A prime ideal of `O_K` above an odd or even rational prime.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeIdeal {
    pub p: u64,
    pub kind: SplitKind,
    pub e: u32,
    pub f: u32,
    /// For `e·f = 1`: the root `ρ` of the minimal polynomial of `ω` with
    /// `𝔭 = (p, ω − ρ)`.
    pub root: Option<u64>,
}

impl PrimeIdeal {
    pub fn label(&self) -> String {
        match (self.kind, self.root) {
            (SplitKind::Split, Some(r)) => format!("({}, ω - {r})", self.p),
            (SplitKind::Ramified, _) => format!("ramified over {}", self.p),
            _ => format!("({})", self.p),
        }
    }

    pub fn norm(&self) -> u64 {
        self.p.pow(self.f)
    }

    /// `v_𝔭` of an algebraic integer.
    fn valuation_integral(&self, a: &BigInt, b: &BigInt, k: &QuadraticField) -> u32 {
        let pb = BigInt::from(self.p);
        match self.kind {
            SplitKind::Inert => valuation(&a.gcd(b), &pb),
            SplitKind::Ramified => {
                let n = a * a + a * b * k.omega_trace() + b * b * k.omega_norm();
                valuation(&n, &pb)
            }
            SplitKind::Split => {
                let n = a * a + a * b * k.omega_trace() + b * b * k.omega_norm();
                let bound = valuation(&n, &pb);
                // Hensel-lift ρ and test a + bρ_j ≡ 0 mod p^j
                let (t, nn) = (BigInt::from(k.omega_trace()), BigInt::from(k.omega_norm()));
                let mut rho = BigInt::from(self.root.unwrap_or(0));
                let mut modulus = pb.clone();
                let mut v = 0;
                for j in 1..=bound {
                    if j > 1 {
                        modulus = &modulus * &pb;
                        let fval = &rho * &rho - &t * &rho + &nn;
                        let fder = BigInt::from(2) * &rho - &t;
                        let inv = fder.modpow(&(&modulus - &modulus / &pb - 1), &modulus);
                        rho = (&rho - fval * inv).mod_floor(&modulus);
                    }
                    if (a + b * &rho).mod_floor(&modulus).is_zero() {
                        v = j;
                    } else {
                        break;
                    }
                }
                v
            }
        }
    }

    /// `v_𝔭(z)`; `None` for zero.
    pub fn valuation(&self, z: &QuadElement, k: &QuadraticField) -> Option<i64> {
        if z.is_zero() {
            return None;
        }
        let den = z.denominator();
        let a = (&z.x * BigRational::from_integer(den.clone())).to_integer();
        let b = (&z.y * BigRational::from_integer(den.clone())).to_integer();
        let vnum = self.valuation_integral(&a, &b, k) as i64;
        let vden = self.e as i64 * valuation(&den, &BigInt::from(self.p)) as i64;
        Some(vnum - vden)
    }

    /// An element of valuation exactly 1 at this prime.
    pub fn uniformizer(&self, k: &QuadraticField) -> QuadElement {
        if self.kind != SplitKind::Ramified {
            return QuadElement::from_ints(self.p as i64, 0);
        }
        let r = self.root.unwrap_or(0) as i64;
        (0..=self.p as i64)
            .map(|j| QuadElement::from_ints(-r + j * self.p as i64, 1))
            .find(|u| self.valuation(u, k) == Some(1))
            .expect("ramified prime has a uniformizer of the form ω - ρ")
    }
}

/// The primes of `O_K` above `p`.
pub fn primes_above(k: &QuadraticField, p: u64) -> Vec<PrimeIdeal> {
    let s = k.splitting(p);
    let (t, n) = (k.omega_trace(), k.omega_norm());
    let roots: Vec<u64> = (0..p)
        .filter(|&r| {
            let r = r as i128;
            (r * r - t as i128 * r + n as i128).rem_euclid(p as i128) == 0
        })
        .collect();
    match s.kind {
        SplitKind::Inert => vec![PrimeIdeal { p, kind: s.kind, e: 1, f: 2, root: None }],
        SplitKind::Ramified => vec![PrimeIdeal { p, kind: s.kind, e: 2, f: 1, root: roots.first().copied() }],
        SplitKind::Split => roots
            .into_iter()
            .map(|r| PrimeIdeal { p, kind: s.kind, e: 1, f: 1, root: Some(r) })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(d: i64) -> QuadraticField {
        QuadraticField::new(d).unwrap()
    }

    #[test]
    fn square_roots() {
        let q5 = k(5);
        assert!(!QuadElement::from_ints(-3, 0).is_square(&q5));
        assert!(QuadElement::from_ints(5, 0).is_square(&q5));
        let a = QuadElement::from_ints(3, -7);
        let s = a.square(&q5).sqrt(&q5).unwrap();
        assert_eq!(s.square(&q5), a.square(&q5));
        let qi = k(-1);
        assert!(QuadElement::from_ints(-1, 0).is_square(&qi));
        assert!(QuadElement::from_ints(0, 2).is_square(&qi));
        assert!(!QuadElement::from_ints(0, 1).is_square(&qi));
    }

    #[test]
    fn valuations() {
        let qi = k(-1);
        let p5 = primes_above(&qi, 5);
        assert_eq!(p5.len(), 2);
        let z = QuadElement::from_ints(2, 1);
        let vs: Vec<_> = p5.iter().map(|p| p.valuation(&z.pow(3, &qi), &qi).unwrap()).collect();
        assert_eq!(vs.iter().sum::<i64>(), 3);
        assert!(vs.contains(&3));
        let p3 = &primes_above(&k(-3), 3)[0];
        assert_eq!(p3.valuation(&QuadElement::from_ints(3, 0), &k(-3)), Some(2));
        assert_eq!(p3.valuation(&p3.uniformizer(&k(-3)), &k(-3)), Some(1));
        let half = QuadElement::rational(BigRational::new(1.into(), 9.into()));
        assert_eq!(p3.valuation(&half, &k(-3)), Some(-4));
    }
}
