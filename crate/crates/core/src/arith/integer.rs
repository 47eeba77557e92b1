//! Integer helpers: Kronecker symbols, primality, trial division plus
//! Pollard–Brent factorisation, valuations and square classes.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type Integer = BigInt;

/// Primes up to and including `limit` (sieve of Eratosthenes).
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &p)| p.then_some(k as u64))
        .collect()
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    is_probable_prime(&BigInt::from(n))
}

/// Exponent of `p` in `n` (n ≠ 0).
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    debug_assert!(!n.is_zero());
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

pub fn valuation_i64(n: i64, p: i64) -> u32 {
    debug_assert!(n != 0);
    let mut v = 0;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        v += 1;
    }
    v
}

const TAB2: [i8; 8] = [0, 1, 0, -1, 0, -1, 0, 1];

fn low_bits(a: &BigInt, modulus: u32) -> usize {
    a.mod_floor(&BigInt::from(modulus)).to_usize().unwrap()
}

/// The Kronecker symbol `(a | n)`.
pub fn kronecker(a: &BigInt, n: &BigInt) -> i8 {
    let mut a = a.clone();
    let mut b = n.clone();
    if b.is_zero() {
        return if a.abs().is_one() { 1 } else { 0 };
    }
    if a.is_even() && b.is_even() {
        return 0;
    }
    let mut v = 0u32;
    while b.is_even() {
        b >>= 1;
        v += 1;
    }
    let mut k: i8 = if v.is_multiple_of(2) { 1 } else { TAB2[low_bits(&a, 8)] };
    if b.is_negative() {
        b = -b;
        if a.is_negative() {
            k = -k;
        }
    }
    loop {
        if a.is_zero() {
            return if b.is_one() { k } else { 0 };
        }
        let mut v = 0u32;
        while a.is_even() {
            a >>= 1;
            v += 1;
        }
        if v % 2 == 1 {
            k *= TAB2[low_bits(&b, 8)];
        }
        if low_bits(&a, 4) == 3 && low_bits(&b, 4) == 3 {
            k = -k;
        }
        let r = a.abs();
        a = b.mod_floor(&r);
        b = r;
    }
}

pub fn kronecker_i64(a: i64, n: i64) -> i8 {
    kronecker(&BigInt::from(a), &BigInt::from(n))
}

/// Miller–Rabin. Deterministic below 3.3·10^24, otherwise probabilistic with
/// a fixed extended base set.
pub fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    const BASES: [u32; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    for &b in &BASES {
        let bb = BigInt::from(b);
        if *n == bb {
            return true;
        }
        if n.is_multiple_of(&bb) {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let mut d = n_minus_1.clone();
    let mut s = 0;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &b in &BASES {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A complete factorisation `sign · ∏ p^e` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeFactorization {
    pub sign: i8,
    #[serde(with = "super::serde_big::pairs")]
    pub factors: Vec<(BigInt, u32)>,
}

impl PrimeFactorization {
    pub fn product(&self) -> BigInt {
        let mut acc = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            acc *= p.pow(*e);
        }
        acc
    }

    pub fn primes(&self) -> Vec<BigInt> {
        self.factors.iter().map(|(p, _)| p.clone()).collect()
    }

    fn insert(&mut self, p: BigInt, e: u32) {
        match self.factors.binary_search_by(|(q, _)| q.cmp(&p)) {
            Ok(i) => self.factors[i].1 += e,
            Err(i) => self.factors.insert(i, (p, e)),
        }
    }
}

impl std::fmt::Display for PrimeFactorization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.sign < 0 {
            parts.push("-1".to_string());
        }
        for (p, e) in &self.factors {
            if *e == 1 {
                parts.push(p.to_string());
            } else {
                parts.push(format!("{p}^{e}"));
            }
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        write!(f, "{}", parts.join("·"))
    }
}

/// Outcome of [`factor_integer`]. An incomplete factorisation is a normal
/// result: it carries every prime found plus the unfactored cofactor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Factorization {
    Complete(PrimeFactorization),
    Incomplete {
        known: PrimeFactorization,
        #[serde(with = "super::serde_big")]
        cofactor: BigInt,
    },
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        matches!(self, Factorization::Complete(_))
    }

    pub fn known(&self) -> &PrimeFactorization {
        match self {
            Factorization::Complete(f) => f,
            Factorization::Incomplete { known, .. } => known,
        }
    }

    pub fn complete(self) -> Option<PrimeFactorization> {
        match self {
            Factorization::Complete(f) => Some(f),
            Factorization::Incomplete { .. } => None,
        }
    }
}

/// Work limits for [`factor_integer`].
#[derive(Debug, Clone, Copy)]
pub struct FactorBudget {
    pub trial_bound: u64,
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_bound: 1_000_000,
            rho_iterations: 200_000,
        }
    }
}

fn trial_primes(bound: u64) -> &'static [u64] {
    use std::sync::OnceLock;
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    let all = PRIMES.get_or_init(|| primes_up_to(1_000_000));
    let end = all.partition_point(|&p| p <= bound);
    &all[..end]
}

fn pollard_brent(n: &BigInt, seed: u64, max_iter: u64) -> Option<BigInt> {
    let one = BigInt::one();
    let c = BigInt::from(seed);
    let f = |x: &BigInt| (x * x + &c) % n;
    let mut y = BigInt::from(2 + seed);
    let mut r: u64 = 1;
    let mut q = BigInt::one();
    let m: u64 = 128;
    let mut iters = 0u64;
    let mut x;
    let mut ys;
    loop {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        loop {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                q = (q * (&x - &y).abs()) % n;
            }
            let g = q.gcd(n);
            k += m;
            iters += m;
            if !g.is_one() {
                if &g == n {
                    // backtrack
                    loop {
                        ys = f(&ys);
                        let g = (&x - &ys).abs().gcd(n);
                        if !g.is_one() {
                            return if &g == n { None } else { Some(g) };
                        }
                    }
                }
                return Some(g);
            }
            if k >= r || iters > max_iter {
                break;
            }
        }
        if iters > max_iter {
            return None;
        }
        r *= 2;
        if q.is_zero() {
            q = one.clone();
        }
    }
}

/// Factor a nonzero integer by trial division followed by Pollard–Brent rho.
pub fn factor_integer(n: &BigInt, budget: FactorBudget) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::domain("cannot factor zero"));
    }
    let mut out = PrimeFactorization {
        sign: if n.is_negative() { -1 } else { 1 },
        factors: Vec::new(),
    };
    let mut m = n.abs();
    for &p in trial_primes(budget.trial_bound) {
        let pb = BigInt::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut e = 0;
        loop {
            let (q, r) = m.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            m = q;
            e += 1;
        }
        if e > 0 {
            out.insert(pb, e);
        }
    }
    if m.is_one() {
        return Ok(Factorization::Complete(out));
    }
    let mut stack = vec![m];
    let mut stuck = BigInt::one();
    while let Some(c) = stack.pop() {
        if c.is_one() {
            continue;
        }
        if is_probable_prime(&c) {
            out.insert(c, 1);
            continue;
        }
        if let Some(r) = perfect_power_root(&c) {
            let (root, k) = r;
            for _ in 0..k {
                stack.push(root.clone());
            }
            continue;
        }
        let mut split = None;
        for seed in 1..=8u64 {
            if let Some(g) = pollard_brent(&c, seed, budget.rho_iterations) {
                split = Some(g);
                break;
            }
        }
        match split {
            Some(g) => {
                let h = &c / &g;
                stack.push(g);
                stack.push(h);
            }
            None => stuck *= c,
        }
    }
    if stuck.is_one() {
        Ok(Factorization::Complete(out))
    } else {
        Ok(Factorization::Incomplete {
            known: out,
            cofactor: stuck,
        })
    }
}

fn perfect_power_root(n: &BigInt) -> Option<(BigInt, u32)> {
    let bits = n.bits() as u32;
    for k in 2..=bits.max(2) {
        let r = n.nth_root(k);
        if r <= BigInt::one() {
            break;
        }
        if r.pow(k) == *n {
            return Some((r, k));
        }
    }
    None
}

/// Squarefree kernel up to squares: the unique squarefree `s` with `n = s·t²`.
/// Requires a complete factorisation.
pub fn squarefree_core(n: &BigInt, budget: FactorBudget) -> Result<BigInt> {
    let f = factor_integer(n, budget)?
        .complete()
        .ok_or_else(|| Error::Budget(format!("could not fully factor {n}")))?;
    let mut s = BigInt::from(f.sign);
    for (p, e) in f.factors {
        if e % 2 == 1 {
            s *= p;
        }
    }
    Ok(s)
}

pub fn is_squarefree_i64(n: i64) -> bool {
    if n == 0 {
        return false;
    }
    let m = n.unsigned_abs();
    let mut p = 2u64;
    let mut rest = m;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            rest /= p;
            if rest.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Exact square root of a nonnegative integer, if it is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Whether the rational integer `x` is a square in the `p`-adic numbers.
pub fn is_padic_square(x: &BigInt, p: u64) -> bool {
    if x.is_zero() {
        return true;
    }
    let pb = BigInt::from(p);
    let v = valuation(x, &pb);
    if v % 2 == 1 {
        return false;
    }
    let u = x / pb.pow(v);
    if p == 2 {
        u.mod_floor(&BigInt::from(8)).is_one()
    } else {
        let r = u.mod_floor(&pb);
        r.modpow(&BigInt::from((p - 1) / 2), &pb).is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn legendre_brute(a: i64, p: i64) -> i8 {
        let a = a.rem_euclid(p);
        if a == 0 {
            return 0;
        }
        if (1..p).any(|x| (x * x) % p == a) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker_i64(5, 2), -1);
        assert_eq!(kronecker_i64(-4, 3), -1);
        assert_eq!(kronecker_i64(-3, 3), 0);
        assert_eq!(kronecker_i64(24, 2), 0);
        assert_eq!(kronecker_i64(1, 2), 1);
        assert_eq!(kronecker_i64(-3, 2), -1);
        assert_eq!(kronecker_i64(-7, 2), 1);
    }

    #[test]
    fn kronecker_matches_legendre_for_odd_primes() {
        for p in primes_up_to(60).into_iter().skip(1) {
            for a in -40i64..40 {
                assert_eq!(kronecker_i64(a, p as i64), legendre_brute(a, p as i64), "({a}|{p})");
            }
        }
    }

    #[test]
    fn factor_examples() {
        let f = factor_integer(&b(24), FactorBudget::default()).unwrap();
        assert_eq!(f.known().to_string(), "2^3·3");
        let f = factor_integer(&b(-184), FactorBudget::default()).unwrap();
        assert_eq!(f.known().sign, -1);
        assert_eq!(f.known().factors, vec![(b(2), 3), (b(23), 1)]);
        assert!(factor_integer(&b(0), FactorBudget::default()).is_err());
    }

    #[test]
    fn factor_beyond_trial_bound_uses_rho() {
        let p = BigInt::from(1_000_003u64);
        let q = BigInt::from(998_244_353u64);
        let n = &p * &q * &p;
        let budget = FactorBudget {
            trial_bound: 1000,
            rho_iterations: 1_000_000,
        };
        let f = factor_integer(&n, budget).unwrap().complete().unwrap();
        assert_eq!(f.factors, vec![(p, 2), (q, 1)]);
    }

    #[test]
    fn incomplete_factorization_keeps_cofactor() {
        let p = BigInt::from(1_000_003u64);
        let q = BigInt::from(1_000_033u64);
        let n = &p * &q * 12;
        let budget = FactorBudget {
            trial_bound: 100,
            rho_iterations: 1,
        };
        match factor_integer(&n, budget).unwrap() {
            Factorization::Incomplete { known, cofactor } => {
                assert_eq!(&known.product() * &cofactor, n);
            }
            Factorization::Complete(_) => panic!("expected incomplete"),
        }
    }

    #[test]
    fn padic_squares() {
        assert!(is_padic_square(&b(-2), 3));
        assert!(!is_padic_square(&b(-1), 3));
        assert!(is_padic_square(&b(17), 2));
        assert!(!is_padic_square(&b(5), 2));
        assert!(is_padic_square(&b(-7 * 4), 2));
        assert!(!is_padic_square(&b(2), 2));
    }

    #[test]
    fn squarefree() {
        assert!(is_squarefree_i64(-6));
        assert!(!is_squarefree_i64(12));
        assert_eq!(squarefree_core(&b(-184), FactorBudget::default()).unwrap(), b(-46));
    }
}
