//! Polynomials over prime fields `F_p` with `p < 2^31`, and their factorisation
//! (squarefree decomposition, distinct-degree and Cantor–Zassenhaus
//! equal-degree splitting).

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::integer::is_prime_u64;
use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// Coefficient vector over `F_p`, low degree first, no trailing zeros.
pub type Coeffs = Vec<u64>;

/// Arithmetic context for `F_p[x]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime_u64(p) {
            return Err(Error::domain(format!("{p} is not a supported prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn trim(&self, mut a: Coeffs) -> Coeffs {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn reduce(&self, f: &IntPolynomial) -> Coeffs {
        self.trim(f.coeffs_mod(self.p))
    }

    pub fn lift(&self, a: &[u64]) -> IntPolynomial {
        IntPolynomial::new(a.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[inline]
    pub fn mul_s(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow_s(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_s(acc, a);
            }
            a = self.mul_s(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv_s(&self, a: u64) -> u64 {
        debug_assert!(!a.is_multiple_of(self.p));
        self.pow_s(a, self.p - 2)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Coeffs {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| (a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)) % self.p)
            .collect();
        self.trim(out)
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Coeffs {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| (a.get(i).unwrap_or(&0) + self.p - b.get(i).unwrap_or(&0)) % self.p)
            .collect();
        self.trim(out)
    }

    pub fn scale(&self, a: &[u64], k: u64) -> Coeffs {
        self.trim(a.iter().map(|&c| self.mul_s(c, k)).collect())
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Coeffs {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        self.trim(out)
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divrem(&self, a: &[u64], b: &[u64]) -> (Coeffs, Coeffs) {
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = a.to_vec();
        if r.len() < b.len() {
            return (Vec::new(), self.trim(r));
        }
        let db = b.len() - 1;
        let inv = self.inv_s(*b.last().unwrap());
        let mut q = vec![0u64; r.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mul_s(r[k + db], inv);
            q[k] = c;
            if c == 0 {
                continue;
            }
            for (i, &bi) in b.iter().enumerate() {
                r[k + i] = (r[k + i] + self.p - self.mul_s(c, bi)) % self.p;
            }
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> Coeffs {
        self.divrem(a, b).1
    }

    pub fn monic(&self, a: &[u64]) -> Coeffs {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv_s(lc)),
        }
    }

    pub fn gcd(&self, a: &[u64], b: &[u64]) -> Coeffs {
        let mut a = self.trim(a.to_vec());
        let mut b = self.trim(b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Extended gcd: returns `(g, s, t)` with `s·a + t·b = g`, `g` monic.
    pub fn ext_gcd(&self, a: &[u64], b: &[u64]) -> (Coeffs, Coeffs, Coeffs) {
        let (mut r0, mut r1) = (self.trim(a.to_vec()), self.trim(b.to_vec()));
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let lc = *r0.last().expect("gcd of two zero polynomials");
        let inv = self.inv_s(lc);
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(&self, a: &[u64]) -> Coeffs {
        self.trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mul_s(c, i as u64 % self.p))
                .collect(),
        )
    }

    pub fn mulmod(&self, a: &[u64], b: &[u64], m: &[u64]) -> Coeffs {
        self.rem(&self.mul(a, b), m)
    }

    /// `base^e mod m` for an arbitrary-size exponent.
    pub fn powmod(&self, base: &[u64], e: &BigInt, m: &[u64]) -> Coeffs {
        let mut acc = self.rem(&[1], m);
        let b = self.rem(base, m);
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = self.mulmod(&acc, &acc, m);
            if e.bit(i) {
                acc = self.mulmod(&acc, &b, m);
            }
        }
        acc
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(g, m)` with
    /// `f = ∏ g^m` and each `g` squarefree.
    pub fn squarefree_decomposition(&self, f: &[u64]) -> Vec<(Coeffs, u32)> {
        let f = self.monic(f);
        let mut out = Vec::new();
        if f.len() <= 1 {
            return out;
        }
        let c0 = self.gcd(&f, &self.derivative(&f));
        let mut w = self.divrem(&f, &c0).0;
        let mut c = c0;
        let mut i = 1u32;
        while w.len() > 1 {
            let y = self.gcd(&w, &c);
            let fac = self.divrem(&w, &y).0;
            if fac.len() > 1 {
                out.push((fac, i));
            }
            w = y;
            c = self.divrem(&c, &w).0;
            i += 1;
        }
        if c.len() > 1 {
            // c is a p-th power
            let p = self.p as usize;
            let root: Coeffs = c.iter().step_by(p).copied().collect();
            for (g, m) in self.squarefree_decomposition(&root) {
                out.push((g, m * self.p as u32));
            }
        }
        out
    }

    /// Distinct-degree factorisation of a monic squarefree polynomial:
    /// `(d, product of all irreducible factors of degree d)`.
    pub fn distinct_degree(&self, f: &[u64]) -> Vec<(usize, Coeffs)> {
        let mut out = Vec::new();
        let mut rest = self.monic(f);
        let x = vec![0u64, 1];
        let mut h = self.rem(&x, &rest);
        let pb = BigInt::from(self.p);
        let mut d = 0;
        while rest.len() > 1 {
            d += 1;
            if 2 * d > rest.len() - 1 {
                let deg = rest.len() - 1;
                out.push((deg, rest));
                break;
            }
            h = self.powmod(&h, &pb, &rest);
            let g = self.gcd(&self.sub(&h, &x), &rest);
            if g.len() > 1 {
                rest = self.divrem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((d, g));
            }
        }
        out
    }

    /// Split a monic squarefree product of degree-`d` irreducibles.
    pub fn equal_degree(&self, f: &[u64], d: usize, rng: &mut ChaCha8Rng) -> Vec<Coeffs> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.to_vec()];
        }
        loop {
            let a: Coeffs = self.trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() <= 1 {
                continue;
            }
            let candidate = if self.p == 2 {
                // trace map to F_2
                let mut t = a.clone();
                let mut acc = a.clone();
                for _ in 1..d {
                    t = self.mulmod(&t, &t, f);
                    acc = self.add(&acc, &t);
                }
                acc
            } else {
                let e = (BigInt::from(self.p).pow(d as u32) - 1u32) / 2u32;
                self.sub(&self.powmod(&a, &e, f), &[1])
            };
            let g = self.gcd(&candidate, f);
            if g.len() > 1 && g.len() < f.len() {
                let other = self.divrem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&other, d, rng));
                return out;
            }
        }
    }

    /// Full factorisation into monic irreducibles with multiplicity, sorted by
    /// degree then coefficients.
    pub fn factor(&self, f: &[u64]) -> Vec<(Coeffs, u32)> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.p ^ (f.len() as u64) << 32);
        let mut out = Vec::new();
        for (g, m) in self.squarefree_decomposition(f) {
            for (d, part) in self.distinct_degree(&g) {
                for irr in self.equal_degree(&part, d, &mut rng) {
                    out.push((irr, m));
                }
            }
        }
        out.sort_by(|a, b| {
            a.0.len()
                .cmp(&b.0.len())
                .then_with(|| a.0.iter().rev().cmp(b.0.iter().rev()))
        });
        out
    }

    /// Degrees of the irreducible factors of a squarefree polynomial, sorted
    /// ascending (the Frobenius cycle type).
    pub fn degree_pattern(&self, f: &[u64]) -> Vec<usize> {
        let mut out = Vec::new();
        for (d, part) in self.distinct_degree(f) {
            let count = (part.len() - 1) / d;
            out.extend(std::iter::repeat_n(d, count));
        }
        out.sort_unstable();
        out
    }

    pub fn is_squarefree(&self, f: &[u64]) -> bool {
        f.len() > 1 && self.gcd(f, &self.derivative(f)).len() == 1
    }
}

/// Factor an integer polynomial modulo a small prime `p ≤ 2^16`.
///
/// Returns monic irreducible factors (coefficients in `[0, p)`) with
/// multiplicities; their product is `f / lc(f)` modulo `p`.
pub fn factor_mod_p(f: &IntPolynomial, p: u64) -> Result<Vec<(IntPolynomial, u32)>> {
    if p > 1 << 16 {
        return Err(Error::domain(format!("prime {p} exceeds 2^16")));
    }
    let field = PrimeField::new(p)?;
    let fp = field.reduce(f);
    if f.is_zero() || fp.len() != f.coeffs().len() {
        return Err(Error::domain(format!(
            "leading coefficient divisible by {p}; normalise first"
        )));
    }
    Ok(field
        .factor(&fp)
        .into_iter()
        .map(|(g, m)| (field.lift(&g), m))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    fn product_mod(fs: &[(IntPolynomial, u32)], q: u64) -> Coeffs {
        let field = PrimeField::new(q).unwrap();
        let mut acc = vec![1u64];
        for (g, m) in fs {
            for _ in 0..*m {
                acc = field.mul(&acc, &field.reduce(g));
            }
        }
        acc
    }

    #[test]
    fn small_examples() {
        let f = factor_mod_p(&p("x^2 + 1"), 2).unwrap();
        assert_eq!(f, vec![(p("x + 1"), 2)]);
        let f = factor_mod_p(&p("x^16 + 4x^12 + 15x^8 + 4x^4 + 1"), 2).unwrap();
        assert_eq!(f, vec![(p("x^2 + x + 1"), 8)]);
        let f = factor_mod_p(
            &p("x^18 - 9x^15 + 135x^12 + 540x^9 + 2673x^6 + 1458x^3 + 729"),
            3,
        )
        .unwrap();
        assert_eq!(f, vec![(p("x"), 18)]);
    }

    #[test]
    fn leading_coefficient_divisible() {
        assert!(factor_mod_p(&p("3x^2 + 1"), 3).is_err());
        assert!(factor_mod_p(&p("x^2 + 1"), 4).is_err());
    }

    #[test]
    fn product_reconstructs_input() {
        let field = PrimeField::new(7).unwrap();
        let f = p("3x^7 + 2x^5 - x^3 + 5x + 11");
        let fs = factor_mod_p(&f, 7).unwrap();
        let target = field.monic(&field.reduce(&f));
        assert_eq!(product_mod(&fs, 7), target);
    }

    #[test]
    fn degree_pattern_cyclotomic() {
        // x^4+1 mod 3 splits into two quadratics
        let field = PrimeField::new(3).unwrap();
        assert_eq!(field.degree_pattern(&field.reduce(&p("x^4 + 1"))), vec![2, 2]);
        let field = PrimeField::new(17).unwrap();
        assert_eq!(field.degree_pattern(&field.reduce(&p("x^4 + 1"))), vec![1, 1, 1, 1]);
    }

    #[test]
    fn squarefree_decomposition_handles_pth_powers() {
        let field = PrimeField::new(2).unwrap();
        // (x+1)^4 x^3
        let f = field.reduce(&p("x+1").pow(4).mul(&p("x").pow(3)));
        let mut d = field.squarefree_decomposition(&f);
        d.sort_by_key(|(_, m)| *m);
        assert_eq!(d, vec![(vec![0, 1], 3), (vec![1, 1], 4)]);
    }
}
