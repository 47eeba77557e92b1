//! Factorisation in `Z[x]`: Yun squarefree decomposition, then Zassenhaus
//! (modular factorisation, Hensel lifting, subset recombination).

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::integer::primes_up_to;
use super::modp::{Coeffs, PrimeField};
use super::poly::IntPolynomial;
use crate::error::{Error, Result};

/// `f = content · ∏ g_i^{e_i}` with each `g_i` primitive, irreducible and of
/// positive leading coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZFactorization {
    #[serde(with = "super::serde_big")]
    pub content: BigInt,
    pub factors: Vec<(IntPolynomial, u32)>,
}

impl ZFactorization {
    pub fn expand(&self) -> IntPolynomial {
        let mut acc = IntPolynomial::constant(self.content.clone());
        for (g, e) in &self.factors {
            acc = acc.mul(&g.pow(*e));
        }
        acc
    }

    /// Degrees of the irreducible factors, repeated by multiplicity, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(g, e)| std::iter::repeat_n(g.deg(), *e as usize))
            .collect();
        d.sort_unstable();
        d
    }
}

/// Squarefree decomposition of a primitive polynomial over Z (Yun).
pub fn squarefree_decomposition(f: &IntPolynomial) -> Vec<(IntPolynomial, u32)> {
    let f = f.primitive_part();
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let df = f.derivative();
    let b = f.gcd(&df);
    let mut c = f.div_exact(&b).expect("gcd divides f");
    let mut d = df.div_exact(&b).expect("gcd divides f'").sub(&c.derivative());
    let mut i = 1;
    while c.deg() > 0 {
        let a = c.gcd(&d);
        c = c.div_exact(&a).expect("gcd divides c");
        d = d.div_exact(&a).expect("gcd divides d").sub(&c.derivative());
        if a.deg() > 0 {
            out.push((a.primitive_part(), i));
        }
        i += 1;
    }
    out
}

/// Complete factorisation over Z.
pub fn factor_over_z(f: &IntPolynomial) -> Result<ZFactorization> {
    if f.is_zero() {
        return Err(Error::domain("cannot factor the zero polynomial"));
    }
    let mut content = f.content();
    if f.leading().is_negative() {
        content = -content;
    }
    let mut factors = Vec::new();
    for (g, e) in squarefree_decomposition(f) {
        for h in factor_squarefree(&g)? {
            factors.push((h, e));
        }
    }
    factors.sort_by(|a, b| {
        a.0.deg()
            .cmp(&b.0.deg())
            .then_with(|| a.0.coeffs().iter().rev().cmp(b.0.coeffs().iter().rev()))
            .then(a.1.cmp(&b.1))
    });
    Ok(ZFactorization { content, factors })
}

/// Irreducibility over Q of a polynomial of positive degree.
pub fn is_irreducible(f: &IntPolynomial) -> Result<bool> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(Error::domain("irreducibility of a constant"));
    }
    let z = factor_over_z(f)?;
    Ok(z.factors.len() == 1 && z.factors[0].1 == 1)
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn reduce_mod(f: &IntPolynomial, m: &BigInt) -> IntPolynomial {
    IntPolynomial::new(f.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn modinv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Pick a prime for which `f` stays squarefree of full degree, preferring few
/// modular factors.
fn choose_prime(f: &IntPolynomial) -> (PrimeField, Vec<Coeffs>) {
    let lc = f.leading();
    let mut best: Option<(PrimeField, Vec<Coeffs>)> = None;
    let mut tried = 0;
    for p in primes_up_to(5000) {
        if (&lc % p).is_zero() {
            continue;
        }
        let field = PrimeField::new(p).expect("small prime");
        let fp = field.reduce(f);
        if !field.is_squarefree(&fp) {
            continue;
        }
        let facs: Vec<Coeffs> = field.factor(&fp).into_iter().map(|(g, _)| g).collect();
        let better = best.as_ref().is_none_or(|(_, b)| facs.len() < b.len());
        if better {
            best = Some((field, facs));
        }
        tried += 1;
        if tried >= 6 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best.expect("a squarefree polynomial stays squarefree modulo some small prime")
}

/// Lift a monic factorisation `target ≡ ∏ facs (mod p)` to modulus `p^k`.
/// `target` must be monic modulo `p^k`.
fn hensel_lift(
    field: &PrimeField,
    target: &IntPolynomial,
    facs: &[Coeffs],
    k: u32,
) -> Vec<IntPolynomial> {
    if facs.len() == 1 {
        return vec![target.clone()];
    }
    let p = BigInt::from(field.p());
    let pk = p.pow(k);
    let mid = facs.len() / 2;
    let prod = |s: &[Coeffs]| s.iter().fold(vec![1u64], |acc, g| field.mul(&acc, g));
    let u0 = prod(&facs[..mid]);
    let v0 = prod(&facs[mid..]);
    let (_, s, t) = field.ext_gcd(&u0, &v0);
    let mut u = field.lift(&u0);
    let mut v = field.lift(&v0);
    let mut pj = p.clone();
    for _ in 1..k {
        let err = target.sub(&u.mul(&v));
        let e: Vec<BigInt> = err.coeffs().iter().map(|c| c / &pj).collect();
        let e = field.reduce(&IntPolynomial::new(e));
        let dv = field.rem(&field.mul(&s, &e), &v0);
        let du = field.rem(&field.mul(&t, &e), &u0);
        u = reduce_mod(&u.add(&field.lift(&du).scale(&pj)), &(&pj * &p));
        v = reduce_mod(&v.add(&field.lift(&dv).scale(&pj)), &(&pj * &p));
        pj *= &p;
    }
    debug_assert!(reduce_mod(&target.sub(&u.mul(&v)), &pk).is_zero());
    let mut out = hensel_lift(field, &u, &facs[..mid], k);
    out.extend(hensel_lift(field, &v, &facs[mid..], k));
    out
}

fn coefficient_bound(f: &IntPolynomial) -> BigInt {
    // Mignotte-style: any factor has coefficients below 2^n (n+1) |f|_inf |lc|
    let n = f.deg();
    let max = f.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    (BigInt::one() << n) * BigInt::from(n + 1) * max * f.leading().abs()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Irreducible factors of a primitive squarefree polynomial.
fn factor_squarefree(f: &IntPolynomial) -> Result<Vec<IntPolynomial>> {
    let f = f.primitive_part();
    if f.deg() <= 1 {
        return Ok(vec![f]);
    }
    let (field, facs) = choose_prime(&f);
    if facs.len() == 1 {
        return Ok(vec![f]);
    }
    let p = BigInt::from(field.p());
    let bound = coefficient_bound(&f) * 2;
    let mut k = 1u32;
    let mut pk = p.clone();
    while pk <= bound {
        pk *= &p;
        k += 1;
    }
    let lc = f.leading();
    let monic_target = reduce_mod(&f.scale(&modinv(&lc, &pk)), &pk);
    let mut lifted = hensel_lift(&field, &monic_target, &facs, k);

    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        for subset in subsets(lifted.len(), size) {
            let lc_r = rest.leading();
            let mut cand = IntPolynomial::constant(lc_r.clone());
            for &i in &subset {
                cand = reduce_mod(&cand.mul(&lifted[i]), &pk);
            }
            let cand = IntPolynomial::new(cand.coeffs().iter().map(|c| symmetric(c, &pk)).collect())
                .primitive_part();
            // cheap trailing-coefficient filter
            let c0 = cand.coeff(0);
            if !c0.is_zero() && !(rest.coeff(0) % &c0).is_zero() {
                continue;
            }
            if let Some(q) = rest.div_exact(&cand) {
                out.push(cand);
                rest = q;
                let keep: Vec<IntPolynomial> = lifted
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, g)| g.clone())
                    .collect();
                lifted = keep;
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    out.push(rest.primitive_part());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn swinnerton_dyer_like() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime
        assert!(is_irreducible(&p("x^4 - 10x^2 + 1")).unwrap());
    }

    #[test]
    fn products_factor_back() {
        let a = p("x^3 - 2");
        let b = p("2x^2 + 3x - 7");
        let c = p("x - 5");
        let f = a.mul(&b).mul(&c.pow(2)).scale(&BigInt::from(-6));
        let z = factor_over_z(&f).unwrap();
        assert_eq!(z.content, BigInt::from(-6));
        assert_eq!(z.expand(), f);
        assert_eq!(z.degrees(), vec![1, 1, 2, 3]);
        assert!(z.factors.contains(&(c, 2)));
    }

    #[test]
    fn cyclotomic_split() {
        let z = factor_over_z(&p("x^12 - 1")).unwrap();
        assert_eq!(z.factors.len(), 6);
        assert_eq!(z.expand(), p("x^12 - 1"));
    }

    #[test]
    fn degree_eighteen_is_irreducible() {
        let f = p("x^18 - 9x^15 + 135x^12 + 540x^9 + 2673x^6 + 1458x^3 + 729");
        assert!(is_irreducible(&f).unwrap());
    }

    #[test]
    fn yun_multiplicities() {
        let f = p("x + 1").pow(3).mul(&p("x^2 + 1").pow(2)).mul(&p("x - 7"));
        let d = squarefree_decomposition(&f);
        assert_eq!(d, vec![(p("x - 7"), 1), (p("x^2 + 1"), 2), (p("x + 1"), 3)]);
    }
}
