//! Local index and ramification data at a prime: Dedekind's criterion and
//! Ore's theorem on `φ`-Newton polygons.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::newton::{lower_hull, Side};
use crate::arith::integer::valuation;
use crate::arith::modp::PrimeField;
use crate::arith::poly::IntPolynomial;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DedekindVerdict {
    MaximalAtP,
    NotMaximalAtP,
}

fn require_monic(f: &IntPolynomial) -> Result<()> {
    if !f.is_monic() || f.deg() == 0 {
        return Err(Error::domain(format!("{f} is not monic of positive degree")));
    }
    Ok(())
}

/// Dedekind's criterion: does `p` divide `[O : Z[x]/f]`?
pub fn dedekind_index_check(f: &IntPolynomial, p: u64) -> Result<DedekindVerdict> {
    require_monic(f)?;
    let fp = PrimeField::new(p)?;
    let factors = fp.factor(&fp.reduce(f));
    let mut g = vec![1u64];
    let mut h = vec![1u64];
    for (phi, m) in &factors {
        g = fp.mul(&g, phi);
        for _ in 1..*m {
            h = fp.mul(&h, phi);
        }
    }
    let gh = fp.lift(&g).mul(&fp.lift(&h));
    let diff = f.sub(&gh);
    let pb = BigInt::from(p);
    let big_f = IntPolynomial::new(diff.coeffs().iter().map(|c| c / &pb).collect());
    let t = fp.gcd(&fp.gcd(&fp.reduce(&big_f), &g), &h);
    Ok(if t.len() <= 1 { DedekindVerdict::MaximalAtP } else { DedekindVerdict::NotMaximalAtP })
}

/// `f = Σ a_i φ^i` with `deg a_i < deg φ`, for monic `φ`.
pub fn phi_expansion(f: &IntPolynomial, phi: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut out = Vec::new();
    let mut cur = f.clone();
    while !cur.is_zero() {
        let (q, r) = divrem_monic(&cur, phi);
        out.push(r);
        cur = q;
    }
    out
}

fn divrem_monic(f: &IntPolynomial, phi: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
    let n = phi.deg();
    let mut r: Vec<BigInt> = f.coeffs().to_vec();
    if r.len() <= n {
        return (IntPolynomial::zero(), f.clone());
    }
    let mut q = vec![BigInt::zero(); r.len() - n];
    for i in (n..r.len()).rev() {
        let c = r[i].clone();
        if c.is_zero() {
            continue;
        }
        q[i - n] = c.clone();
        for (j, pc) in phi.coeffs().iter().enumerate() {
            r[i - n + j] -= &c * pc;
        }
    }
    r.truncate(n);
    (IntPolynomial::new(q), IntPolynomial::new(r))
}

fn poly_valuation(a: &IntPolynomial, p: &BigInt) -> Option<u64> {
    a.coeffs().iter().filter(|c| !c.is_zero()).map(|c| valuation(c, p) as u64).min()
}

/// One side of the principal part of a `φ`-polygon.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OreSide {
    pub phi_degree: usize,
    /// Slope `h/e` in lowest terms.
    pub slope: (u64, u64),
    pub length: u64,
    pub degree: u64,
    /// `None` when the residual polynomial could not be tested.
    pub regular: Option<bool>,
}

impl OreSide {
    pub fn ramification(&self) -> u64 {
        self.slope.1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OreLocal {
    pub p: u64,
    pub sides: Vec<OreSide>,
    /// Unramified factors coming from simple factors of `f mod p`.
    pub simple_degrees: Vec<usize>,
    /// `Σ ind(N_φ)`: a lower bound on `v_p` of the index, exact when regular.
    pub index: u64,
    pub regular: bool,
}

impl OreLocal {
    /// All ramification indices attached to the sides.
    pub fn ramification_indices(&self) -> Vec<u64> {
        self.sides.iter().map(OreSide::ramification).collect()
    }

    pub fn unramified(&self) -> bool {
        self.sides.iter().all(|s| s.ramification() == 1)
    }
}

fn residual_squarefree(side: &Side, a: &[BigInt], p: u64, fp: &PrimeField) -> bool {
    let e = side.ramification();
    let h = side.drop().unsigned_abs() / side.degree();
    let pb = BigInt::from(p);
    let mut res = Vec::new();
    for j in 0..=side.degree() {
        let x = (side.x0 + j * e) as usize;
        let height = side.y0 - j * h;
        let c = &a[x];
        let v = if c.is_zero() { u64::MAX } else { valuation(c, &pb) as u64 };
        res.push(if v == height {
            let q = c / pb.pow(height as u32);
            q.mod_floor(&pb).try_into().unwrap_or(0u64)
        } else {
            0
        });
    }
    fp.is_squarefree(&fp.trim(res))
}

/// Ore's theorem at `p` for monic `f`: principal `φ`-polygons for every
/// repeated factor `φ` of `f mod p`.
pub fn ore_local(f: &IntPolynomial, p: u64) -> Result<OreLocal> {
    require_monic(f)?;
    let fp = PrimeField::new(p)?;
    let pb = BigInt::from(p);
    let mut sides = Vec::new();
    let mut simple_degrees = Vec::new();
    let mut index = 0u64;
    let mut regular = true;
    for (phi_bar, m) in fp.factor(&fp.reduce(f)) {
        let phi = fp.lift(&phi_bar);
        if m == 1 {
            simple_degrees.push(phi.deg());
            continue;
        }
        let exp = phi_expansion(f, &phi);
        let vals: Vec<Option<u64>> = exp.iter().take(m as usize + 1).map(|a| poly_valuation(a, &pb)).collect();
        let linear = phi.deg() == 1;
        let consts: Vec<BigInt> = exp.iter().map(|a| a.coeff(0)).collect();
        for side in lower_hull(&vals) {
            if side.drop() <= 0 {
                continue;
            }
            let reg = if side.degree() == 1 {
                Some(true)
            } else if linear {
                Some(residual_squarefree(&side, &consts, p, &fp))
            } else {
                None
            };
            regular &= reg == Some(true);
            for x in side.x0.max(1)..side.x1 {
                // lattice points strictly inside the first quadrant under the side
                index += phi.deg() as u64 * (side.height_numerator(x) / side.length() as i64) as u64;
            }
            let d = side.degree();
            sides.push(OreSide {
                phi_degree: phi.deg(),
                slope: (side.drop() as u64 / d, side.length() / d),
                length: side.length(),
                degree: d,
                regular: reg,
            });
        }
        // a zero coefficient at the origin means φ | f over Z; not expected
        if vals.first().copied().flatten().is_none() {
            return Err(Error::domain(format!("{phi} divides {f} over Z")));
        }
    }
    Ok(OreLocal { p, sides, simple_degrees, index, regular })
}

/// `v_p(disc f) - 2 · ind`: exact `v_p(d_M)` when Ore's data is regular.
pub fn field_disc_valuation(f: &IntPolynomial, p: u64) -> Result<(u64, OreLocal)> {
    let disc = f.discriminant()?;
    let v = valuation(&disc, &BigInt::from(p)) as u64;
    let local = ore_local(f, p)?;
    Ok((v.saturating_sub(2 * local.index), local))
}

const REFINE_DEPTH: u32 = 24;

fn residual_coeffs(side: &Side, a: &[BigInt], p: u64) -> Vec<u64> {
    let e = side.ramification();
    let h = side.drop().unsigned_abs() / side.degree();
    let pb = BigInt::from(p);
    (0..=side.degree())
        .map(|j| {
            let c = &a[(side.x0 + j * e) as usize];
            let height = side.y0 - j * h;
            if c.is_zero() || valuation(c, &pb) as u64 != height {
                0
            } else {
                (c / pb.pow(height as u32)).mod_floor(&pb).try_into().unwrap_or(0)
            }
        })
        .collect()
}

// Roots of f congruent to r mod p, m of them: refine r along integral sides
// with repeated linear residual factors.
fn cluster_unramified(f: &IntPolynomial, p: u64, r: &BigInt, m: usize, fp: &PrimeField, depth: u32) -> Option<bool> {
    if depth > REFINE_DEPTH {
        return None;
    }
    let pb = BigInt::from(p);
    let g = f.shift(r);
    let a: Vec<BigInt> = (0..=m).map(|i| g.coeff(i)).collect();
    let vals: Vec<Option<u64>> = a.iter().map(|c| (!c.is_zero()).then(|| valuation(c, &pb) as u64)).collect();
    vals[0]?;
    let mut out = Some(true);
    for side in lower_hull(&vals) {
        if side.drop() <= 0 {
            continue;
        }
        if side.ramification() > 1 {
            return Some(false);
        }
        let res = fp.trim(residual_coeffs(&side, &a, p));
        if fp.is_squarefree(&res) {
            continue;
        }
        let step = pb.pow((side.drop().unsigned_abs() / side.degree()) as u32);
        for (psi, k) in fp.factor(&res) {
            if k == 1 {
                continue;
            }
            if psi.len() != 2 {
                out = None;
                continue;
            }
            let c = BigInt::from((p - psi[0]) % p);
            match cluster_unramified(f, p, &(r + c * &step), k as usize, fp, depth + 1) {
                Some(true) => {}
                Some(false) => return Some(false),
                None => out = None,
            }
        }
    }
    out
}

/// Whether `p` is unramified in `Q[x]/f`; `None` when undecided.
pub fn unramified_at(f: &IntPolynomial, p: u64) -> Result<Option<bool>> {
    require_monic(f)?;
    let fp = PrimeField::new(p)?;
    let local = ore_local(f, p)?;
    if !local.unramified() {
        return Ok(Some(false));
    }
    if local.regular {
        return Ok(Some(true));
    }
    let mut out = Some(true);
    for (phi, m) in fp.factor(&fp.reduce(f)) {
        if m == 1 {
            continue;
        }
        let verdict = if phi.len() == 2 {
            cluster_unramified(f, p, &BigInt::from((p - phi[0]) % p), m as usize, &fp, 0)
        } else {
            None
        };
        match verdict {
            Some(false) => return Ok(Some(false)),
            None => out = None,
            Some(true) => {}
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn dedekind_examples() {
        assert_eq!(dedekind_index_check(&p("x^2 - 2"), 3).unwrap(), DedekindVerdict::MaximalAtP);
        assert_eq!(dedekind_index_check(&p("x^2 - 5"), 5).unwrap(), DedekindVerdict::MaximalAtP);
        // (x - 3)x + 9
        assert_eq!(dedekind_index_check(&p("x^2 - 3x + 9"), 3).unwrap(), DedekindVerdict::NotMaximalAtP);
        assert_eq!(dedekind_index_check(&p("x^2 - 45"), 3).unwrap(), DedekindVerdict::NotMaximalAtP);
    }

    #[test]
    fn ore_index() {
        let (v, loc) = field_disc_valuation(&p("x^2 - 8"), 2).unwrap();
        assert_eq!(loc.index, 1);
        assert_eq!(v, 3);
        let (v, loc) = field_disc_valuation(&p("x^2 - 45"), 3).unwrap();
        assert_eq!(loc.index, 1);
        assert_eq!(v, 0);
        assert!(loc.regular && loc.unramified());
        let (v, _) = field_disc_valuation(&p("x^2 + 3"), 2).unwrap();
        assert_eq!(v, 0);
    }

    #[test]
    fn refinement() {
        assert_eq!(unramified_at(&p("x^2 - 6x - 153"), 3).unwrap(), Some(true));
        assert_eq!(unramified_at(&p("x^2 - 6x - 18"), 3).unwrap(), Some(false));
        assert!(!ore_local(&p("x^2 - 6x - 153"), 3).unwrap().regular);
    }
}
