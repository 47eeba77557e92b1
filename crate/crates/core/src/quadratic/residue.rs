//! Residue rings `O/𝔭^k` for a non-split prime `𝔭 | p`, and their unit groups.

use std::collections::HashSet;

use num_traits::ToPrimitive;
use serde::Serialize;

use super::field::{QuadInteger, QuadraticField, SplitKind};
use crate::arith::abelian::AbelianGroup;
use crate::error::{Error, Result};

/// Largest residue ring handled by enumeration.
pub const RING_BUDGET: u64 = 1 << 20;

/// A full-rank sublattice of `Z·1 + Z·ω` in Hermite normal form:
/// basis `(A, 0)`, `(B, C)` with `0 ≤ B < A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lattice {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Lattice {
    /// HNF of the Z-span of the given vectors.
    pub fn span(vectors: &[(i64, i64)]) -> Self {
        // eliminate the second coordinate by gcd steps
        let mut rows: Vec<(i128, i128)> = vectors.iter().map(|&(x, y)| (x as i128, y as i128)).collect();
        let mut pivot: Option<(i128, i128)> = None;
        let mut free_first: Vec<i128> = Vec::new();
        for (x, y) in rows.drain(..) {
            if y == 0 {
                free_first.push(x);
                continue;
            }
            match pivot {
                None => pivot = Some((x, y)),
                Some((px, py)) => {
                    let (mut u, mut v) = ((px, py), (x, y));
                    while v.1 != 0 {
                        let q = u.1.div_euclid(v.1);
                        let r = (u.0 - q * v.0, u.1 - q * v.1);
                        u = v;
                        v = r;
                    }
                    pivot = Some(u);
                    free_first.push(v.0);
                }
            }
        }
        let (mut bx, mut cy) = pivot.expect("lattice has full rank");
        if cy < 0 {
            bx = -bx;
            cy = -cy;
        }
        let a = free_first.iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
        assert!(a != 0, "lattice has full rank");
        Lattice { a: a as i64, b: bx.rem_euclid(a) as i64, c: cy as i64 }
    }

    pub fn index(&self) -> u64 {
        (self.a * self.c) as u64
    }

    /// Canonical representative `(x, y)` with `0 ≤ x < A`, `0 ≤ y < C`.
    pub fn reduce(&self, x: i64, y: i64) -> (i64, i64) {
        let t = y.div_euclid(self.c);
        let (x, y) = (x - t * self.b, y - t * self.c);
        (x.rem_euclid(self.a), y)
    }

    pub fn contains(&self, x: i64, y: i64) -> bool {
        self.reduce(x, y) == (0, 0)
    }
}

/// `O/𝔭^k` with `𝔭` the unique prime above a non-split `p`.
#[derive(Debug, Clone)]
pub struct ResidueRing {
    pub field: QuadraticField,
    pub p: u64,
    pub k: u32,
    pub kind: SplitKind,
    pub lattice: Lattice,
    /// Root of the minimal polynomial of ω modulo `p` (ramified case).
    root: i64,
}

impl ResidueRing {
    pub fn new(field: &QuadraticField, p: u64, k: u32) -> Result<Self> {
        if !(p == 2 || p == 3) {
            return Err(Error::Unsupported(format!("residue rings are implemented for p = 2, 3, not {p}")));
        }
        if k == 0 {
            return Err(Error::domain("exponent k must be positive"));
        }
        let s = field.splitting(p);
        if s.kind == SplitKind::Split {
            return Err(Error::Unsupported(format!("{p} splits in {field}")));
        }
        let size = (p as u128).pow(s.f * k);
        if size > RING_BUDGET as u128 {
            return Err(Error::Budget(format!("|O/p^k| = {p}^{} exceeds 2^20", s.f * k)));
        }
        let p = p as i64;
        let (t, n) = (field.omega_trace(), field.omega_norm());
        let root = if s.kind == SplitKind::Ramified {
            (0..p).find(|r| (r * r - t * r + n).rem_euclid(p) == 0).expect("ramified prime has a root")
        } else {
            0
        };
        let half = p.pow(k / 2);
        let lattice = if s.kind == SplitKind::Inert {
            Lattice { a: p.pow(k), b: 0, c: p.pow(k) }
        } else if k.is_multiple_of(2) {
            Lattice { a: half, b: 0, c: half }
        } else {
            // p^{(k-1)/2}·(p, ω − r)
            let gens = [(p, 0), (0, p), (-root, 1), (-n, t - root)];
            let g: Vec<(i64, i64)> = gens.iter().map(|&(x, y)| (x * half, y * half)).collect();
            Lattice::span(&g)
        };
        debug_assert_eq!(lattice.index() as u128, size);
        Ok(ResidueRing { field: *field, p: p as u64, k, kind: s.kind, lattice, root })
    }

    pub fn size(&self) -> u64 {
        self.lattice.index()
    }

    pub fn mul(&self, x: (i64, i64), y: (i64, i64)) -> (i64, i64) {
        let (t, n) = (self.field.omega_trace(), self.field.omega_norm());
        let bb = x.1 * y.1;
        self.lattice.reduce(x.0 * y.0 - n * bb, x.0 * y.1 + x.1 * y.0 + t * bb)
    }

    /// Whether `x + yω` is a unit modulo `𝔭^k`, i.e. lies outside `𝔭`.
    pub fn is_unit(&self, x: i64, y: i64) -> bool {
        let p = self.p as i64;
        match self.kind {
            SplitKind::Ramified => (x + y * self.root).rem_euclid(p) != 0,
            _ => x.rem_euclid(p) != 0 || y.rem_euclid(p) != 0,
        }
    }

    pub fn reduce(&self, q: &QuadInteger) -> (i64, i64) {
        let m = self.lattice.index() as i128;
        let modm = |v: &num_bigint::BigInt| -> i64 {
            let r = v % num_bigint::BigInt::from(m);
            let r = r.to_i128().unwrap().rem_euclid(m);
            r as i64
        };
        self.lattice.reduce(modm(&q.a), modm(&q.b))
    }

    pub fn units(&self) -> Vec<(i64, i64)> {
        let l = self.lattice;
        let mut out = Vec::new();
        for x in 0..l.a {
            for y in 0..l.c {
                if self.is_unit(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// `|(O/𝔭^k)^*| = N𝔭^{k−1}(N𝔭 − 1)`.
    pub fn expected_unit_count(&self) -> u64 {
        let q = self.p.pow(if self.kind == SplitKind::Inert { 2 } else { 1 });
        q.pow(self.k - 1) * (q - 1)
    }

    pub fn unit_group(&self) -> AbelianGroup<(i64, i64), impl Fn((i64, i64), (i64, i64)) -> (i64, i64) + '_> {
        AbelianGroup::new(self.units(), (1 % self.lattice.a, 0), move |x, y| self.mul(x, y))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ResidueRingUnits {
    pub d: i64,
    pub p: u64,
    pub k: u32,
    pub order: u64,
    /// Invariant factors, ascending.
    pub group: Vec<u64>,
    pub generators: Vec<QuadInteger>,
}

impl ResidueRingUnits {
    pub fn rank(&self, q: u64) -> u32 {
        self.group.iter().filter(|&&n| n % q == 0).count() as u32
    }
}

pub fn residue_ring_units(field: &QuadraticField, p: u64, k: u32) -> Result<ResidueRingUnits> {
    let ring = ResidueRing::new(field, p, k)?;
    let g = ring.unit_group();
    let group = g.invariant_factors();
    let generators = g.generators().into_iter().map(|(x, y)| QuadInteger::new(x, y)).collect();
    Ok(ResidueRingUnits { d: field.d(), p, k, order: g.order(), group, generators })
}

/// The subgroup of `(O/𝔭^k)^*` generated by the images of `gens`.
pub fn image_subgroup(ring: &ResidueRing, gens: &[QuadInteger]) -> HashSet<(i64, i64)> {
    let g = ring.unit_group();
    let imgs: Vec<(i64, i64)> = gens.iter().map(|q| ring.reduce(q)).collect();
    g.closure(&imgs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn units(d: i64, p: u64, k: u32) -> ResidueRingUnits {
        residue_ring_units(&QuadraticField::new(d).unwrap(), p, k).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(units(5, 2, 1).group, vec![3]);
        assert_eq!(units(-1, 2, 1).group, Vec::<u64>::new());
        let u = units(-3, 3, 2);
        assert_eq!(u.order, 6);
        assert_eq!(u.group, vec![6]);
    }

    #[test]
    fn unit_counts() {
        for d in [6, 5, 3, 2, -1, -2, -3, -5, -6] {
            let k = QuadraticField::new(d).unwrap();
            for p in [2u64, 3] {
                if k.splitting(p).kind == SplitKind::Split {
                    continue;
                }
                for e in 1..=4 {
                    let ring = ResidueRing::new(&k, p, e).unwrap();
                    assert_eq!(ring.units().len() as u64, ring.expected_unit_count(), "d={d} p={p} k={e}");
                }
            }
        }
    }

    #[test]
    fn lattice_hnf() {
        let l = Lattice::span(&[(2, 0), (0, 2), (-1, 1), (1, 1)]);
        assert_eq!(l.index(), 2);
        assert!(l.contains(1, 1));
        assert!(!l.contains(1, 0));
    }

    #[test]
    fn split_rejected() {
        let k = QuadraticField::new(-7).unwrap();
        assert!(matches!(ResidueRing::new(&k, 2, 1), Err(Error::Unsupported(_))));
    }
}
