//! Ray class groups `Cl(K, 𝔭^k·m_∞)` from the exact sequence
//! `U → (O/𝔭^k)^* × {±1}^{r1} → Cl(K, 𝔭^k m_∞) → Cl(K) → 1`.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::field::{QuadInteger, QuadraticField, SplitKind};
use super::forms::{class_group, Form, FormClassGroup};
use super::nakagoshi::field_rank;
use super::residue::{Lattice, ResidueRing, RING_BUDGET};
use super::units::unit_group;
use crate::arith::abelian::AbelianGroup;
use crate::arith::integer::{is_prime_u64, kronecker_i64};
use crate::error::{Error, Result};

/// Largest group assembled explicitly for the extension by `Cl(K)`.
const EXTENSION_BUDGET: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankInfo {
    pub lower: u32,
    pub upper: u32,
    pub exact: bool,
}

impl RankInfo {
    fn exact(r: u32) -> Self {
        RankInfo { lower: r, upper: r, exact: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Assembly {
    /// `Cl(K)` trivial: the ray class group is the quotient itself.
    Quotient,
    /// Cyclic `Cl(K)` glued on explicitly.
    Extension,
    /// Only order and rank bounds.
    Bounded,
}

#[derive(Debug, Clone, Serialize)]
pub struct RayClassReport {
    pub d: i64,
    pub disc: i64,
    pub p: u64,
    pub k: u32,
    pub include_infinity: bool,
    pub class_number: u64,
    pub class_group: Vec<u64>,
    pub residue_units: Vec<u64>,
    pub middle_order: u64,
    pub unit_image_order: u64,
    pub order: u64,
    /// Invariants of `middle / unit image`.
    pub quotient: Vec<u64>,
    /// Invariants of the full ray class group when it could be assembled.
    pub structure: Option<Vec<u64>>,
    pub assembly: Assembly,
    pub q_ranks: BTreeMap<u64, RankInfo>,
}

impl RayClassReport {
    pub fn is_q_group(&self, q: u64) -> bool {
        let mut n = self.order;
        while n.is_multiple_of(q) {
            n /= q;
        }
        n == 1
    }
}

type Mid = ((i64, i64), u8);

fn sign_bits(field: &QuadraticField, u: &QuadInteger, infinity: bool) -> u8 {
    if !(infinity && field.is_real()) {
        return 0;
    }
    let mut bits = 0;
    if field.real_sign(u, false) < 0 {
        bits |= 1;
    }
    if field.real_sign(u, true) < 0 {
        bits |= 2;
    }
    bits
}

fn group_rank(inv: &[u64], q: u64) -> u32 {
    inv.iter().filter(|&&n| n % q == 0).count() as u32
}

/// A prime form `(ℓ, b, c)` with `ℓ ≠ p` whose class generates `Cl(K)`, when
/// `Cl(K)` is cyclic.
fn generating_prime_form(cl: &FormClassGroup, p: u64) -> Option<Form> {
    if cl.invariants.len() != 1 {
        return None;
    }
    let disc = cl.disc;
    for l in 2..10_000u64 {
        if l == p || !is_prime_u64(l) || kronecker_i64(disc, l as i64) == -1 {
            continue;
        }
        let l = l as i64;
        let Some(b) = (0..2 * l).find(|b| (b * b - disc).rem_euclid(4 * l) == 0) else { continue };
        let f = Form::new(l, b, (b * b - disc) / (4 * l));
        let idx = cl.class_of(&f);
        let mut cur = idx;
        let mut ord = 1;
        let id = cl.class_of(&Form::principal(disc));
        while cur != id {
            cur = cl.compose_classes(cur, idx);
            ord += 1;
        }
        if ord == cl.order {
            return Some(f);
        }
    }
    None
}

fn omega_times(field: &QuadraticField, (x, y): (i64, i64)) -> (i64, i64) {
    (-y * field.omega_norm(), x + y * field.omega_trace())
}

fn lattice_basis(l: &Lattice) -> [(i64, i64); 2] {
    [(l.a, 0), (l.b, l.c)]
}

fn mul_vec(field: &QuadraticField, x: (i64, i64), y: (i64, i64)) -> (i64, i64) {
    let (t, n) = (field.omega_trace(), field.omega_norm());
    let bb = x.1 * y.1;
    (x.0 * y.0 - n * bb, x.0 * y.1 + x.1 * y.0 + t * bb)
}

/// A generator of the principal ideal `𝔞^h` for the ideal of the form `f`
/// in an imaginary field (positive-definite norm search).
fn principal_generator(field: &QuadraticField, f: &Form, h: u64) -> Option<QuadInteger> {
    let p0 = field.omega_trace();
    let beta = ((-f.b - p0) / 2, 1);
    let a = Lattice::span(&[(f.a, 0), omega_times(field, (f.a, 0)), beta, omega_times(field, beta)]);
    let mut pow = a;
    for _ in 1..h {
        let mut gens = Vec::new();
        for x in lattice_basis(&pow) {
            for y in lattice_basis(&a) {
                gens.push(mul_vec(field, x, y));
            }
        }
        pow = Lattice::span(&gens);
    }
    let target = (f.a as i128).pow(h as u32);
    let (t, n) = (field.omega_trace() as i128, field.omega_norm() as i128);
    let disc = field.disc().unsigned_abs() as f64;
    let ymax = (2.0 * (target as f64).sqrt() / disc.sqrt()).ceil() as i64 + 1;
    let xmax = (target as f64).sqrt().ceil() as i64 + ymax + 1;
    for v in -(ymax / pow.c + 1)..=(ymax / pow.c + 1) {
        let y = v * pow.c;
        for x in -xmax..=xmax {
            if (x - v * pow.b).rem_euclid(pow.a) != 0 {
                continue;
            }
            let (xx, yy) = (x as i128, y as i128);
            if xx * xx + xx * yy * t + yy * yy * n == target {
                return Some(QuadInteger::new(x, y));
            }
        }
    }
    None
}

/// Order and rank data of `Cl(K, 𝔭^k m_∞)`.
pub fn ray_class_group(field: &QuadraticField, p: u64, k: u32, include_infinity: bool) -> Result<RayClassReport> {
    let ring = ResidueRing::new(field, p, k)?;
    let cl = class_group(field)?;
    let units = unit_group(field)?;
    let residues = ring.units();
    let sign_count: u8 = if include_infinity && field.is_real() { 4 } else { 1 };
    let mut elements: Vec<Mid> = Vec::with_capacity(residues.len() * sign_count as usize);
    for &r in &residues {
        for s in 0..sign_count {
            elements.push((r, s));
        }
    }
    let one = ring.reduce(&QuadInteger::one());
    let middle = AbelianGroup::new(elements, (one, 0u8), |x: Mid, y: Mid| (ring.mul(x.0, y.0), x.1 ^ y.1));
    let mut gens = vec![QuadInteger::new(-1, 0), units.torsion_generator.clone()];
    if let Some(e) = &units.fundamental {
        gens.push(e.clone());
    }
    let image: Vec<Mid> = gens
        .iter()
        .map(|u| (ring.reduce(u), sign_bits(field, u, include_infinity)))
        .collect();
    let h_sub = middle.closure(&image);
    let quotient = middle.quotient_invariants(&h_sub);
    let residue_units = ring.unit_group().invariant_factors();
    let q_order = middle.order() / h_sub.len() as u64;
    let order = cl.order * q_order;

    let mut structure = None;
    let mut assembly = Assembly::Bounded;
    if cl.order == 1 {
        structure = Some(quotient.clone());
        assembly = Assembly::Quotient;
    } else if !field.is_real() {
        if let Some(ext) = assemble_extension(field, &ring, &cl, &middle, &h_sub, p)? {
            debug_assert_eq!(ext.iter().product::<u64>(), order);
            structure = Some(ext);
            assembly = Assembly::Extension;
        }
    }

    let mut q_ranks = BTreeMap::new();
    for q in [2u64, 3] {
        let info = match &structure {
            Some(s) => RankInfo::exact(group_rank(s, q)),
            None => {
                let rq = group_rank(&quotient, q);
                let rc = group_rank(&cl.invariants, q);
                if cl.order % q != 0 {
                    RankInfo::exact(rq)
                } else if !q_order.is_multiple_of(q) {
                    RankInfo::exact(rc)
                } else {
                    let (lower, upper) = (rq.max(rc), rq + rc);
                    RankInfo { lower, upper, exact: lower == upper }
                }
            }
        };
        q_ranks.insert(q, info);
    }
    Ok(RayClassReport {
        d: field.d(),
        disc: field.disc(),
        p,
        k,
        include_infinity,
        class_number: cl.order,
        class_group: cl.invariants.clone(),
        residue_units,
        middle_order: middle.order(),
        unit_image_order: h_sub.len() as u64,
        order,
        quotient,
        structure,
        assembly,
        q_ranks,
    })
}

/// `Cl(K, 𝔪) ≅ (M × Z/hN) / ⟨H × 0, (ᾱ^{-1}, h)⟩` where `𝔞` generates a
/// cyclic `Cl(K)`, `𝔞^h = (α)` and `N` is the order of `ᾱ` in `M`.
fn assemble_extension<F>(
    field: &QuadraticField,
    ring: &ResidueRing,
    cl: &FormClassGroup,
    middle: &AbelianGroup<Mid, F>,
    h_sub: &HashSet<Mid>,
    p: u64,
) -> Result<Option<Vec<u64>>>
where
    F: Fn(Mid, Mid) -> Mid,
{
    let Some(form) = generating_prime_form(cl, p) else { return Ok(None) };
    let h = cl.order;
    let Some(alpha) = principal_generator(field, &form, h) else { return Ok(None) };
    let abar: Mid = (ring.reduce(&alpha), 0);
    let n = middle.element_order(abar);
    let cyc = h * n;
    if middle.order() * cyc > EXTENSION_BUDGET {
        return Ok(None);
    }
    let inv = middle.pow(abar, n - 1);
    type Ext = (Mid, u64);
    let mut elems: Vec<Ext> = Vec::with_capacity((middle.order() * cyc) as usize);
    for &m in middle.elements() {
        for i in 0..cyc {
            elems.push((m, i));
        }
    }
    let ext = AbelianGroup::new(elems, (middle.identity(), 0), |x: Ext, y: Ext| {
        (middle.op(x.0, y.0), (x.1 + y.1) % cyc)
    });
    let mut rel: Vec<Ext> = h_sub.iter().map(|&m| (m, 0)).collect();
    rel.push((inv, h));
    // closure from a generating set: H itself is already a subgroup
    let gens: Vec<Ext> = rel;
    let sub = ext.closure(&gens);
    Ok(Some(ext.quotient_invariants(&sub)))
}

#[derive(Debug, Clone, Serialize)]
pub struct Prop2Row {
    pub k: u32,
    pub order: u64,
    pub two_group: bool,
}

/// Ray class orders at `𝔭^k m_∞` (𝔭 above 2) for `k ≤ k_max`.
pub fn verify_prop2(d: i64, k_max: u32) -> Result<Vec<Prop2Row>> {
    let field = QuadraticField::new(d)?;
    (1..=k_max)
        .map(|k| {
            let r = ray_class_group(&field, 2, k, true)?;
            Ok(Prop2Row { k, order: r.order, two_group: r.is_q_group(2) })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Stabilization {
    pub d: i64,
    pub p: u64,
    /// `p`-rank of the ray class group at each `k`.
    pub ray_ranks: Vec<(u32, RankInfo)>,
    /// `p`-rank of `(O/𝔭^k)^*` at each `k`.
    pub residue_ranks: Vec<(u32, u32)>,
    /// Smallest `k0` with constant ray class rank on `[k0, k0+3]`.
    pub k0: Option<u32>,
    pub residue_k0: Option<u32>,
    /// `e + e₁ + 1`: the residue-rank formula is constant from here on.
    pub predicted_k0: u32,
}

fn first_stable<T: PartialEq>(v: &[(u32, T)]) -> Option<u32> {
    v.windows(4).find(|w| w.iter().all(|x| x.1 == w[0].1)).map(|w| w[0].0)
}

/// Ranks for `k ≤ k_max` (and within the ring budget).
pub fn check_rank_stabilization(field: &QuadraticField, p: u64, k_max: u32) -> Result<Stabilization> {
    let s = field.splitting(p);
    if s.kind == SplitKind::Split {
        return Err(Error::Unsupported(format!("{p} splits in {field}")));
    }
    let mut ray_ranks = Vec::new();
    let mut residue_ranks = Vec::new();
    let mut k = 1;
    while (p as u128).pow(s.f * k) <= RING_BUDGET as u128 && k <= k_max {
        let r = ray_class_group(field, p, k, true)?;
        ray_ranks.push((k, r.q_ranks[&p]));
        residue_ranks.push((k, group_rank(&r.residue_units, p)));
        k += 1;
    }
    let e1 = s.e as u64 / (p - 1);
    Ok(Stabilization {
        d: field.d(),
        p,
        k0: first_stable(&ray_ranks),
        residue_k0: first_stable(&residue_ranks),
        predicted_k0: (s.e as u64 + e1 + 1) as u32,
        ray_ranks,
        residue_ranks,
    })
}

/// Formula rank `R_n` against the enumerated rank of `(O/𝔭^{n+1})^*`.
pub fn nakagoshi_check(field: &QuadraticField, p: u64, n: u32) -> Result<(u64, u32)> {
    let ring = ResidueRing::new(field, p, n + 1)?;
    let inv = ring.unit_group().invariant_factors();
    Ok((field_rank(field, p, n as u64), group_rank(&inv, p)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rc(d: i64, p: u64, k: u32) -> RayClassReport {
        ray_class_group(&QuadraticField::new(d).unwrap(), p, k, true).unwrap()
    }

    #[test]
    fn orders_are_consistent() {
        for d in [6, 5, 3, 2, -1, -2, -3, -5, -6] {
            for k in 1..=4 {
                let r = rc(d, 2, k);
                assert_eq!(r.order * r.unit_image_order, r.class_number * r.middle_order);
                assert!(r.is_q_group(2), "d={d} k={k} order={}", r.order);
            }
        }
    }

    #[test]
    fn three_rank_zero() {
        assert_eq!(rc(5, 2, 1).q_ranks[&3], RankInfo::exact(0));
        assert_eq!(rc(-3, 2, 1).q_ranks[&3], RankInfo::exact(0));
        for k in 1..=5 {
            assert!(rc(-3, 3, k).is_q_group(3));
        }
    }

    #[test]
    fn extension_for_nontrivial_class_group() {
        let r = rc(-5, 2, 3);
        assert_eq!(r.assembly, Assembly::Extension);
        assert!(r.q_ranks[&2].exact);
    }
}
