//! Finite abelian groups given by an explicit element list and a group law.
//!
//! Structure is recovered from order statistics only: for each prime `q`,
//! the sizes of the `q^j`-torsion subgroups determine the `q`-primary part.

use std::collections::{BTreeMap, HashSet};
use std::hash::Hash;

use super::integer::primes_up_to;

pub struct AbelianGroup<E, F> {
    elements: Vec<E>,
    identity: E,
    op: F,
}

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in primes_up_to(((n as f64).sqrt() as u64) + 1) {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn ilog(q: u64, mut n: u64) -> u32 {
    let mut e = 0;
    while n > 1 {
        debug_assert!(n.is_multiple_of(q), "count is not a power of {q}");
        n /= q;
        e += 1;
    }
    e
}

/// Combine per-prime cyclic factor orders into invariant factors
/// `d_1 | d_2 | ... | d_r`, ascending, without trivial factors.
fn combine(primary: &BTreeMap<u64, Vec<u32>>) -> Vec<u64> {
    let r = primary.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; r];
    for (&q, exps) in primary {
        // exps descending; align to the top invariant factor
        for (i, &e) in exps.iter().enumerate() {
            out[r - 1 - i] *= q.pow(e);
        }
    }
    out
}

impl<E, F> AbelianGroup<E, F>
where
    E: Copy + Eq + Hash,
    F: Fn(E, E) -> E,
{
    pub fn new(elements: Vec<E>, identity: E, op: F) -> Self {
        AbelianGroup { elements, identity, op }
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn identity(&self) -> E {
        self.identity
    }

    pub fn op(&self, a: E, b: E) -> E {
        (self.op)(a, b)
    }

    pub fn pow(&self, mut x: E, mut n: u64) -> E {
        let mut acc = self.identity;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.op(acc, x);
            }
            x = self.op(x, x);
            n >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: E) -> u64 {
        let mut ord = self.order();
        for (q, _) in prime_factors(self.order()) {
            while ord.is_multiple_of(q) && self.pow(x, ord / q) == self.identity {
                ord /= q;
            }
        }
        ord
    }

    /// Subgroup generated by `gens`, by breadth-first closure.
    pub fn closure(&self, gens: &[E]) -> HashSet<E> {
        let mut set = HashSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.op(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    /// For each prime `q`, the descending exponents of the `q`-primary cyclic
    /// factors of `G/H`.
    fn primary_parts(&self, h: &HashSet<E>) -> BTreeMap<u64, Vec<u32>> {
        let qorder = self.order() / h.len() as u64;
        let mut out = BTreeMap::new();
        for (q, a) in prime_factors(qorder) {
            let mut cur: Vec<E> = self.elements.clone();
            // c[j] = log_q |(G/H)[q^j]|
            let mut c = vec![0u32];
            for _ in 0..a {
                cur = cur.iter().map(|&x| self.pow(x, q)).collect();
                let n = cur.iter().filter(|x| h.contains(x)).count() as u64 / h.len() as u64;
                let l = ilog(q, n);
                if l == *c.last().unwrap() {
                    break;
                }
                c.push(l);
            }
            // number of factors of order >= q^j is c[j] - c[j-1]
            let ge: Vec<u32> = c.windows(2).map(|w| w[1] - w[0]).collect();
            let mut exps = Vec::new();
            for j in 0..ge.len() {
                let next = ge.get(j + 1).copied().unwrap_or(0);
                for _ in 0..(ge[j] - next) {
                    exps.push(j as u32 + 1);
                }
            }
            exps.sort_unstable_by(|a, b| b.cmp(a));
            out.insert(q, exps);
        }
        out
    }

    /// Invariant factors `d_1 | ... | d_r` (ascending, all > 1).
    pub fn invariant_factors(&self) -> Vec<u64> {
        combine(&self.primary_parts(&HashSet::from([self.identity])))
    }

    pub fn quotient_invariants(&self, h: &HashSet<E>) -> Vec<u64> {
        combine(&self.primary_parts(h))
    }

    /// `q`-rank, i.e. `log_q |G[q]|`.
    pub fn rank(&self, q: u64) -> u32 {
        self.quotient_rank(&HashSet::from([self.identity]), q)
    }

    /// `q`-rank of `G/H`: `log_q #{x : x^q ∈ H} / |H|`.
    pub fn quotient_rank(&self, h: &HashSet<E>, q: u64) -> u32 {
        let n = self
            .elements
            .iter()
            .filter(|&&x| h.contains(&self.pow(x, q)))
            .count() as u64;
        ilog(q, n / h.len() as u64)
    }

    /// Independent generators whose orders are the invariant factors, in the
    /// same (ascending) order.
    pub fn generators(&self) -> Vec<E> {
        let inv = self.invariant_factors();
        let mut chosen: Vec<E> = Vec::new();
        let mut span = HashSet::from([self.identity]);
        for &d in inv.iter().rev() {
            let primes = prime_factors(d);
            let x = self
                .elements
                .iter()
                .copied()
                .find(|&x| {
                    self.element_order(x) == d
                        && primes
                            .iter()
                            .all(|&(q, _)| !span.contains(&self.pow(x, d / q)))
                })
                .expect("an independent element of each invariant order exists");
            chosen.push(x);
            span = self.closure(&chosen);
        }
        chosen.reverse();
        chosen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// (Z/a × Z/b) encoded as pairs.
    fn product(a: u64, b: u64) -> AbelianGroup<(u64, u64), impl Fn((u64, u64), (u64, u64)) -> (u64, u64)> {
        let elems = (0..a).flat_map(|x| (0..b).map(move |y| (x, y))).collect();
        AbelianGroup::new(elems, (0, 0), move |p: (u64, u64), q: (u64, u64)| {
            ((p.0 + q.0) % a, (p.1 + q.1) % b)
        })
    }

    #[test]
    fn invariants_of_products() {
        assert_eq!(product(4, 6).invariant_factors(), vec![2, 12]);
        assert_eq!(product(8, 2).invariant_factors(), vec![2, 8]);
        assert_eq!(product(3, 5).invariant_factors(), vec![15]);
        assert_eq!(product(1, 1).invariant_factors(), Vec::<u64>::new());
        assert_eq!(product(4, 6).rank(2), 2);
        assert_eq!(product(4, 6).rank(3), 1);
    }

    #[test]
    fn units_mod_n() {
        // (Z/16)^* = Z/2 × Z/4, (Z/7)^* cyclic
        let g = AbelianGroup::new(vec![1u64, 3, 5, 7, 9, 11, 13, 15], 1, |a, b| a * b % 16);
        assert_eq!(g.invariant_factors(), vec![2, 4]);
        let gens = g.generators();
        assert_eq!(g.closure(&gens).len(), 8);
        assert_eq!(g.element_order(gens[0]), 2);
        assert_eq!(g.element_order(gens[1]), 4);
    }

    #[test]
    fn quotients() {
        let g = product(4, 6);
        let h = g.closure(&[(2, 0)]);
        assert_eq!(g.quotient_invariants(&h), vec![2, 6]);
        assert_eq!(g.quotient_rank(&h, 2), 2);
        let h = g.closure(&[(1, 1)]);
        assert_eq!(g.quotient_invariants(&h), vec![2]);
    }
}
