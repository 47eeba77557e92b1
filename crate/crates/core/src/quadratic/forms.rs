//! Binary quadratic forms `(a, b, c)` of a fundamental discriminant and the
//! class groups they compute.

use std::collections::HashMap;
use std::fmt;

use num_integer::{Integer as _, Roots};
use serde::Serialize;

use super::field::QuadraticField;
use crate::arith::abelian::AbelianGroup;
use crate::error::{Error, Result};

/// Largest `|disc|` handled by enumeration.
pub const DISC_LIMIT: i64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

impl Form {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Form { a, b, c }
    }

    pub fn disc(&self) -> i64 {
        let d = self.b as i128 * self.b as i128 - 4 * self.a as i128 * self.c as i128;
        d as i64
    }

    pub fn principal(disc: i64) -> Self {
        let b = disc.rem_euclid(2);
        Form { a: 1, b, c: (b * b - disc) / 4 }
    }

    pub fn inverse(&self) -> Self {
        Form { a: self.a, b: -self.b, c: self.c }
    }

    /// `(a, b, c) ↦ (−a, b, −c)`, representing the negatives.
    pub fn negate(&self) -> Self {
        Form { a: -self.a, b: self.b, c: -self.c }
    }

    fn from_ab(a: i128, b: i128, disc: i128) -> Self {
        let num = b * b - disc;
        debug_assert!(num % (4 * a) == 0, "c is not integral");
        Form { a: a as i64, b: b as i64, c: (num / (4 * a)) as i64 }
    }

    pub fn is_reduced(&self) -> bool {
        let d = self.disc();
        if d < 0 {
            let (a, b, c) = (self.a, self.b, self.c);
            a > 0 && b.abs() <= a && a <= c && !(b < 0 && (b.abs() == a || a == c))
        } else {
            let s = d.sqrt();
            let (a2, b) = (2 * self.a.abs(), self.b);
            0 < b && b <= s && s - b < a2 && a2 <= s + b
        }
    }

    /// Gauss composition (unreduced), valid for either sign of the discriminant.
    pub fn compose(&self, other: &Self) -> Self {
        let disc = self.disc() as i128;
        debug_assert_eq!(disc, other.disc() as i128);
        let (a1, b1) = (self.a as i128, self.b as i128);
        let (a2, b2) = (other.a as i128, other.b as i128);
        let s = (b1 + b2) / 2;
        let (g1, u1, v1) = ext_gcd(a1, a2);
        let (g, x, w) = ext_gcd(g1, s);
        let (u, v) = (x * u1, x * v1);
        let a3 = a1 * a2 / (g * g);
        let b3 = (u * a1 * b2 + v * a2 * b1 + w * (b1 * b2 + disc) / 2) / g;
        let m = 2 * a3.abs();
        Self::from_ab(a3, b3.rem_euclid(m), disc)
    }

    /// Reduce to the canonical representative (definite) or to some reduced
    /// form in the same cycle (indefinite).
    pub fn reduce(&self) -> Self {
        let d = self.disc();
        if d < 0 {
            self.reduce_definite()
        } else {
            let mut f = *self;
            for _ in 0..10_000 {
                if f.is_reduced() {
                    return f;
                }
                f = f.rho();
            }
            panic!("indefinite reduction did not terminate for {self}");
        }
    }

    fn normalize(&self) -> Self {
        let disc = self.disc() as i128;
        let a = self.a as i128;
        let mut r = (self.b as i128).rem_euclid(2 * a);
        if r > a {
            r -= 2 * a;
        }
        Self::from_ab(a, r, disc)
    }

    fn reduce_definite(&self) -> Self {
        let mut f = *self;
        loop {
            f = f.normalize();
            if f.a > f.c {
                f = Form { a: f.c, b: -f.b, c: f.a };
                continue;
            }
            if f.a == f.c && f.b < 0 {
                f.b = -f.b;
            }
            return f;
        }
    }

    /// One reduction step for indefinite forms.
    pub fn rho(&self) -> Self {
        let disc = self.disc() as i128;
        let s = disc.sqrt();
        let c = self.c as i128;
        let m = 2 * c.abs();
        let b = self.b as i128;
        let r = if c.abs() <= s {
            s - (s + b).rem_euclid(m)
        } else {
            let mut r = (-b).rem_euclid(m);
            if r > c.abs() {
                r -= m;
            }
            r
        };
        Self::from_ab(c, r, disc)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// All reduced forms of discriminant `disc`.
pub fn reduced_forms(disc: i64) -> Result<Vec<Form>> {
    if disc.abs() > DISC_LIMIT {
        return Err(Error::Budget(format!("|disc| = {} exceeds {DISC_LIMIT}", disc.abs())));
    }
    let mut out = Vec::new();
    if disc < 0 {
        let amax = (disc.abs() / 3).sqrt() + 1;
        for a in 1..=amax {
            for b in -a + 1..=a {
                if (b - disc).rem_euclid(2) != 0 {
                    continue;
                }
                let num = b * b - disc;
                if num % (4 * a) != 0 {
                    continue;
                }
                let f = Form::new(a, b, num / (4 * a));
                if f.is_reduced() && a.gcd(&b).gcd(&f.c) == 1 {
                    out.push(f);
                }
            }
        }
    } else {
        let s = disc.sqrt();
        for b in 1..=s {
            if (b - disc).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - disc;
            for a_abs in (s - b) / 2 + 1..=(s + b) / 2 {
                if a_abs == 0 || num % (4 * a_abs) != 0 {
                    continue;
                }
                for a in [a_abs, -a_abs] {
                    let f = Form::new(a, b, num / (4 * a));
                    if f.is_reduced() && a.gcd(&b).gcd(&f.c) == 1 {
                        out.push(f);
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct FormClassGroup {
    pub disc: i64,
    /// Class number `h` (wide sense).
    pub order: u64,
    pub invariants: Vec<u64>,
    /// Narrow class number (equals `order` for imaginary fields).
    pub narrow_order: u64,
    pub narrow_invariants: Vec<u64>,
    /// One reduced form per narrow class.
    pub representatives: Vec<Form>,
    /// Whether `(−1)·principal` is principal: real fields only, and equivalent
    /// to the fundamental unit having norm −1.
    pub minus_one_is_norm: Option<bool>,
}

impl FormClassGroup {
    /// Narrow class index of a form of the same discriminant.
    pub fn class_of(&self, f: &Form) -> usize {
        let r = f.reduce();
        if self.disc < 0 {
            return self.representatives.binary_search(&r).expect("reduced form is listed");
        }
        // walk the cycle until a representative appears
        let mut g = r;
        loop {
            if let Ok(i) = self.representatives.binary_search(&g) {
                return i;
            }
            g = g.rho();
        }
    }

    pub fn compose_classes(&self, i: usize, j: usize) -> usize {
        self.class_of(&self.representatives[i].compose(&self.representatives[j]))
    }
}

/// Class group of `K` via reduced forms.
pub fn class_group(field: &QuadraticField) -> Result<FormClassGroup> {
    let disc = field.disc();
    let forms = reduced_forms(disc)?;
    let representatives: Vec<Form> = if disc < 0 {
        forms
    } else {
        // one representative (the smallest) per ρ-cycle
        let index: HashMap<Form, usize> = forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let mut seen = vec![false; forms.len()];
        let mut reps = Vec::new();
        for i in 0..forms.len() {
            if seen[i] {
                continue;
            }
            let mut best = forms[i];
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                best = best.min(forms[j]);
                j = index[&forms[j].rho()];
            }
            reps.push(best);
        }
        reps.sort();
        reps
    };
    let mut group = FormClassGroup {
        disc,
        order: 0,
        invariants: Vec::new(),
        narrow_order: representatives.len() as u64,
        narrow_invariants: Vec::new(),
        representatives,
        minus_one_is_norm: None,
    };
    let ids: Vec<usize> = (0..group.representatives.len()).collect();
    let identity = group.class_of(&Form::principal(disc));
    let g = &group;
    let ab = AbelianGroup::new(ids, identity, |i, j| g.compose_classes(i, j));
    let narrow_invariants = ab.invariant_factors();
    let (order, invariants, minus) = if disc < 0 {
        (ab.order(), narrow_invariants.clone(), None)
    } else {
        let j = g.class_of(&Form::principal(disc).negate());
        let h = ab.closure(&[j]);
        (ab.order() / h.len() as u64, ab.quotient_invariants(&h), Some(j == identity))
    };
    group.narrow_invariants = narrow_invariants;
    group.order = order;
    group.invariants = invariants;
    group.minus_one_is_norm = minus;
    Ok(group)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(d: i64) -> (u64, u64) {
        let g = class_group(&QuadraticField::new(d).unwrap()).unwrap();
        (g.order, g.narrow_order)
    }

    #[test]
    fn small_imaginary() {
        assert_eq!(reduced_forms(-20).unwrap(), vec![Form::new(1, 0, 5), Form::new(2, 2, 3)]);
        assert_eq!(reduced_forms(-4).unwrap(), vec![Form::new(1, 0, 1)]);
        assert_eq!(h(-5), (2, 2));
        assert_eq!(h(-23), (3, 3));
        assert_eq!(h(-14), (4, 4));
        let g = class_group(&QuadraticField::new(-21).unwrap()).unwrap();
        assert_eq!(g.invariants, vec![2, 2]);
    }

    #[test]
    fn small_real() {
        assert_eq!(h(2), (1, 1));
        assert_eq!(h(3), (1, 2));
        assert_eq!(h(6), (1, 2));
        assert_eq!(h(10), (2, 2));
        assert_eq!(h(79), (3, 6));
        assert_eq!(h(82), (4, 4));
    }

    #[test]
    fn composition_identity_and_inverse() {
        for disc in [-20i64, -84, -23, 12, 40, 316] {
            let p = Form::principal(disc);
            for f in reduced_forms(disc).unwrap() {
                let g = class_group(&QuadraticField::new(if disc % 4 == 0 { disc / 4 } else { disc }).unwrap()).unwrap();
                assert_eq!(g.class_of(&f.compose(&p)), g.class_of(&f));
                assert_eq!(g.class_of(&f.compose(&f.inverse())), g.class_of(&p));
            }
        }
    }
}
