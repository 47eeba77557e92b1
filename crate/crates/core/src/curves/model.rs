//! Long Weierstrass models over quadratic fields.

use serde::{Deserialize, Serialize};

use super::element::QuadElement;
use crate::error::{Error, Result};
use crate::quadratic::QuadraticField;

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` over `Q(√d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveModel {
    pub d: i64,
    pub a1: QuadElement,
    pub a2: QuadElement,
    pub a3: QuadElement,
    pub a4: QuadElement,
    pub a6: QuadElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Invariants {
    pub b2: QuadElement,
    pub b4: QuadElement,
    pub b6: QuadElement,
    pub b8: QuadElement,
    pub c4: QuadElement,
    pub c6: QuadElement,
    pub delta: QuadElement,
}

/// `x = u²x' + r`, `y = u³y' + s·u²x' + t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelChange {
    pub u: QuadElement,
    pub r: QuadElement,
    pub s: QuadElement,
    pub t: QuadElement,
}

impl CurveModel {
    pub fn new(d: i64, a: [QuadElement; 5]) -> Self {
        let [a1, a2, a3, a4, a6] = a;
        CurveModel { d, a1, a2, a3, a4, a6 }
    }

    /// A model with rational integer coefficients `[a1, a2, a3, a4, a6]`.
    pub fn from_rational(d: i64, a: [i64; 5]) -> Self {
        Self::new(d, a.map(|x| QuadElement::from_ints(x, 0)))
    }

    /// `y^2 = x^3 + a4 x + a6`.
    pub fn short(d: i64, a4: QuadElement, a6: QuadElement) -> Self {
        Self::new(d, [QuadElement::zero(), QuadElement::zero(), QuadElement::zero(), a4, a6])
    }

    pub fn field(&self) -> Result<QuadraticField> {
        QuadraticField::new(self.d)
    }

    pub fn coefficients(&self) -> [&QuadElement; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn is_integral(&self) -> bool {
        self.coefficients().iter().all(|a| a.is_integral())
    }

    /// Apply a change of variables; `u` must be nonzero.
    pub fn transform(&self, c: &ModelChange) -> Result<CurveModel> {
        let k = self.field()?;
        let m = |a: &QuadElement, b: &QuadElement| a.mul(b, &k);
        let (u, r, s, t) = (&c.u, &c.r, &c.s, &c.t);
        let ui = u.inv(&k)?;
        let upow = |e: u32| ui.pow(e, &k);
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let n1 = a1.add(&s.scale_int(2));
        let n2 = a2.sub(&m(s, a1)).add(&r.scale_int(3)).sub(&m(s, s));
        let n3 = a3.add(&m(r, a1)).add(&t.scale_int(2));
        let n4 = a4
            .sub(&m(s, a3))
            .add(&m(r, a2).scale_int(2))
            .sub(&m(&t.add(&m(r, s)), a1))
            .add(&m(r, r).scale_int(3))
            .sub(&m(s, t).scale_int(2));
        let n6 = a6
            .add(&m(r, a4))
            .add(&m(&m(r, r), a2))
            .add(&m(&m(r, r), r))
            .sub(&m(t, a3))
            .sub(&m(t, t))
            .sub(&m(&m(r, t), a1));
        Ok(CurveModel::new(self.d, [m(&n1, &upow(1)), m(&n2, &upow(2)), m(&n3, &upow(3)), m(&n4, &upow(4)), m(&n6, &upow(6))]))
    }
}

/// `b`- and `c`-invariants and the discriminant; errors on `Δ = 0`.
pub fn curve_invariants(e: &CurveModel) -> Result<Invariants> {
    let k = e.field()?;
    let m = |a: &QuadElement, b: &QuadElement| a.mul(b, &k);
    let (a1, a2, a3, a4, a6) = (&e.a1, &e.a2, &e.a3, &e.a4, &e.a6);
    let b2 = m(a1, a1).add(&a2.scale_int(4));
    let b4 = a4.scale_int(2).add(&m(a1, a3));
    let b6 = m(a3, a3).add(&a6.scale_int(4));
    let b8 = m(&m(a1, a1), a6)
        .add(&m(a2, a6).scale_int(4))
        .sub(&m(&m(a1, a3), a4))
        .add(&m(a2, &m(a3, a3)))
        .sub(&m(a4, a4));
    let c4 = m(&b2, &b2).sub(&b4.scale_int(24));
    let c6 = m(&m(&b2, &b2), &b2)
        .neg()
        .add(&m(&b2, &b4).scale_int(36))
        .sub(&b6.scale_int(216));
    let delta = m(&m(&b2, &b2), &b8)
        .neg()
        .sub(&m(&m(&b4, &b4), &b4).scale_int(8))
        .sub(&m(&b6, &b6).scale_int(27))
        .add(&m(&m(&b2, &b4), &b6).scale_int(9));
    if delta.is_zero() {
        return Err(Error::Singular);
    }
    let lhs = m(&m(&c4, &c4), &c4).sub(&m(&c6, &c6));
    assert_eq!(lhs, delta.scale_int(1728), "c4^3 - c6^2 = 1728Δ");
    Ok(Invariants { b2, b4, b6, b8, c4, c6, delta })
}

pub fn j_invariant(inv: &Invariants, k: &QuadraticField) -> Result<QuadElement> {
    let c4 = &inv.c4;
    c4.mul(c4, k).mul(c4, k).div(&inv.delta, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_discriminants() {
        let e = CurveModel::from_rational(-1, [0, 0, 0, -1, 0]);
        assert_eq!(curve_invariants(&e).unwrap().delta, QuadElement::from_ints(64, 0));
        let e = CurveModel::from_rational(5, [0, 0, 0, 0, -1]);
        assert_eq!(curve_invariants(&e).unwrap().delta, QuadElement::from_ints(-432, 0));
        let e = CurveModel::from_rational(2, [0, 0, 0, 0, 0]);
        assert_eq!(curve_invariants(&e), Err(Error::Singular));
    }

    #[test]
    fn transform_scales_discriminant() {
        let k = QuadraticField::new(-3).unwrap();
        let e = CurveModel::from_rational(-3, [1, -1, 1, 3, -5]);
        let c = ModelChange {
            u: QuadElement::from_ints(1, 1),
            r: QuadElement::from_ints(2, -1),
            s: QuadElement::from_ints(0, 3),
            t: QuadElement::from_ints(-4, 1),
        };
        let e2 = e.transform(&c).unwrap();
        let d1 = curve_invariants(&e).unwrap().delta;
        let d2 = curve_invariants(&e2).unwrap().delta;
        assert_eq!(d2.mul(&c.u.pow(12, &k), &k), d1);
    }
}
