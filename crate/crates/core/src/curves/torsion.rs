//! The 2-division field `K(E[2])` and the mod-2 image in `GL2(F2)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::element::{rational_sqrt, QuadElement};
use super::model::{curve_invariants, CurveModel};
use crate::arith::poly::IntPolynomial;
use crate::arith::zfactor::factor_over_z;
use crate::error::{Error, Result};
use crate::quadratic::QuadraticField;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CubicSplitting {
    #[serde(rename = "(1,1,1)")]
    Linear,
    #[serde(rename = "(1,2)")]
    LinearQuadratic,
    #[serde(rename = "(3)")]
    Irreducible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Gl2Image {
    #[serde(rename = "trivial")]
    Trivial,
    C2,
    C3,
    S3,
}

impl Gl2Image {
    pub fn order(self) -> u32 {
        match self {
            Gl2Image::Trivial => 1,
            Gl2Image::C2 => 2,
            Gl2Image::C3 => 3,
            Gl2Image::S3 => 6,
        }
    }

    /// Containment up to conjugacy in `GL2(F2) ≅ S3`.
    pub fn is_subgroup_of(self, other: Gl2Image) -> bool {
        other.order().is_multiple_of(self.order())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoTorsionReport {
    pub splitting: CubicSplitting,
    pub image: Gl2Image,
    /// `x`-coordinates of the rational 2-torsion points.
    pub roots: Vec<QuadElement>,
    pub cubic_disc: QuadElement,
    pub disc_is_square: bool,
}

type KPoly = Vec<QuadElement>;

fn kpoly_mul(a: &KPoly, b: &KPoly, k: &QuadraticField) -> KPoly {
    let mut out = vec![QuadElement::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y, k));
        }
    }
    out
}

fn kpoly_eval(a: &KPoly, x: &QuadElement, k: &QuadraticField) -> QuadElement {
    a.iter().rev().fold(QuadElement::zero(), |acc, c| acc.mul(x, k).add(c))
}

fn to_int_poly(coeffs: &[BigRational]) -> IntPolynomial {
    let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let d = BigRational::from_integer(den);
    IntPolynomial::new(coeffs.iter().map(|c| (c * &d).to_integer()).collect())
}

/// `b² c² − 4ac³ − 4b³d − 27a²d² + 18abcd` for `a x³ + b x² + c x + d`.
fn cubic_disc(c: &KPoly, k: &QuadraticField) -> QuadElement {
    let (d, cc, b, a) = (&c[0], &c[1], &c[2], &c[3]);
    let m = |x: &QuadElement, y: &QuadElement| x.mul(y, k);
    let b2 = m(b, b);
    let c2 = m(cc, cc);
    m(&b2, &c2)
        .sub(&m(a, &m(&c2, cc)).scale_int(4))
        .sub(&m(&m(&b2, b), d).scale_int(4))
        .sub(&m(&m(a, a), &m(d, d)).scale_int(27))
        .add(&m(&m(a, b), &m(cc, d)).scale_int(18))
}

/// Distinct roots in `K` of a polynomial over `K`, through the factors of its
/// norm over `Q`.
pub fn roots_in_field(g: &KPoly, k: &QuadraticField) -> Result<Vec<QuadElement>> {
    let conj: KPoly = g.iter().map(|c| c.conj(k)).collect();
    let norm = kpoly_mul(g, &conj, k);
    debug_assert!(norm.iter().all(QuadElement::is_rational));
    let nz = to_int_poly(&norm.iter().map(|c| c.x.clone()).collect::<Vec<_>>());
    let mut roots: Vec<QuadElement> = Vec::new();
    for (h, _) in factor_over_z(&nz)?.factors {
        let cands = match h.deg() {
            1 => vec![QuadElement::rational(BigRational::new(-h.coeff(0), h.coeff(1)))],
            2 => {
                let (a, b, c) = (h.coeff(2), h.coeff(1), h.coeff(0));
                let delta = QuadElement::rational(BigRational::from_integer(&b * &b - BigInt::from(4) * &a * &c));
                match delta.sqrt(k) {
                    Some(s) => {
                        let den = BigRational::from_integer(BigInt::from(2) * &a).recip();
                        let mb = QuadElement::rational(BigRational::from_integer(-b));
                        vec![mb.add(&s).scale(&den), mb.sub(&s).scale(&den)]
                    }
                    None => vec![],
                }
            }
            _ => vec![],
        };
        for r in cands {
            if kpoly_eval(g, &r, k).is_zero() && !roots.contains(&r) {
                roots.push(r);
            }
        }
    }
    roots.sort_by(|a, b| (&a.x, &a.y).cmp(&(&b.x, &b.y)));
    Ok(roots)
}

fn division_cubic(e: &CurveModel) -> Result<KPoly> {
    let inv = curve_invariants(e)?;
    Ok(vec![inv.b6.clone(), inv.b4.scale_int(2), inv.b2.clone(), QuadElement::from_ints(4, 0)])
}

fn classify(n_roots: usize, disc_square: bool) -> (CubicSplitting, Gl2Image) {
    match (n_roots, disc_square) {
        (3, _) => (CubicSplitting::Linear, Gl2Image::Trivial),
        (1, _) => (CubicSplitting::LinearQuadratic, Gl2Image::C2),
        (_, true) => (CubicSplitting::Irreducible, Gl2Image::C3),
        (_, false) => (CubicSplitting::Irreducible, Gl2Image::S3),
    }
}

/// Factor `4x³ + b2 x² + 2b4 x + b6` over `K`.
pub fn two_torsion_field(e: &CurveModel, k: &QuadraticField) -> Result<TwoTorsionReport> {
    if k.d() != e.d {
        return Err(Error::domain(format!("curve is over Q(√{}), not Q(√{})", e.d, k.d())));
    }
    let cubic = division_cubic(e)?;
    let roots = roots_in_field(&cubic, k)?;
    let disc = cubic_disc(&cubic, k);
    let disc_is_square = disc.is_square(k);
    let (splitting, image) = classify(roots.len(), disc_is_square);
    Ok(TwoTorsionReport { splitting, image, roots, cubic_disc: disc, disc_is_square })
}

/// Mod-2 image over `Q` for a model with rational coefficients.
pub fn two_torsion_image_over_q(e: &CurveModel) -> Result<Gl2Image> {
    if !e.coefficients().iter().all(|a| a.is_rational()) {
        return Err(Error::domain("model is not defined over Q"));
    }
    let k = e.field()?;
    let cubic = division_cubic(e)?;
    let rat: Vec<BigRational> = cubic.iter().map(|c| c.x.clone()).collect();
    let n = factor_over_z(&to_int_poly(&rat))?.factors.iter().filter(|(h, _)| h.deg() == 1).count();
    let disc = cubic_disc(&cubic, &k).x;
    Ok(classify(n, rational_sqrt(&disc).is_some()).1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(d: i64) -> QuadraticField {
        QuadraticField::new(d).unwrap()
    }

    #[test]
    fn full_two_torsion() {
        let r = two_torsion_field(&CurveModel::from_rational(-1, [0, 0, 0, -1, 0]), &k(-1)).unwrap();
        assert_eq!(r.splitting, CubicSplitting::Linear);
        assert_eq!(r.image, Gl2Image::Trivial);
        assert_eq!(r.roots.len(), 3);
    }

    #[test]
    fn cube_root_of_two() {
        let r = two_torsion_field(&CurveModel::from_rational(2, [0, 0, 0, 0, -2]), &k(2)).unwrap();
        assert_eq!(r.splitting, CubicSplitting::Irreducible);
        assert_eq!(r.image, Gl2Image::S3);
        let r = two_torsion_field(&CurveModel::from_rational(-3, [0, 0, 0, 0, -2]), &k(-3)).unwrap();
        assert_eq!(r.image, Gl2Image::C3);
    }

    #[test]
    fn one_rational_point() {
        let r = two_torsion_field(&CurveModel::from_rational(5, [0, 1, 0, 1, 0]), &k(5)).unwrap();
        assert_eq!(r.splitting, CubicSplitting::LinearQuadratic);
        assert_eq!(r.image, Gl2Image::C2);
        // x^2 + x + 1 splits over Q(√-3)
        let r = two_torsion_field(&CurveModel::from_rational(-3, [0, 1, 0, 1, 0]), &k(-3)).unwrap();
        assert_eq!(r.image, Gl2Image::Trivial);
    }

    #[test]
    fn irrational_roots_found() {
        // x(x^2 - 2) over Q(√2)
        let r = two_torsion_field(&CurveModel::from_rational(2, [0, 0, 0, -2, 0]), &k(2)).unwrap();
        assert_eq!(r.roots.len(), 3);
        // coefficients outside Q: y^2 = x(x - √2)(x + 1)
        let kk = k(2);
        let s2 = QuadElement::from_ints(0, 1);
        let one = QuadElement::one();
        let a2 = one.sub(&s2);
        let a4 = s2.neg();
        let e = CurveModel::new(2, [QuadElement::zero(), a2, QuadElement::zero(), a4, QuadElement::zero()]);
        let r = two_torsion_field(&e, &kk).unwrap();
        assert_eq!(r.image, Gl2Image::Trivial);
    }
}
