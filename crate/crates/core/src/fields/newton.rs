//! Newton polygons of integer polynomials at a prime.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::arith::integer::valuation;
use crate::arith::poly::IntPolynomial;
use crate::error::{Error, Result};

/// One side of a lower convex hull, from `(x0, y0)` to `(x1, y1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Side {
    pub x0: u64,
    pub y0: u64,
    pub x1: u64,
    pub y1: u64,
}

impl Side {
    pub fn length(&self) -> u64 {
        self.x1 - self.x0
    }

    /// Height drop as a signed quantity (positive when the side descends).
    pub fn drop(&self) -> i64 {
        self.y0 as i64 - self.y1 as i64
    }

    /// `gcd(length, drop)`: the degree of the side.
    pub fn degree(&self) -> u64 {
        num_integer::gcd(self.length(), self.drop().unsigned_abs())
    }

    /// Denominator of the slope in lowest terms.
    pub fn ramification(&self) -> u64 {
        self.length() / self.degree()
    }

    /// Height of the side at abscissa `x` as a rational `num/length`.
    pub fn height_numerator(&self, x: u64) -> i64 {
        self.y0 as i64 * self.length() as i64 - self.drop() * (x - self.x0) as i64
    }
}

/// Lower convex hull of points `(i, v_i)`; `None` heights are at infinity.
pub fn lower_hull(points: &[Option<u64>]) -> Vec<Side> {
    let pts: Vec<(u64, u64)> = points
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i as u64, v)))
        .collect();
    let mut hull: Vec<(u64, u64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as i128 - a.0 as i128) * (pt.1 as i128 - a.1 as i128)
                - (b.1 as i128 - a.1 as i128) * (pt.0 as i128 - a.0 as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull.windows(2)
        .map(|w| Side { x0: w[0].0, y0: w[0].1, x1: w[1].0, y1: w[1].1 })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Segment {
    /// Valuation drop per unit degree, so `x^2 - 2` at 2 has slope `1/2`.
    #[serde(serialize_with = "crate::bounds::different::ser_rational")]
    pub slope: BigRational,
    pub length: u64,
}

fn coeff_valuations(f: &IntPolynomial, p: u64) -> Vec<Option<u64>> {
    let pb = BigInt::from(p);
    f.coeffs()
        .iter()
        .map(|c| (!c.is_zero()).then(|| valuation(c, &pb) as u64))
        .collect()
}

/// Newton polygon of `f` at `p` from the points `(i, v_p(a_i))`.
pub fn newton_polygon(f: &IntPolynomial, p: u64) -> Result<Vec<Segment>> {
    if f.coeff(0).is_zero() {
        return Err(Error::domain("zero constant term: shift the polynomial first"));
    }
    Ok(lower_hull(&coeff_valuations(f, p))
        .into_iter()
        .map(|s| Segment {
            slope: BigRational::new(BigInt::from(s.drop()), BigInt::from(s.length())),
            length: s.length(),
        })
        .collect())
}

/// `Some(e)` when the polygon is a single side of slope `h/e` in lowest terms.
pub fn single_slope_denominator(segments: &[Segment]) -> Option<u64> {
    match segments {
        [s] => s.slope.denom().try_into().ok(),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn eisenstein() {
        let np = newton_polygon(&p("x^2 - 2"), 2).unwrap();
        assert_eq!(np.len(), 1);
        assert_eq!(np[0].slope, BigRational::new(1.into(), 2.into()));
        assert_eq!(single_slope_denominator(&np), Some(2));
    }

    #[test]
    fn unit_constant() {
        let np = newton_polygon(&p("x^2 - 1"), 2).unwrap();
        assert_eq!(single_slope_denominator(&np), Some(1));
        assert!(newton_polygon(&p("x^2 + x"), 2).is_err());
    }

    #[test]
    fn degree_eighteen_at_three() {
        let f = p("x^18 - 9x^15 + 135x^12 + 540x^9 + 2673x^6 + 1458x^3 + 729");
        let np = newton_polygon(&f, 3).unwrap();
        assert_eq!(np.len(), 1);
        assert_eq!(np[0].slope, BigRational::new(1.into(), 3.into()));
        assert_eq!(np[0].length, 18);
    }
}
