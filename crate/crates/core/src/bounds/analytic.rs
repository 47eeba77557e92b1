//! Odlyzko–Poitou lower bound and the closed-form minimisation of
//! `f(x) = (A − B·x^{1/3}) / x`.

use serde::Serialize;

use crate::arith::real::Interval;
use crate::error::{Error, Result};

pub const ODLYZKO_COEFF: &str = "6.860404";

/// `γ + log 4π`, the large-degree limit of the root-discriminant bound.
pub fn odlyzko_limit(prec: u32) -> Result<Interval> {
    let four_pi = Interval::pi(prec).mul_int(4);
    Ok(Interval::euler_gamma(prec)?.add(&four_pi.ln()?))
}

/// Lower bound for `(1/m)·log|d_L|` when `[L:Q] = m`:
/// `γ + log 4π − coeff·m^{−2/3}`.
pub fn odlyzko_lower(degree: u64, coeff: &Interval) -> Result<Interval> {
    if degree == 0 {
        return Err(Error::domain("degree must be positive"));
    }
    let prec = coeff.prec();
    let m = Interval::from_int(degree as i64, prec);
    let m23 = m.cbrt()?.square();
    Ok(odlyzko_limit(prec)?.sub(&coeff.div(&m23)?))
}

/// `f(x) = (A − B·x^{1/3}) / x`.
pub fn ratio_at(a: &Interval, b: &Interval, x: &Interval) -> Result<Interval> {
    a.sub(&b.mul(&x.cbrt()?)).div(x)
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioMinimum {
    #[serde(skip)]
    pub x0: Interval,
    /// Minimum of `f` on `[x_min, ∞)`.
    #[serde(skip)]
    pub f_min: Interval,
    /// Whether the unconstrained minimiser lies in `[x_min, ∞)`.
    pub interior: bool,
}

/// Minimise `f` over `x ≥ x_min`. The unconstrained minimum sits at
/// `x0 = (3A/2B)^3` with value `−A/(2·x0)`.
pub fn minimize_ratio(a: &Interval, b: &Interval, x_min: &Interval) -> Result<RatioMinimum> {
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::domain("A and B must be positive"));
    }
    let t = a.mul_int(3).div(&b.mul_int(2))?;
    let x0 = t.mul(&t).mul(&t);
    let interior = !x0.certainly_lt(x_min);
    let f_min = if interior {
        a.div(&x0.mul_int(2))?.neg()
    } else {
        ratio_at(a, b, x_min)?
    };
    Ok(RatioMinimum { x0, f_min, interior })
}

/// Minimum of `f` over integers `n ≥ n_min`, using that `f` decreases then
/// increases. Returns `(n, f(n))`.
pub fn integer_minimum(a: &Interval, b: &Interval, x0: &Interval, n_min: u64) -> Result<(u64, Interval)> {
    let prec = a.prec();
    let lo = x0.mid_f64().floor().max(0.0) as u64;
    let mut best: Option<(u64, Interval)> = None;
    for n in [lo, lo + 1, n_min] {
        if n < n_min || n == 0 {
            continue;
        }
        let v = ratio_at(a, b, &Interval::from_int(n as i64, prec))?;
        let better = match &best {
            None => true,
            Some((_, w)) => v.mid_f64() < w.mid_f64(),
        };
        if better {
            best = Some((n, v));
        }
    }
    best.ok_or_else(|| Error::domain("empty integer range"))
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 160;

    fn dec(s: &str) -> Interval {
        Interval::from_decimal(s, P).unwrap()
    }

    #[test]
    fn limit_value() {
        let l = odlyzko_limit(P).unwrap();
        assert_eq!(l.decimal(7), "3.1082399");
        let m120 = odlyzko_lower(120, &dec(ODLYZKO_COEFF)).unwrap();
        assert_eq!(m120.decimal(6), "2.826253");
    }

    #[test]
    fn unit_ratio() {
        let one = Interval::from_int(1, P);
        let r = minimize_ratio(&one, &one, &Interval::from_int(0, P)).unwrap();
        assert!(r.x0.contains(&crate::arith::real::parse_decimal("3.375").unwrap()));
        assert!(r.interior);
    }

    #[test]
    fn clamped_minimum() {
        let r = minimize_ratio(&dec("41.588"), &dec("8.64356"), &Interval::from_int(1000, P)).unwrap();
        assert!(!r.interior);
        let f1000 = (41.588 - 8.64356 * 10.0) / 1000.0;
        assert!((r.f_min.mid_f64() - f1000).abs() < 1e-12);
    }

    #[test]
    fn rejects_nonpositive() {
        let z = Interval::from_int(0, P);
        assert!(minimize_ratio(&z, &dec("1"), &z).is_err());
    }
}
