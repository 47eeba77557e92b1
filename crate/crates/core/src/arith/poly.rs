//! Dense integer polynomials.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Polynomial with integer coefficients, stored low degree first.
///
/// The coefficient vector never has trailing zeros, so the zero polynomial is
/// the empty vector and `coeffs.last()` is the leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl TryFrom<String> for IntPolynomial {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<IntPolynomial> for String {
    fn from(p: IntPolynomial) -> Self {
        p.to_string()
    }
}

impl From<Vec<BigInt>> for IntPolynomial {
    fn from(c: Vec<BigInt>) -> Self {
        IntPolynomial::new(c)
    }
}

impl From<IntPolynomial> for Vec<BigInt> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs
    }
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x - r`
    pub fn linear_root(r: &BigInt) -> Self {
        Self::new(vec![-r, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide by the content, normalising the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(BigInt::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `f(x + c)`
    pub fn shift(&self, c: &BigInt) -> Self {
        // Horner in the ring Z[x]
        let lin = Self::new(vec![c.clone(), BigInt::one()]);
        let mut acc = Self::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(a.clone()));
        }
        acc
    }

    /// `f(k·x)`
    pub fn scale_variable(&self, k: &BigInt) -> Self {
        let mut pw = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pw);
            pw *= k;
        }
        Self::new(out)
    }

    /// Pseudo-remainder: `lc(d)^(deg f - deg d + 1) f mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg();
        let lc = d.leading();
        let mut r = self.clone();
        let mut steps = (self.deg() + 1).saturating_sub(dd);
        while !r.is_zero() && r.deg() >= dd {
            steps -= 1;
            let shift = r.deg() - dd;
            let rl = r.leading();
            let mut next: Vec<BigInt> = r.coeffs.iter().map(|c| c * &lc).collect();
            for (i, c) in d.coeffs.iter().enumerate() {
                next[i + shift] -= c * &rl;
            }
            r = Self::new(next);
        }
        // pad to the exact power lc^(deg f - deg d + 1)
        r.scale(&lc.pow(steps as u32))
    }

    /// Exact division over Z. `None` if `d` does not divide `self` in Z[x].
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.deg() < d.deg() {
            return None;
        }
        let dd = d.deg();
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); self.deg() - dd + 1];
        for k in (0..q.len()).rev() {
            let top = r[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (qq, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, c) in d.coeffs.iter().enumerate() {
                r[k + i] -= c * &qq;
            }
            q[k] = qq;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    /// Primitive gcd over Z (positive leading coefficient).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let cont = self.content().gcd(&other.content());
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part().scale(&cont)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).deg() == 0
    }

    /// Squarefree part over Q, returned primitive.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.primitive_part()
            .div_exact(&g.primitive_part())
            .expect("gcd divides polynomial")
            .primitive_part()
    }

    /// Resultant via fraction-free elimination of the Sylvester matrix.
    pub fn resultant(&self, other: &Self) -> BigInt {
        if self.is_zero() || other.is_zero() {
            return BigInt::zero();
        }
        let m = self.deg();
        let n = other.deg();
        if m == 0 && n == 0 {
            return BigInt::one();
        }
        let size = m + n;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for row in 0..n {
            for (i, c) in self.coeffs.iter().rev().enumerate() {
                mat[row][row + i] = c.clone();
            }
        }
        for row in 0..m {
            for (i, c) in other.coeffs.iter().rev().enumerate() {
                mat[n + row][row + i] = c.clone();
            }
        }
        bareiss_determinant(mat)
    }

    /// `disc(f) = (-1)^(n(n-1)/2) Res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> Result<BigInt> {
        let n = self
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::domain("discriminant of a constant polynomial"))?;
        let res = self.resultant(&self.derivative());
        let (q, r) = res.div_rem(&self.leading());
        debug_assert!(r.is_zero());
        Ok(if (n * (n - 1) / 2) % 2 == 1 { -q } else { q })
    }

    /// Signature `(r1, r2)` via a Sturm sequence. Requires a squarefree input.
    pub fn real_root_count(&self) -> Result<(usize, usize)> {
        let n = self
            .degree()
            .filter(|&d| d >= 1)
            .ok_or_else(|| Error::domain("real roots of a constant polynomial"))?;
        let mut seq = vec![self.primitive_part(), self.derivative().primitive_part()];
        loop {
            let len = seq.len();
            let a = &seq[len - 2];
            let b = &seq[len - 1];
            if b.deg() == 0 {
                break;
            }
            let delta = (a.deg() - b.deg() + 1) as u32;
            let r = a.pseudo_rem(b);
            if r.is_zero() {
                return Err(Error::domain("Sturm sequence needs a squarefree polynomial"));
            }
            let flip = b.leading().is_negative() && delta % 2 == 1;
            // next = -rem(a, b), rem = r / lc(b)^delta
            let next = if flip { r } else { r.neg() };
            let g = next.content();
            seq.push(Self::new(next.coeffs.iter().map(|c| c / &g).collect()));
        }
        let changes = |signs: Vec<i8>| {
            let s: Vec<i8> = signs.into_iter().filter(|&x| x != 0).collect();
            s.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let at_pos: Vec<i8> = seq.iter().map(|p| sign(&p.leading())).collect();
        let at_neg: Vec<i8> = seq
            .iter()
            .map(|p| {
                let s = sign(&p.leading());
                if p.deg() % 2 == 1 {
                    -s
                } else {
                    s
                }
            })
            .collect();
        let r1 = changes(at_neg) - changes(at_pos);
        Ok((r1, (n - r1) / 2))
    }

    /// Reduce the coefficients modulo `m` into `[0, m)`.
    pub fn coeffs_mod(&self, m: u64) -> Vec<u64> {
        let mb = BigInt::from(m);
        self.coeffs
            .iter()
            .map(|c| {
                let r = c.mod_floor(&mb);
                u64::try_from(r).expect("residue fits in u64")
            })
            .collect()
    }
}

fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Bareiss fraction-free determinant.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign_flip = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Parses expressions such as `x^6 - 8x^5 + 23*x^4 - x + 4`.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut coeffs: Vec<BigInt> = Vec::new();
        for t in terms {
            let (neg, body) = match t.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, t.strip_prefix('+').unwrap_or(&t)),
            };
            let bad = || Error::Parse(format!("bad term `{t}` in `{s}`"));
            let (coef, exp) = match body.find('x') {
                None => (body.parse::<BigInt>().map_err(|_| bad())?, 0usize),
                Some(pos) => {
                    let cpart = body[..pos].trim_end_matches('*');
                    let c = if cpart.is_empty() {
                        BigInt::one()
                    } else {
                        cpart.parse::<BigInt>().map_err(|_| bad())?
                    };
                    let rest = &body[pos + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .ok_or_else(bad)?
                            .parse::<usize>()
                            .map_err(|_| bad())?
                    };
                    (c, e)
                }
            };
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, BigInt::zero());
            }
            coeffs[exp] += if neg { -coef } else { coef };
        }
        Ok(IntPolynomial::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        let f = p("x^6 + x^4 + 4x^3 + 36x^2 - 24x + 4");
        assert_eq!(f.coeffs(), IntPolynomial::from_i64s(&[4, -24, 36, 4, 1, 0, 1]).coeffs());
        assert_eq!(f.to_string(), "x^6 + x^4 + 4x^3 + 36x^2 - 24x + 4");
        assert_eq!(p("-x + 3*x^2").to_string(), "3x^2 - x");
        assert!("x^^2".parse::<IntPolynomial>().is_err());
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(p("x^2 - 7").discriminant().unwrap(), BigInt::from(28));
        assert_eq!(p("x^2 + 5").discriminant().unwrap(), BigInt::from(-20));
        // -4a^3 - 27b^2 with a = -1, b = 0
        assert_eq!(p("x^3 - x").discriminant().unwrap(), BigInt::from(4));
        assert_eq!(p("x^3 + x + 1").discriminant().unwrap(), BigInt::from(-31));
        assert!(p("5").discriminant().is_err());
    }

    #[test]
    fn discriminant_of_non_monic_quadratic() {
        // b^2 - 4ac
        assert_eq!(p("3x^2 + 5x - 2").discriminant().unwrap(), BigInt::from(49));
    }

    #[test]
    fn resultant_matches_root_product() {
        // Res(x^2 - 1, x - 3) = (1-3)(-1-3) = 8
        assert_eq!(p("x^2 - 1").resultant(&p("x - 3")), BigInt::from(8));
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(p("x^2 - 5").real_root_count().unwrap(), (2, 0));
        assert_eq!(p("x^2 + 5").real_root_count().unwrap(), (0, 1));
        assert_eq!(p("x^3 - x").real_root_count().unwrap(), (3, 0));
        assert_eq!(p("-x^3 + 2").real_root_count().unwrap(), (1, 1));
        assert_eq!(
            p("x^8 + 4x^6 + 22x^4 + 4x^2 + 1").real_root_count().unwrap(),
            (0, 4)
        );
        assert!(p("x^2 - 2x + 1").real_root_count().is_err());
    }

    #[test]
    fn shift_and_division() {
        let f = p("x^2 - 1");
        assert_eq!(f.shift(&BigInt::from(1)), p("x^2 + 2x"));
        let q = f.div_exact(&p("x - 1")).unwrap();
        assert_eq!(q, p("x + 1"));
        assert!(f.div_exact(&p("x - 2")).is_none());
        assert!(p("x^2 + 1").div_exact(&p("2x")).is_none());
    }

    #[test]
    fn gcd_and_squarefree() {
        let f = p("x^3 - x^2 - x + 1"); // (x-1)^2 (x+1)
        assert!(!f.is_squarefree());
        assert_eq!(f.squarefree_part(), p("x^2 - 1"));
        assert_eq!(p("2x^2 - 2").gcd(&p("4x - 4")), p("2x - 2"));
    }
}
