//! Closed-form `p`-rank of `(O/𝔭^{n+1})^*` for a local field with
//! ramification `e` and residue degree `f`.

use super::field::{QuadraticField, SplitKind};
use crate::arith::integer::is_padic_square;
use num_bigint::BigInt;

/// `R_n`: with `e₁ = ⌊e/(p−1)⌋`,
/// `(n − ⌊n/p⌋)·f` if `n < e + e₁`, else `e·f`, plus one when `ζ_p ∈ K_𝔭`.
pub fn nakagoshi_rank(p: u64, e: u64, f: u64, n: u64, zeta_p_present: bool) -> u64 {
    assert!(e >= 1 && f >= 1 && p >= 2);
    let e1 = e / (p - 1);
    if n < e + e1 {
        (n - n / p) * f
    } else {
        e * f + u64::from(zeta_p_present)
    }
}

/// Whether the completion of `K` at the prime above `p` contains a primitive
/// `p`-th root of unity. For `p = 3` this means `Q_3(√−3) ⊆ K_𝔭`, i.e. `−3d`
/// is a 3-adic square.
pub fn zeta_p_in_completion(field: &QuadraticField, p: u64) -> bool {
    match p {
        2 => true,
        3 => {
            if field.splitting(3).kind == SplitKind::Split {
                is_padic_square(&BigInt::from(-3), 3)
            } else {
                is_padic_square(&BigInt::from(-3 * field.d()), 3)
            }
        }
        _ => false,
    }
}

/// `R_n` for the prime of `K` above `p`.
pub fn field_rank(field: &QuadraticField, p: u64, n: u64) -> u64 {
    let s = field.splitting(p);
    nakagoshi_rank(p, s.e as u64, s.f as u64, n, zeta_p_in_completion(field, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_cases() {
        assert_eq!(nakagoshi_rank(2, 2, 1, 2, true), 1);
        assert_eq!(nakagoshi_rank(2, 2, 1, 4, true), 3);
        assert_eq!(nakagoshi_rank(3, 2, 1, 3, true), 3);
    }

    #[test]
    fn cube_roots_of_unity() {
        let z = |d| zeta_p_in_completion(&QuadraticField::new(d).unwrap(), 3);
        assert!(z(-3));
        assert!(z(6));
        assert!(!z(3));
        assert!(!z(-6));
        assert!(!z(5));
    }
}
