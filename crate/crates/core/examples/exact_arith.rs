//! Integers, polynomials and certified intervals.

use num_bigint::BigInt;
use quadfield_audit::arith::integer::{factor_integer, kronecker_i64, squarefree_core, FactorBudget};
use quadfield_audit::arith::poly::IntPolynomial;
use quadfield_audit::arith::real::{bits_for_digits, Interval};
use quadfield_audit::arith::zfactor::factor_over_z;

fn main() -> quadfield_audit::Result<()> {
    let f: IntPolynomial = "x^6 + x^4 + 4x^3 + 36x^2 - 24x + 4".parse()?;
    let disc = f.discriminant()?;
    println!("f = {f}");
    println!("disc f = {disc}");
    let fac = factor_integer(&disc, FactorBudget::default())?;
    println!("primes of disc f: {:?}", fac.known().primes());
    println!("squarefree core: {}", squarefree_core(&disc, FactorBudget::default())?);

    let g: IntPolynomial = "x^4 - 1".parse()?;
    let parts: Vec<String> = factor_over_z(&g)?.factors.iter().map(|(h, e)| format!("({h})^{e}")).collect();
    println!("x^4 - 1 = {}", parts.join(" "));

    // (2/p) for the first few odd primes
    for p in [3, 5, 7, 11, 13, 17] {
        print!("(2/{p}) = {}  ", kronecker_i64(2, p));
    }
    println!();

    let prec = bits_for_digits(40);
    let c = Interval::euler_gamma(prec)?.add(&Interval::pi(prec).mul_int(4).ln()?);
    println!("γ + log 4π ∈ {}", c.decimal(30));
    let big = BigInt::from(2).pow(128);
    println!("log 2^128 = {}", Interval::from_rational(&big.into(), prec).ln()?.decimal(20));
    Ok(())
}
