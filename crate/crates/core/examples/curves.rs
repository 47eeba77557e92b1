//! Invariants, reduction away from 2 and 2-torsion, then the nonexistence
//! statements for the nine fields.

use quadfield_audit::curves::{
    corollary3_report, curve_invariants, odd_reduction_audit, prop4_audit, two_torsion_field, CurveModel, ModelChange, QuadElement,
};
use quadfield_audit::data::reference;

fn main() -> quadfield_audit::Result<()> {
    let e = CurveModel::from_rational(-1, [0, 0, 0, -1, 0]);
    let k = e.field()?;
    let inv = curve_invariants(&e)?;
    println!("y^2 = x^3 - x over {k}: Δ = {}, c4 = {}", inv.delta.format(&k), inv.c4.format(&k));
    let red = odd_reduction_audit(&e)?;
    println!("odd primes of bad reduction: {:?}", red.bad_primes());
    let t = two_torsion_field(&e, &k)?;
    println!("2-torsion: {:?}, image {:?}", t.splitting, t.image);
    println!("rational 2-torsion check: {:?}", prop4_audit(&e, -1)?.verdict);

    // an integral change of model with u = i keeps every verdict
    let c = ModelChange {
        u: QuadElement::from_ints(0, 1),
        r: QuadElement::from_ints(0, 1),
        s: QuadElement::from_ints(1, 0),
        t: QuadElement::from_ints(2, -1),
    };
    let e2 = e.transform(&c)?;
    let t2 = two_torsion_field(&e2, &k)?;
    println!("after change: Δ = {}, bad {:?}, image {:?}", curve_invariants(&e2)?.delta.format(&k), odd_reduction_audit(&e2)?.bad_primes(), t2.image);

    let e3 = CurveModel::from_rational(2, [0, 0, 0, 1, 1]);
    println!("y^2 = x^3 + x + 1 over Q(√2): unresolved odd primes {:?}", odd_reduction_audit(&e3)?.bad_primes());

    for &d in &reference().fields.nine {
        let r = corollary3_report(d)?;
        println!("d = {d:>2}: {:?}", r.statement);
        for line in &r.chain {
            println!("    {line}");
        }
    }
    Ok(())
}
