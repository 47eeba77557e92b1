//! Ray class groups of 2-power conductor and unit ranks of `O/𝔭^k`.

use quadfield_audit::data::reference;
use quadfield_audit::quadratic::{check_rank_stabilization, nakagoshi_check, ray_class_group, verify_prop2, QuadraticField};

fn main() -> quadfield_audit::Result<()> {
    for &d in &reference().fields.nine {
        let rows = verify_prop2(d, 5)?;
        let orders: Vec<u64> = rows.iter().map(|r| r.order).collect();
        let all = rows.iter().all(|r| r.two_group);
        println!("d = {d:>2}  orders k=1..5 {orders:?}  2-groups: {all}");
    }

    for d in [5, -3] {
        let r = ray_class_group(&QuadraticField::new(d)?, 2, 1, true)?;
        println!("d = {d}: modulus (2)·∞ order {} 3-rank {}", r.order, r.q_ranks[&3].lower);
    }
    let k = QuadraticField::new(-3)?;
    for kk in 1..=5 {
        let r = ray_class_group(&k, 3, kk, false)?;
        println!("Q(√-3) modulo 𝔭_3^{kk}: order {} {:?}", r.order, r.structure);
    }

    let k = QuadraticField::new(6)?;
    for n in 1..=5 {
        let (formula, enumerated) = nakagoshi_check(&k, 2, n)?;
        println!("Q(√6) n={n}: formula {formula} enumerated {enumerated}");
    }
    let s = check_rank_stabilization(&k, 2, 8)?;
    println!("residue 2-rank stable from k = {:?} (predicted {})", s.residue_k0, s.predicted_k0);
    Ok(())
}
