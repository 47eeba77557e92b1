//! Different exponents and the three exclusion chains, printed against the
//! published figures.

use num_rational::BigRational;
use quadfield_audit::bounds::different::LocalRamification;
use quadfield_audit::bounds::{corollary1_bound, exclusion_threshold, prop3_bound, tame_exclusion, BaseSplit, BoundScenario, Wildness};

fn main() -> quadfield_audit::Result<()> {
    println!("2 inert, e = 3:");
    for m in 1..=4 {
        let closed = corollary1_bound(3, m)?.c;
        let parts = LocalRamification::new(2, 3, m, 1)?.total()?.c;
        println!("  m={m}  {closed}  tame+wild {parts}  {}", if closed == parts { "equal" } else { "DIFFER" });
    }
    println!("3 ramified, e = 2:");
    for m in 1..=4 {
        let closed = prop3_bound(2, m)?.c;
        let parts = LocalRamification::new(3, 2, m, 2)?.total()?.c;
        println!("  m={m}  {closed}  tame+wild {parts}  {}", if closed == parts { "equal" } else { "DIFFER" });
    }
    let limit: BigRational = corollary1_bound(1, 60)?.c;
    println!("sup over m (e=1): {:.12}", num_traits::ToPrimitive::to_f64(&limit).unwrap_or(f64::NAN));

    for (p, base) in [(2, BaseSplit::Ramified), (2, BaseSplit::Inert), (3, BaseSplit::Ramified)] {
        let s = BoundScenario::new(p, base, Wildness::Wild);
        let (published, recomputed) = exclusion_threshold(&s)?;
        println!("\n{}", s.key());
        for r in [&published, &recomputed] {
            let ds: Vec<i64> = r.excluded.iter().map(|e| e.d).collect();
            println!(
                "  {:<10} x0 {}  log {}  |d| < {}  excludes {:?}",
                r.variant.as_str(),
                r.minimizer_x0.decimal(6),
                r.log_threshold.decimal(7),
                r.abs_threshold.decimal(6),
                ds
            );
        }
        let scan = published.scan(s.n_min, 20_000)?;
        println!("  scan [{}, {}]: {} violations, tightest at n = {}", scan.from, scan.to, scan.violations.len(), scan.closest_n);
        for n in &published.notes {
            println!("  note: {n}");
        }
    }

    let t = tame_exclusion(&BoundScenario::new(2, BaseSplit::Ramified, Wildness::Tame))?;
    println!("\ntame: |d| < {}", t.abs_threshold.decimal(4));
    for n in &t.notes {
        println!("  note: {n}");
    }
    Ok(())
}
