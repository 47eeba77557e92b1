//! Class groups, unit groups and prime splitting for the nine fields.

use quadfield_audit::data::reference;
use quadfield_audit::quadratic::{class_group, unit_group, QuadraticField};

fn main() -> quadfield_audit::Result<()> {
    for &d in &reference().fields.nine {
        let k = QuadraticField::new(d)?;
        let cl = class_group(&k)?;
        let u = unit_group(&k)?;
        let eps = u.fundamental.as_ref().map_or("-".to_string(), |e| k.display(e));
        let s2 = k.splitting(2);
        let s3 = k.splitting(3);
        println!(
            "{k:<8} disc {:>4}  h = {} {:?}  narrow {}  roots of unity {}  ε = {eps}  2: {:?}  3: {:?}",
            k.disc(),
            cl.order,
            cl.invariants,
            cl.narrow_order,
            u.torsion_order,
            s2.kind,
            s3.kind
        );
    }
    let k = QuadraticField::new(-5)?;
    for f in &class_group(&k)?.representatives {
        println!("Q(√-5) form {f:?}");
    }
    Ok(())
}
