//! Audit the embedded degree-8/16 fields, the degree-18 field and the ten
//! sextics, printing one verdict line per check.

use quadfield_audit::data::reference;
use quadfield_audit::fields::{audit_sextic, audit_table_field, AuditReport, SexticRecord, TableFieldRecord};

fn show(r: &AuditReport) {
    println!("{}  [{}]  {}", r.subject, r.overall(), r.polynomial);
    for c in &r.checks {
        println!("    {:<20} {:<12} {}", c.name, c.verdict.to_string(), c.detail);
    }
    for t in &r.trusted {
        println!("    trusted: {t}");
    }
}

fn main() {
    let data = reference();
    for row in &data.table1 {
        show(&audit_table_field(&TableFieldRecord::from_row(row, 2)));
    }
    show(&audit_table_field(&TableFieldRecord::from_row(&data.p3field, 3)));
    for row in &data.table2 {
        show(&audit_sextic(&SexticRecord::from(row)));
    }
}
