//! The five report commands.

use std::path::PathBuf;

use super::config::RunConfig;
use super::document::{Item, Provenance, Report};
use crate::arith::real::Interval;
use crate::bounds::{exclusion_threshold, odlyzko_limit, tame_exclusion, BaseSplit, BoundScenario, ExclusionResult, Variant, Wildness};
use crate::curves::{corollary3_report, curve_invariants, odd_reduction_audit, prop4_audit, two_torsion_field, Corollary3Statement, CurveModel, Prop4Verdict};
use crate::data::reference;
use crate::error::{Error, Result};
use crate::fields::corpus::{load_corpus, search_s3_candidates};
use crate::fields::{audit_sextic_with_bound, audit_table_field, AuditReport, SexticRecord, TableFieldRecord, Verdict};
use crate::quadratic::rayclass::check_rank_stabilization;
use crate::quadratic::{nakagoshi_check, ray_class_group, QuadraticField, SplitKind};

use Provenance::{Derived, Published, Recomputed};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundsArgs {
    pub p: u64,
    pub base: BaseSplit,
    pub wild: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RayclassArgs {
    pub d: i64,
    pub p: u64,
    pub kmax: u32,
    pub infinity: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableChoice {
    Table1,
    Table2,
    P3Field,
}

impl std::str::FromStr for TableChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table1" => Ok(TableChoice::Table1),
            "table2" => Ok(TableChoice::Table2),
            "p3field" => Ok(TableChoice::P3Field),
            _ => Err(Error::Parse(format!("unknown table {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CurveArgs {
    pub file: Option<PathBuf>,
    pub d: Option<i64>,
    pub corollary3: bool,
}

fn printed_agrees(x: &Interval, printed: &str) -> bool {
    let Ok(v) = printed.parse::<f64>() else { return false };
    let decimals = printed.split('.').nth(1).map_or(0, str::len) as i32;
    let tol = 10f64.powi(-decimals).max(5e-5);
    (x.mid_f64() - v).abs() <= tol
}

fn d_list(r: &ExclusionResult) -> Vec<i64> {
    let mut v: Vec<i64> = r.excluded.iter().map(|e| e.d).collect();
    v.sort_by_key(|d| (d.abs(), *d));
    v
}

fn chain_item(cfg: &RunConfig, r: &ExclusionResult) -> Result<Item> {
    let s = &r.scenario;
    let places = cfg.places();
    let scan = r.scan(s.n_min, cfg.scan_to)?;
    let input = if r.variant == Variant::Published { Published } else { Recomputed };
    let output = if r.variant == Variant::Published { Derived } else { Recomputed };
    let mut ok = scan.violations.is_empty();
    let mut item = Item::new("bounds", format!("{} {}", s.key(), r.variant.as_str()), Verdict::Pass);
    let chain = reference().chain(s.p, s.base.as_str());
    let a_prov = match chain.and_then(|c| c.a_provenance.as_deref()) {
        Some("derived") if r.variant == Variant::Published => Derived,
        _ => input,
    };
    item = item
        .quantity("constant", r.constant.decimal(places), input)
        .quantity("A", r.a.decimal(places), a_prov)
        .quantity("B", r.b.decimal(places), input)
        .quantity("x0", r.minimizer_x0.decimal(places), output)
        .quantity("f_min", r.min_value.decimal(places), output)
        .quantity("integer minimizer", r.integer_min.0, output)
        .quantity("log threshold", r.log_threshold.decimal(places), output)
        .quantity("|d_K| threshold", r.abs_threshold.decimal(places), output)
        .quantity("excluded d", format!("{:?}", d_list(r)), output);
    if let (Variant::Published, Some(c)) = (r.variant, chain) {
        let checks = [("x0", &r.minimizer_x0, &c.x0), ("log threshold", &r.log_threshold, &c.log_threshold), ("|d_K| threshold", &r.abs_threshold, &c.abs_threshold)];
        for (name, x, printed) in checks {
            item = item.quantity(&format!("printed {name}"), printed, Published);
            if !printed_agrees(x, printed) {
                ok = false;
                item = item.note(format!("{name} {} differs from printed {printed}", x.decimal(6)));
            }
        }
        let mut want = c.excludes.clone();
        want.sort_by_key(|d| (d.abs(), *d));
        if want != d_list(r) {
            ok = false;
            item = item.note(format!("printed exclusion list {want:?}"));
        }
    }
    item = item.note(format!(
        "inequality holds at every n in [{}, {}] ({} checked, {} refined, closest n = {})",
        scan.from, scan.to, scan.checked, scan.refined, scan.closest_n
    ));
    if !scan.violations.is_empty() {
        item = item.note(format!("violations at n = {:?}", scan.violations));
    }
    for n in &r.notes {
        item = item.note(n.clone());
    }
    item.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
    Ok(item.details(&scan))
}

fn tame_item(cfg: &RunConfig, p: u64, base: BaseSplit) -> Result<Item> {
    let s = BoundScenario::new(p, base, Wildness::Tame).with_digits(cfg.precision);
    let t = tame_exclusion(&s)?;
    let mut ds: Vec<i64> = t.excluded.iter().map(|e| e.d).collect();
    ds.sort_by_key(|d| (d.abs(), *d));
    let mut item = Item::new("bounds", format!("{} tame", s.key()), Verdict::Pass)
        .quantity("claimed |d_K| bound", &reference().tame.claimed_bound, Published)
        .quantity("log threshold", t.log_threshold.decimal(cfg.places()), Derived)
        .quantity("|d_K| threshold", t.abs_threshold.decimal(cfg.places()), Derived)
        .quantity("excluded d", format!("{ds:?}"), Derived);
    for n in t.notes {
        item = item.note(n);
    }
    Ok(item)
}

/// Every mismatch between printed and recomputed values found by the chains.
pub fn discrepancies(cfg: &RunConfig) -> Result<Item> {
    let mut item = Item::new("bounds", "discrepancies", Verdict::Pass);
    let prec = BoundScenario::new(2, BaseSplit::Ramified, Wildness::Wild).with_digits(cfg.precision).prec();
    let limit = odlyzko_limit(prec)?.mul_int(2);
    let printed = &reference().constants.lower_limit_printed;
    item = item
        .quantity("2(γ + log 4π)", limit.decimal(cfg.places()), Recomputed)
        .quantity("printed 2(γ + log 4π)", printed, Published)
        .note(format!("printed limit {printed} against recomputed {}", limit.decimal(7)));
    for (p, base) in [(2, BaseSplit::Ramified), (3, BaseSplit::Ramified)] {
        let (pubr, _) = exclusion_threshold(&BoundScenario::new(p, base, Wildness::Wild).with_digits(cfg.precision))?;
        for n in pubr.notes {
            item = item.note(format!("p{p}-{base}: {n}"));
        }
    }
    let t = tame_exclusion(&BoundScenario::new(2, BaseSplit::Ramified, Wildness::Tame).with_digits(cfg.precision))?;
    for n in t.notes {
        item = item.note(format!("tame: {n}"));
    }
    Ok(item)
}

pub fn bounds_items(cfg: &RunConfig, args: BoundsArgs) -> Result<Vec<Item>> {
    if !args.wild {
        return Ok(vec![tame_item(cfg, args.p, args.base)?]);
    }
    let s = BoundScenario::new(args.p, args.base, Wildness::Wild).with_digits(cfg.precision);
    let (pubr, rec) = exclusion_threshold(&s)?;
    Ok(vec![chain_item(cfg, &pubr)?, chain_item(cfg, &rec)?])
}

pub fn cmd_bounds(cfg: &RunConfig, args: BoundsArgs) -> Result<Report> {
    let mut items = bounds_items(cfg, args)?;
    items.push(discrepancies(cfg)?);
    let mut cmd = vec!["bounds".into(), format!("--p {}", args.p), format!("--base {}", args.base)];
    cmd.push(if args.wild { "--wild" } else { "--tame" }.into());
    Ok(Report::new(cmd, cfg, items))
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

pub fn rayclass_items(args: RayclassArgs) -> Result<Vec<Item>> {
    let field = QuadraticField::new(args.d)?;
    let s = field.splitting(args.p);
    if s.kind == SplitKind::Split {
        return Err(Error::Unsupported(format!("{} splits in Q(√{})", args.p, args.d)));
    }
    let mut items = Vec::new();
    let mut orders = Vec::new();
    for k in 1..=args.kmax {
        let r = ray_class_group(&field, args.p, k, args.infinity)?;
        orders.push(r.order);
        let rank = |q: u64| {
            let x = r.q_ranks[&q];
            if x.exact { x.lower.to_string() } else { format!("{}..{}", x.lower, x.upper) }
        };
        let structure = r.structure.as_ref().map_or("unknown".to_string(), |s| format!("{s:?}"));
        items.push(
            Item::new("rayclass", format!("d={} p={} k={k}", args.d, args.p), Verdict::Pass)
                .quantity("order", r.order, Derived)
                .quantity("structure", structure, Derived)
                .quantity("2-rank", rank(2), Derived)
                .quantity("3-rank", rank(3), Derived)
                .details(&r),
        );
    }
    let all = orders.iter().all(|&n| is_power_of(n, args.p));
    let modulus = if args.infinity && field.is_real() { "𝔭^k·m_∞" } else { "𝔭^k" };
    items.push(
        Item::new("rayclass", format!("d={} p={} {}-group", args.d, args.p, args.p), if all { Verdict::Pass } else { Verdict::Fail })
            .quantity("orders", format!("{orders:?}"), Derived)
            .note(format!("ray class groups modulo {modulus} for k ≤ {}", args.kmax)),
    );
    Ok(items)
}

pub fn nakagoshi_items(field: &QuadraticField, p: u64, nmax: u32) -> Result<Vec<Item>> {
    let mut pairs = Vec::new();
    for n in 1..=nmax {
        pairs.push(nakagoshi_check(field, p, n)?);
    }
    let ok = pairs.iter().all(|(a, b)| *a == *b as u64);
    let st = check_rank_stabilization(field, p, 8)?;
    let stable_ok = st.residue_k0.is_some_and(|k| k <= st.predicted_k0);
    let id = format!("d={} p={}", field.d(), p);
    Ok(vec![
        Item::new("nakagoshi", format!("{id} formula"), if ok { Verdict::Pass } else { Verdict::Fail })
            .quantity("formula ranks n=1..", format!("{:?}", pairs.iter().map(|x| x.0).collect::<Vec<_>>()), Derived)
            .quantity("enumerated ranks n=1..", format!("{:?}", pairs.iter().map(|x| x.1).collect::<Vec<_>>()), Derived),
        Item::new("nakagoshi", format!("{id} stabilization"), if stable_ok { Verdict::Pass } else { Verdict::Fail })
            .quantity("residue rank k0", st.residue_k0.map_or("none".into(), |k| k.to_string()), Derived)
            .quantity("predicted k0", st.predicted_k0, Derived)
            .quantity("ray class rank k0", st.k0.map_or("none".into(), |k| k.to_string()), Derived)
            .details(&st),
    ])
}

pub fn cmd_rayclass(cfg: &RunConfig, args: RayclassArgs) -> Result<Report> {
    let mut items = rayclass_items(args)?;
    let field = QuadraticField::new(args.d)?;
    items.extend(nakagoshi_items(&field, args.p, args.kmax)?);
    let mut cmd = vec!["rayclass".into(), format!("--d {}", args.d), format!("--p {}", args.p), format!("--kmax {}", args.kmax)];
    if args.infinity {
        cmd.push("--infinity".into());
    }
    Ok(Report::new(cmd, cfg, items))
}

fn audit_item(section: &str, r: &AuditReport) -> Item {
    let mut item = Item::new(section, r.subject.clone(), r.overall()).quantity("polynomial", &r.polynomial, Published);
    for c in &r.checks {
        item = item.note(format!("{}: {}: {}", c.name, c.verdict, c.detail));
    }
    for t in &r.trusted {
        item = item.note(format!("trusted: {t}"));
    }
    item.details(&r.evidence)
}

pub fn tables_items(cfg: &RunConfig, which: TableChoice) -> Result<Vec<Item>> {
    let data = reference();
    let mut items = Vec::new();
    match which {
        TableChoice::Table1 => {
            for row in &data.table1 {
                items.push(audit_item("table1", &audit_table_field(&TableFieldRecord::from_row(row, 2))));
            }
        }
        TableChoice::P3Field => {
            items.push(audit_item("p3field", &audit_table_field(&TableFieldRecord::from_row(&data.p3field, 3))));
        }
        TableChoice::Table2 => {
            for row in &data.table2 {
                items.push(audit_item("table2", &audit_sextic_with_bound(&SexticRecord::from(row), cfg.census_bound)));
            }
            if let Some(path) = &cfg.corpus {
                items.extend(corpus_items(path)?);
            }
        }
    }
    Ok(items)
}

fn corpus_items(path: &std::path::Path) -> Result<Vec<Item>> {
    let load = load_corpus(path)?;
    let mut items = Vec::new();
    for e in &load.errors {
        items.push(Item::new("corpus", format!("row {}", e.row), Verdict::Inconclusive).note(e.message.clone()));
    }
    for row in &reference().table2 {
        let out = search_s3_candidates(&load.entries, Some(row.d), row.ramification);
        let found = out.candidates.iter().any(|c| c.record.polynomial == row.polynomial);
        let verdict = if found { Verdict::Pass } else { Verdict::Inconclusive };
        let mut item = Item::new("corpus", format!("d={} {}", row.d, row.ramification), verdict)
            .quantity("candidates", out.candidates.len(), Derived);
        for c in &out.candidates {
            item = item.note(format!("candidate {}", c.record.polynomial));
        }
        for x in out.excluded.iter().filter(|x| x.report.is_some()) {
            item = item.note(format!("entry {} excluded: {}", x.index + 1, x.reason));
        }
        items.push(item);
    }
    Ok(items)
}

pub fn cmd_tables(cfg: &RunConfig, which: TableChoice) -> Result<Report> {
    let name = match which {
        TableChoice::Table1 => "table1",
        TableChoice::Table2 => "table2",
        TableChoice::P3Field => "p3field",
    };
    Ok(Report::new(vec!["tables".into(), format!("--which {name}")], cfg, tables_items(cfg, which)?))
}

pub fn curve_items(e: &CurveModel) -> Result<Vec<Item>> {
    let k = e.field()?;
    let inv = curve_invariants(e)?;
    let id = format!("d={}", e.d);
    let f = |x: &crate::curves::QuadElement| x.format(&k);
    let mut items = vec![Item::new("curve", format!("{id} invariants"), Verdict::Pass)
        .quantity("b2", f(&inv.b2), Derived)
        .quantity("b4", f(&inv.b4), Derived)
        .quantity("b6", f(&inv.b6), Derived)
        .quantity("b8", f(&inv.b8), Derived)
        .quantity("c4", f(&inv.c4), Derived)
        .quantity("c6", f(&inv.c6), Derived)
        .quantity("Δ", f(&inv.delta), Derived)
        .note("c4^3 - c6^2 = 1728Δ holds exactly")];
    let red = odd_reduction_audit(e)?;
    let good = red.good_away_from_2();
    let mut item = Item::new("curve", format!("{id} reduction away from 2"), if good { Verdict::Pass } else { Verdict::Inconclusive })
        .quantity("|N(Δ)|", &red.norm_delta, Derived)
        .quantity("unresolved odd primes", format!("{:?}", red.bad_primes()), Derived);
    for p in &red.primes {
        item = item.note(format!("{} {}: v(Δ) = {}, {:?}: {}", p.p, p.prime, p.v_delta, p.verdict, p.detail));
    }
    items.push(item.details(&red));
    let tt = two_torsion_field(e, &k)?;
    items.push(
        Item::new("curve", format!("{id} two-torsion"), Verdict::Pass)
            .quantity("splitting", serde_json::to_value(tt.splitting).unwrap_or_default().as_str().unwrap_or(""), Derived)
            .quantity("image", serde_json::to_value(tt.image).unwrap_or_default().as_str().unwrap_or(""), Derived)
            .quantity("roots", tt.roots.iter().map(f).collect::<Vec<_>>().join(", "), Derived)
            .details(&tt),
    );
    if reference().fields.nine.contains(&e.d) {
        let a = prop4_audit(e, e.d)?;
        let (verdict, note) = match &a.verdict {
            Prop4Verdict::Consistent => (Verdict::Pass, "good away from 2 and a rational point of order 2".to_string()),
            Prop4Verdict::NotApplicable { reason } => (Verdict::Inconclusive, format!("not applicable: {reason}")),
            Prop4Verdict::Inconsistent => (Verdict::Fail, "good away from 2 without rational 2-torsion".to_string()),
        };
        items.push(Item::new("curve", format!("{id} rational 2-torsion"), verdict).note(note));
    }
    Ok(items)
}

pub fn corollary3_item(d: i64) -> Result<Item> {
    let r = corollary3_report(d)?;
    let mut item = Item::new("corollary3", format!("d={d}"), Verdict::Pass)
        .quantity("statement", serde_json::to_value(&r.statement).unwrap_or_default().as_str().unwrap_or(""), Derived);
    for c in &r.chain {
        item = item.note(c.clone());
    }
    if let Some(src) = &r.admissibility.source {
        item = item.note(format!("admissibility data: {src}"));
    }
    Ok(item.details(&r))
}

pub fn cmd_curve(cfg: &RunConfig, args: &CurveArgs) -> Result<Report> {
    let mut cmd = vec!["curve".to_string()];
    let items = if args.corollary3 {
        let d = args.d.ok_or_else(|| Error::Parse("--corollary3 needs --d".into()))?;
        cmd.extend(["--corollary3".into(), format!("--d {d}")]);
        vec![corollary3_item(d)?]
    } else {
        let path = args.file.as_ref().ok_or_else(|| Error::Parse("--file is required".into()))?;
        let text = std::fs::read_to_string(path)?;
        let e: CurveModel = serde_json::from_str(&text).map_err(|err| Error::Parse(format!("{}: {err}", path.display())))?;
        if let Some(d) = args.d {
            if d != e.d {
                return Err(Error::Parse(format!("--d {d} disagrees with the file (d = {})", e.d)));
            }
        }
        cmd.push(format!("--file {}", path.file_name().map_or(String::new(), |s| s.to_string_lossy().into_owned())));
        curve_items(&e)?
    };
    Ok(Report::new(cmd, cfg, items))
}

/// Every audit in order: bounds, ray class groups, residue ranks, tables,
/// curves.
pub fn cmd_walkthrough(cfg: &RunConfig) -> Result<Report> {
    let mut items = Vec::new();
    for (p, base) in [(2, BaseSplit::Ramified), (2, BaseSplit::Inert), (3, BaseSplit::Ramified)] {
        items.extend(bounds_items(cfg, BoundsArgs { p, base, wild: true })?);
    }
    items.push(tame_item(cfg, 2, BaseSplit::Ramified)?);
    items.push(discrepancies(cfg)?);

    let nine = &reference().fields.nine;
    for &d in nine {
        items.extend(rayclass_items(RayclassArgs { d, p: 2, kmax: cfg.kmax, infinity: true })?.pop());
    }
    for d in [5, -3] {
        let field = QuadraticField::new(d)?;
        let r = ray_class_group(&field, 2, 1, true)?;
        let rank = r.q_ranks[&3];
        let v = if rank.exact && rank.lower == 0 { Verdict::Pass } else { Verdict::Fail };
        items.push(Item::new("rayclass", format!("d={d} 3-rank modulo (2)·m_∞"), v).quantity("3-rank", rank.lower, Derived).quantity("order", r.order, Derived));
    }
    items.extend(rayclass_items(RayclassArgs { d: -3, p: 3, kmax: cfg.kmax, infinity: true })?.pop());

    for &d in nine {
        let field = QuadraticField::new(d)?;
        for p in [2, 3] {
            if field.splitting(p).kind != SplitKind::Split {
                items.extend(nakagoshi_items(&field, p, 5)?);
            }
        }
    }

    for which in [TableChoice::Table1, TableChoice::P3Field, TableChoice::Table2] {
        items.extend(tables_items(cfg, which)?);
    }

    items.extend(curve_items(&CurveModel::from_rational(-1, [0, 0, 0, -1, 0]))?);
    for &d in nine {
        let mut item = corollary3_item(d)?;
        let want = if d == 6 { Corollary3Statement::AdmissibleExists } else { Corollary3Statement::Nonexistence };
        let got = corollary3_report(d)?.statement;
        if got != want {
            item.verdict = Verdict::Fail;
        }
        items.push(item);
    }
    let mut report = Report::new(vec!["walkthrough".into()], cfg, items);
    report.config.corpus = None;
    Ok(report)
}
