//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use quadfield_audit::bounds::different::LocalRamification;
use quadfield_audit::bounds::{corollary1_bound, exclusion_threshold, prop3_bound, BaseSplit, BoundScenario, ExclusionResult, Wildness};
use quadfield_audit::curves::{
    corollary3_report, curve_invariants, odd_reduction_audit, prop4_audit, two_torsion_field, Corollary3Statement, CurveModel, CubicSplitting,
    ModelChange, Prop4Verdict, QuadElement,
};
use quadfield_audit::data::reference;
use quadfield_audit::fields::{audit_sextic, audit_table_field, SexticRecord, TableFieldRecord, Verdict};
use quadfield_audit::quadratic::{check_rank_stabilization, nakagoshi_check, ray_class_group, verify_prop2, QuadraticField, SplitKind};
use quadfield_audit::report::{cmd_walkthrough, RunConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok { Ok(()) } else { Err(msg.into()) }
}

fn within(x: f64, target: f64, tol: f64, what: &str) -> Result<(), String> {
    ensure((x - target).abs() <= tol, format!("{what} = {x} not within {tol} of {target}"))
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let t = Instant::now();
    let r = f()?;
    let el = t.elapsed();
    ensure(el < limit, format!("took {el:.2?}, limit {limit:?}"))?;
    Ok(format!("{r} ({el:.2?})"))
}

fn published(p: u64, base: BaseSplit) -> Result<ExclusionResult, String> {
    let s = BoundScenario::new(p, base, Wildness::Wild);
    exclusion_threshold(&s).map(|x| x.0).map_err(|e| e.to_string())
}

fn criterion1() -> Outcome {
    timed(Duration::from_secs(1), || {
        let r = published(2, BaseSplit::Ramified)?;
        let (x0, lt, at) = (r.minimizer_x0.mid_f64(), r.log_threshold.mid_f64(), r.abs_threshold.mid_f64());
        within(x0, 375.923, 0.01, "x0")?;
        within(lt, 3.21525, 5e-5, "log threshold")?;
        ensure((24.85..=24.95).contains(&at), format!("|d| threshold {at}"))?;
        Ok(format!("x0 {x0:.4}, log {lt:.6}, |d| < {at:.4}"))
    })
}

fn criterion2() -> Outcome {
    timed(Duration::from_secs(1), || {
        let r = published(2, BaseSplit::Inert)?;
        let (x0, lt, at) = (r.minimizer_x0.mid_f64(), r.log_threshold.mid_f64(), r.abs_threshold.mid_f64());
        within(x0, 500.385, 0.01, "x0")?;
        within(lt, 2.011863, 5e-5, "log threshold")?;
        within(at, 7.477, 0.005, "|d| threshold")?;
        Ok(format!("x0 {x0:.4}, log {lt:.6}, |d| < {at:.4}"))
    })
}

fn criterion3() -> Outcome {
    timed(Duration::from_secs(1), || {
        let r = published(3, BaseSplit::Ramified)?;
        within(r.a.mid_f64(), 36.2542, 1e-4, "A")?;
        let (x0, at) = (r.minimizer_x0.mid_f64(), r.abs_threshold.mid_f64());
        within(x0, 249.041, 0.5, "x0")?;
        within(at, 5.7, 0.05, "|d| threshold")?;
        let cfg = RunConfig::default();
        let notes = quadfield_audit::report::commands::discrepancies(&cfg).map_err(|e| e.to_string())?.notes.join("\n");
        for needle in ["41.36.254", "2.125", "9/4", "2^128"] {
            ensure(notes.contains(needle), format!("no discrepancy note mentioning {needle}"))?;
        }
        Ok(format!("A {:.7}, x0 {x0:.4}, |d| < {at:.4}, discrepancy notes present", r.a.mid_f64()))
    })
}

fn criterion4() -> Outcome {
    let mut n = 0;
    for e in (1..=99).step_by(2) {
        for m in 1..=20 {
            let closed = corollary1_bound(e, m).map_err(|x| x.to_string())?.c;
            let parts = LocalRamification::new(2, e, m, 1).and_then(|l| l.total()).map_err(|x| x.to_string())?.c;
            ensure(closed == parts, format!("2 inert e={e} m={m}: {closed} vs {parts}"))?;
            n += 1;
        }
    }
    for e in (1..=98).filter(|e| e % 3 != 0) {
        for m in 1..=10 {
            let closed = prop3_bound(e, m).map_err(|x| x.to_string())?.c;
            let parts = LocalRamification::new(3, e, m, 2).and_then(|l| l.total()).map_err(|x| x.to_string())?.c;
            ensure(closed == parts, format!("3 ramified e={e} m={m}: {closed} vs {parts}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} exact rational identities"))
}

fn criterion5() -> Outcome {
    timed(Duration::from_secs(60), || {
        let err = |e: quadfield_audit::Error| e.to_string();
        for &d in &reference().fields.nine {
            for row in verify_prop2(d, 5).map_err(err)? {
                ensure(row.two_group, format!("d={d} k={}: order {}", row.k, row.order))?;
            }
        }
        for d in [5, -3] {
            let r = ray_class_group(&QuadraticField::new(d).map_err(err)?, 2, 1, true).map_err(err)?;
            let rank = r.q_ranks[&3];
            ensure(rank.exact && rank.lower == 0, format!("d={d}: 3-rank {rank:?}"))?;
        }
        let k = QuadraticField::new(-3).map_err(err)?;
        for kk in 1..=5 {
            let r = ray_class_group(&k, 3, kk, false).map_err(err)?;
            ensure(r.is_q_group(3), format!("d=-3 p=3 k={kk}: order {}", r.order))?;
        }
        Ok("nine fields 2-groups for k ≤ 5, 3-rank 0 for d = 5, -3, 3-groups for d = -3".into())
    })
}

fn criterion6() -> Outcome {
    let err = |e: quadfield_audit::Error| e.to_string();
    let mut cases = 0;
    let mut worst = 0;
    for &d in &reference().fields.nine {
        let k = QuadraticField::new(d).map_err(err)?;
        for p in [2, 3] {
            if k.splitting(p).kind == SplitKind::Split {
                continue;
            }
            for n in 1..=5 {
                let (formula, enumerated) = nakagoshi_check(&k, p, n).map_err(err)?;
                ensure(formula == enumerated as u64, format!("d={d} p={p} n={n}: {formula} vs {enumerated}"))?;
                cases += 1;
            }
            let st = check_rank_stabilization(&k, p, 8).map_err(err)?;
            let k0 = st.residue_k0.ok_or(format!("d={d} p={p}: no stabilization seen"))?;
            ensure(k0 <= 5, format!("d={d} p={p}: stabilizes at {k0}"))?;
            worst = worst.max(k0);
        }
    }
    Ok(format!("{cases} exact matches, residue ranks stable by k = {worst}"))
}

fn criterion7() -> Outcome {
    timed(Duration::from_secs(120), || {
        let data = reference();
        for row in &data.table1 {
            let r = audit_table_field(&TableFieldRecord::from_row(row, 2));
            ensure(r.overall() == Verdict::Pass, format!("{}: {}", r.subject, r.overall()))?;
        }
        let r = audit_table_field(&TableFieldRecord::from_row(&data.p3field, 3));
        ensure(r.verdict_of("newton_polygon") == Some(Verdict::Pass), format!("degree-18 record: {}", r.overall()))?;
        ensure(r.hard_fails() == 0, "degree-18 record has hard fails")?;
        for row in &data.table2 {
            let r = audit_sextic(&SexticRecord::from(row));
            for c in ["irreducible", "odd_support", "census"] {
                ensure(r.verdict_of(c) == Some(Verdict::Pass), format!("{}: {c} is {:?}", r.subject, r.verdict_of(c)))?;
            }
            ensure(r.hard_fails() == 0, format!("{}: hard fails", r.subject))?;
        }
        Ok(format!("{} + 1 + {} rows pass", data.table1.len(), data.table2.len()))
    })
}

fn verdict_key(e: &CurveModel) -> Result<(Vec<u64>, String, String), String> {
    let k = e.field().map_err(|x| x.to_string())?;
    let red = odd_reduction_audit(e).map_err(|x| x.to_string())?;
    let t = two_torsion_field(e, &k).map_err(|x| x.to_string())?;
    let p4 = prop4_audit(e, e.d).map_err(|x| x.to_string())?;
    Ok((red.bad_primes(), format!("{:?}", t.image), format!("{:?}", p4.verdict)))
}

fn criterion8() -> Outcome {
    let e = CurveModel::from_rational(-1, [0, 0, 0, -1, 0]);
    let k = e.field().map_err(|x| x.to_string())?;
    let inv = curve_invariants(&e).map_err(|x| x.to_string())?;
    ensure(inv.delta == QuadElement::from_ints(64, 0), format!("Δ = {}", inv.delta.format(&k)))?;
    ensure(odd_reduction_audit(&e).map_err(|x| x.to_string())?.primes.is_empty(), "odd bad-prime report not empty")?;
    let t = two_torsion_field(&e, &k).map_err(|x| x.to_string())?;
    ensure(t.splitting == CubicSplitting::Linear && t.roots.len() == 3, "2-torsion not full")?;
    ensure(prop4_audit(&e, -1).map_err(|x| x.to_string())?.verdict == Prop4Verdict::Consistent, "rational 2-torsion check")?;

    let base = verdict_key(&e)?;
    let units = [(1, 0), (-1, 0), (0, 1), (0, -1)];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let el = |rng: &mut ChaCha8Rng| QuadElement::from_ints(rng.gen_range(-9..=9), rng.gen_range(-9..=9));
    for i in 0..50 {
        let (ux, uy) = units[rng.gen_range(0..4)];
        let c = ModelChange { u: QuadElement::from_ints(ux, uy), r: el(&mut rng), s: el(&mut rng), t: el(&mut rng) };
        let e2 = e.transform(&c).map_err(|x| x.to_string())?;
        ensure(verdict_key(&e2)? == base, format!("model change {i} altered a verdict"))?;
    }

    let mut nonexist = Vec::new();
    for &d in &reference().fields.nine {
        if corollary3_report(d).map_err(|x| x.to_string())?.statement == Corollary3Statement::Nonexistence {
            nonexist.push(d);
        }
    }
    ensure(nonexist == [5, 3, 2, -1, -2, -3, -5, -6], format!("nonexistence for {nonexist:?}"))?;
    Ok("Δ = 64, no odd bad primes, full 2-torsion, 50 model changes invariant, nonexistence for all but d = 6".into())
}

fn criterion9() -> Outcome {
    let cfg = RunConfig::default();
    let a = cmd_walkthrough(&cfg).map_err(|e| e.to_string())?.to_json();
    let b = cmd_walkthrough(&cfg).map_err(|e| e.to_string())?.to_json();
    ensure(a == b, "two walkthrough runs differ")?;
    let golden = include_str!("fixtures/walkthrough.json");
    ensure(a == golden, "walkthrough differs from tests/fixtures/walkthrough.json")?;
    Ok(format!("{} bytes, identical across runs and to the fixture", a.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("bound reproduction, 2 ramified", criterion1),
        ("bound reproduction, 2 inert", criterion2),
        ("bound reproduction, 3 ramified", criterion3),
        ("exact different identities", criterion4),
        ("ray class 2- and 3-groups", criterion5),
        ("residue rank formula", criterion6),
        ("table audits", criterion7),
        ("curve suite", criterion8),
        ("walkthrough determinism", criterion9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(msg) => println!("criterion {}: PASS  {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
