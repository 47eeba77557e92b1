//! Frozen reference values. Threshold figures were recomputed independently
//! at 50 digits; group orders and ranks were frozen from the first checked
//! enumeration.

use quadfield_audit::bounds::{exclusion_threshold, tame_exclusion, BaseSplit, BoundScenario, Wildness};
use quadfield_audit::quadratic::{class_group, nakagoshi_check, ray_class_group, verify_prop2, QuadraticField};

fn close(x: f64, y: f64, tol: f64) {
    assert!((x - y).abs() < tol, "{x} vs {y}");
}

#[test]
fn thresholds_match_independent_values() {
    let cases = [
        (2, BaseSplit::Ramified, 375.923893, 3.21525561, 24.909658),
        (2, BaseSplit::Inert, 500.384234, 2.01185043, 7.477140),
        (3, BaseSplit::Ramified, 249.041230, 1.749192, 5.749957),
    ];
    for (p, base, x0, lt, at) in cases {
        let (r, _) = exclusion_threshold(&BoundScenario::new(p, base, Wildness::Wild)).unwrap();
        close(r.minimizer_x0.mid_f64(), x0, 1e-5);
        close(r.log_threshold.mid_f64(), lt, 1e-6);
        close(r.abs_threshold.mid_f64(), at, 1e-5);
    }
}

#[test]
fn recomputed_variants() {
    let (_, r) = exclusion_threshold(&BoundScenario::new(2, BaseSplit::Ramified, Wildness::Wild)).unwrap();
    close(r.abs_threshold.mid_f64(), 20.947204, 1e-5);
    let ds: Vec<i64> = r.excluded.iter().map(|e| e.d).collect();
    assert!(!ds.contains(&6) && !ds.contains(&-6));
    let (_, r) = exclusion_threshold(&BoundScenario::new(3, BaseSplit::Ramified, Wildness::Wild)).unwrap();
    close(r.abs_threshold.mid_f64(), 5.750247, 1e-5);
    let t = tame_exclusion(&BoundScenario::new(2, BaseSplit::Ramified, Wildness::Tame)).unwrap();
    close(t.log_threshold.mid_f64(), 4.959359, 1e-6);
}

#[test]
fn higher_precision_agrees() {
    let s = BoundScenario::new(2, BaseSplit::Inert, Wildness::Wild);
    let (lo, _) = exclusion_threshold(&s.clone().with_digits(20)).unwrap();
    let (hi, _) = exclusion_threshold(&s.with_digits(100)).unwrap();
    close(lo.abs_threshold.mid_f64(), hi.abs_threshold.mid_f64(), 1e-12);
    assert!(hi.abs_threshold.decimal(40).starts_with("7.47714"));
}

#[test]
fn class_numbers() {
    let want = [(6, 1, 2), (5, 1, 1), (3, 1, 2), (2, 1, 1), (-1, 1, 1), (-2, 1, 1), (-3, 1, 1), (-5, 2, 2), (-6, 2, 2), (-23, 3, 3), (10, 2, 2), (34, 2, 4)];
    for (d, h, narrow) in want {
        let g = class_group(&QuadraticField::new(d).unwrap()).unwrap();
        assert_eq!((g.order, g.narrow_order), (h, narrow), "d={d}");
    }
}

#[test]
fn ray_class_orders() {
    let want: [(i64, [u64; 5]); 9] = [
        (6, [2, 4, 8, 8, 16]),
        (5, [1, 4, 8, 16, 32]),
        (3, [2, 2, 2, 4, 8]),
        (2, [1, 2, 2, 4, 8]),
        (-1, [1, 1, 1, 2, 4]),
        (-2, [1, 2, 2, 4, 8]),
        (-3, [1, 2, 8, 32, 128]),
        (-5, [2, 4, 4, 8, 16]),
        (-6, [2, 4, 4, 8, 16]),
    ];
    for (d, orders) in want {
        let got: Vec<u64> = verify_prop2(d, 5).unwrap().iter().map(|r| r.order).collect();
        assert_eq!(got, orders, "d={d}");
    }
    let k = QuadraticField::new(-3).unwrap();
    let got: Vec<u64> = (1..=5).map(|kk| ray_class_group(&k, 3, kk, false).unwrap().order).collect();
    assert_eq!(got, [1, 1, 3, 9, 27]);
    let r = ray_class_group(&QuadraticField::new(-5).unwrap(), 2, 5, false).unwrap();
    assert_eq!(r.structure, Some(vec![2, 8]));
}

#[test]
fn residue_ranks() {
    let want: [(i64, u64, [u64; 5]); 4] = [(6, 2, [1, 1, 2, 3, 3]), (-5, 2, [1, 1, 2, 3, 3]), (5, 2, [2, 3, 3, 3, 3]), (-3, 3, [1, 2, 3, 3, 3])];
    for (d, p, ranks) in want {
        let k = QuadraticField::new(d).unwrap();
        for (n, want) in (1..=5).zip(ranks) {
            let (formula, enumerated) = nakagoshi_check(&k, p, n).unwrap();
            assert_eq!((formula, enumerated as u64), (want, want), "d={d} p={p} n={n}");
        }
    }
}
