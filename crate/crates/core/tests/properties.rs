use num_bigint::BigInt;
use proptest::prelude::*;
use quadfield_audit::arith::poly::IntPolynomial;
use quadfield_audit::curves::{curve_invariants, odd_reduction_audit, two_torsion_field, two_torsion_image_over_q, CurveModel, ModelChange, QuadElement};
use quadfield_audit::fields::corpus::{parse_csv, parse_json, to_csv, to_json};
use quadfield_audit::fields::{compatible_groups, cycle_type_census, dedekind_index_check, CorpusEntry, DedekindVerdict};
use quadfield_audit::Error;

const NINE: [i64; 9] = [6, 5, 3, 2, -1, -2, -3, -5, -6];

fn monic(coeffs: Vec<i64>) -> IntPolynomial {
    let mut c = coeffs;
    c.push(1);
    IntPolynomial::from_i64s(&c)
}

fn elem() -> impl Strategy<Value = QuadElement> {
    (-20i64..=20, -20i64..=20).prop_map(|(x, y)| QuadElement::from_ints(x, y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dedekind_maximal_away_from_disc(coeffs in prop::collection::vec(-30i64..=30, 2..=5), p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13])) {
        let f = monic(coeffs);
        let disc = f.discriminant().unwrap();
        prop_assume!(disc != BigInt::from(0) && &disc % BigInt::from(p) != BigInt::from(0));
        prop_assert_eq!(dedekind_index_check(&f, p).unwrap(), DedekindVerdict::MaximalAtP);
    }

    #[test]
    fn corpus_round_trip(rows in prop::collection::vec((prop::collection::vec(-1000i64..=1000, 1..=7), prop::option::of("[a-z]{1,8}")), 0..6)) {
        let entries: Vec<CorpusEntry> = rows
            .into_iter()
            .map(|(c, label)| CorpusEntry::new(monic(c).coeffs().to_vec(), label).unwrap())
            .collect();
        let csv = parse_csv(&to_csv(&entries).unwrap()).unwrap();
        prop_assert!(csv.errors.is_empty());
        prop_assert_eq!(&csv.entries, &entries);
        let json = parse_json(&to_json(&entries).unwrap()).unwrap();
        prop_assert_eq!(&json.entries, &entries);
    }

    #[test]
    fn invariant_identity(d in prop::sample::select(NINE.to_vec()), a in prop::array::uniform5(elem())) {
        let e = CurveModel::new(d, a);
        match curve_invariants(&e) {
            Ok(inv) => {
                let k = e.field().unwrap();
                let c4 = &inv.c4;
                let lhs = c4.mul(c4, &k).mul(c4, &k).sub(&inv.c6.mul(&inv.c6, &k));
                prop_assert_eq!(lhs, inv.delta.scale_int(1728));
            }
            Err(err) => prop_assert_eq!(err, Error::Singular),
        }
    }

    #[test]
    fn image_over_field_is_subgroup(d in prop::sample::select(NINE.to_vec()), a in prop::array::uniform5(-12i64..=12)) {
        let e = CurveModel::from_rational(d, a);
        prop_assume!(curve_invariants(&e).is_ok());
        let over_q = two_torsion_image_over_q(&e).unwrap();
        let over_k = two_torsion_field(&e, &e.field().unwrap()).unwrap().image;
        prop_assert!(over_k.is_subgroup_of(over_q), "{:?} over K, {:?} over Q", over_k, over_q);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn integral_model_changes_keep_verdicts(
        which in 0usize..3,
        unit in 0usize..4,
        r in elem(), s in elem(), t in elem(),
    ) {
        let (e, units): (CurveModel, [(i64, i64); 4]) = match which {
            0 => (CurveModel::from_rational(-1, [0, 0, 0, -1, 0]), [(1, 0), (-1, 0), (0, 1), (0, -1)]),
            1 => (CurveModel::from_rational(2, [0, 0, 0, 1, 1]), [(1, 0), (-1, 0), (1, 1), (-1, 1)]),
            _ => (CurveModel::from_rational(-3, [0, 0, 27, -81, 0]), [(1, 0), (-1, 0), (0, 1), (1, -1)]),
        };
        let (ux, uy) = units[unit];
        let c = ModelChange { u: QuadElement::from_ints(ux, uy), r, s, t };
        let e2 = e.transform(&c).unwrap();
        let k = e.field().unwrap();
        prop_assert_eq!(odd_reduction_audit(&e).unwrap().bad_primes(), odd_reduction_audit(&e2).unwrap().bad_primes());
        prop_assert_eq!(two_torsion_field(&e, &k).unwrap().image, two_torsion_field(&e2, &k).unwrap().image);
        let n1 = curve_invariants(&e).unwrap().delta.norm(&k);
        let n2 = curve_invariants(&e2).unwrap().delta.norm(&k);
        prop_assert_eq!(n1, n2);
    }

    #[test]
    fn census_is_monotone(coeffs in prop::collection::vec(-9i64..=9, 6), extra in 50u64..400) {
        let f = monic(coeffs);
        prop_assume!(f.discriminant().unwrap() != BigInt::from(0));
        let small = cycle_type_census(&f, 50).unwrap();
        let large = cycle_type_census(&f, 50 + extra).unwrap();
        prop_assert!(large.primes_used >= small.primes_used);
        for key in small.frequencies.keys() {
            prop_assert!(large.frequencies.contains_key(key));
        }
        let before: Vec<&str> = compatible_groups(&small).iter().map(|g| g.label).collect();
        for g in compatible_groups(&large) {
            prop_assert!(before.contains(&g.label));
        }
    }
}
