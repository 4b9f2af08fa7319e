use num_bigint::BigInt;
use proptest::prelude::*;
use quartic_core::classgroup::class_group;
use quartic_core::quad::{is_square, FundDisc, QuadElement, QuadField, QuadIdeal};

fn field() -> impl Strategy<Value = QuadField> {
    (-400i64..400)
        .prop_filter("fundamental", |&d| FundDisc::is_fundamental(d))
        .prop_map(|d| QuadField::from_disc(d).unwrap())
}

fn element(f: QuadField) -> impl Strategy<Value = QuadElement> {
    (-60i64..60, -60i64..60).prop_map(move |(x, y)| QuadElement::new(f, x, y))
}

fn field_and_pair() -> impl Strategy<Value = (QuadElement, QuadElement)> {
    field().prop_flat_map(|f| (element(f), element(f)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn norm_is_multiplicative((a, b) in field_and_pair()) {
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn trace_is_additive((a, b) in field_and_pair()) {
        prop_assert_eq!((&a + &b).trace(), a.trace() + b.trace());
    }

    #[test]
    fn conjugation_is_a_ring_map((a, b) in field_and_pair()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
    }

    #[test]
    fn division_inverts_multiplication((a, b) in field_and_pair()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div(&b).unwrap(), a);
    }

    #[test]
    fn squares_are_detected((a, b) in field_and_pair()) {
        prop_assume!(!a.is_zero());
        prop_assert!(is_square(&(&a * &a)));
        // a square times a nonsquare stays a nonsquare
        if !b.is_zero() && !is_square(&b) {
            prop_assert!(!is_square(&(&(&a * &a) * &b)));
        }
    }

    #[test]
    fn ideal_norm_is_multiplicative((a, b) in field_and_pair()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let ia = QuadIdeal::principal(&a).unwrap();
        let ib = QuadIdeal::principal(&b).unwrap();
        prop_assert_eq!(ia.mul(&ib).norm(), ia.norm() * ib.norm());
        prop_assert_eq!(ia.mul(&ib), QuadIdeal::principal(&(&a * &b)).unwrap());
        prop_assert_eq!(ia.norm(), BigInt::from(a.norm_int().magnitude().clone()));
    }

    #[test]
    fn principal_ideals_are_trivial_in_the_class_group((a, k) in field().prop_flat_map(|f| (element(f), 1u32..4))) {
        prop_assume!(!a.is_zero());
        let cg = class_group(a.field()).unwrap();
        let i = QuadIdeal::principal(&a).unwrap();
        prop_assert!(cg.is_principal(&i));
        // the class of a product is the sum of classes
        for g in cg.generators() {
            let p = g.pow(k).mul(&i);
            prop_assert_eq!(cg.class_index(&p), cg.class_index(&g.pow(k)));
        }
    }
}
