mod common;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use nsolenoid::arith::{big_pow, frac};
use nsolenoid::xi::{omega_lambda, omega_lambda_inv, omega_lambda_inv_default, LambdaCarrier};
use nsolenoid::{PrimeSeq, XiElement};
use proptest::prelude::*;

fn pair_over() -> impl Strategy<Value = (XiElement, XiElement)> {
    modulus().prop_flat_map(|n| (element_over(n), element_over(n)))
}

/// Period found by scanning values, independently of the carrier analysis.
fn scanned_period(a: &XiElement, max: usize) -> Option<usize> {
    (1..=max).find(|&k| (0..=3 * k).all(|n| a.value(n).unwrap() == a.value(n + k).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn values_satisfy_the_defining_recurrence(a in element()) {
        let n = BigRational::from_integer(BigInt::from(a.modulus()));
        for k in 0..12 {
            let v = a.value(k).unwrap();
            prop_assert!(v >= BigRational::zero() && v < BigRational::one());
            let d = &n * a.value(k + 1).unwrap() - &v;
            prop_assert_eq!(d, BigRational::from_integer(BigInt::from(a.digit(k).unwrap())));
        }
    }

    #[test]
    fn addition_is_pointwise_mod_one((a, b) in pair_over()) {
        let s = a.try_add(&b).unwrap();
        prop_assert!(s.carrier().value().is_some());
        let d = a.try_sub(&b).unwrap();
        for n in 0..=12 {
            prop_assert_eq!(s.value(n).unwrap(), frac(&(a.value(n).unwrap() + b.value(n).unwrap())));
            prop_assert_eq!(d.value(n).unwrap(), frac(&(a.value(n).unwrap() - b.value(n).unwrap())));
        }
        prop_assert!(a.try_add(&a.neg()).unwrap().is_zero());
    }

    #[test]
    fn scale_and_shift_act_termwise(a in element(), m in -7i64..8, k in 0usize..6) {
        let s = a.scale(&BigInt::from(m));
        let t = a.shift(k).unwrap();
        for n in 0..=10 {
            prop_assert_eq!(s.value(n).unwrap(), frac(&(BigRational::from_integer(BigInt::from(m)) * a.value(n).unwrap())));
            prop_assert_eq!(t.value(n).unwrap(), a.value(n + k).unwrap());
        }
    }

    #[test]
    fn defect_transforms_under_moves(a in element(), m in -7i64..8, k in 0usize..6) {
        let w = a.periodic_defect().unwrap();
        let mm = BigRational::from_integer(BigInt::from(m));
        prop_assert_eq!(a.scale(&BigInt::from(m)).periodic_defect().unwrap(), &mm * &w);
        let nk = BigRational::from_integer(big_pow(a.modulus(), k));
        prop_assert_eq!(a.shift(k).unwrap().periodic_defect().unwrap(), &w / nk);
    }

    #[test]
    fn periodicity_rule_matches_value_scan(a in element()) {
        let claimed = a.period().unwrap();
        let scanned = scanned_period(&a, 40);
        match claimed {
            Some(k) if k <= 40 => prop_assert_eq!(scanned, Some(k as usize)),
            Some(_) => prop_assert!(scanned.is_none()),
            None => prop_assert!(scanned.is_none()),
        }
        prop_assert_eq!(a.range_finite().unwrap(), claimed.is_some());
    }

    #[test]
    fn aperiodic_values_do_not_repeat_late(a in element()) {
        // Infinite range: once past the preperiod no value recurs among the next terms.
        if a.period().unwrap().is_none() {
            let vals: Vec<_> = (20..40).map(|n| a.value(n).unwrap()).collect();
            for i in 0..vals.len() {
                for j in i + 1..vals.len() {
                    prop_assert_ne!(&vals[i], &vals[j]);
                }
            }
        }
    }

    #[test]
    fn lambda_roundtrip(a in element()) {
        let b = omega_lambda_inv_default(&a).unwrap();
        let back = omega_lambda(&b).unwrap();
        prop_assert_eq!(&back, &a);
        let omega = b.seq().omega();
        for n in 0..=10 {
            prop_assert_eq!(b.value(n * omega).unwrap(), a.value(n).unwrap());
        }
        let pa = XiElement::new(a.modulus(), a.base().clone(), a.carrier().to_prefix(10).unwrap()).unwrap();
        let pb = omega_lambda_inv_default(&pa).unwrap();
        prop_assert!(matches!(pb.carrier(), LambdaCarrier::Digits(_)));
        for m in 0..=10 * omega {
            prop_assert_eq!(pb.value(m).unwrap(), b.value(m).unwrap());
        }
        prop_assert_eq!(omega_lambda(&pb).unwrap(), pa);
    }

    #[test]
    fn reordered_lambda_satisfies_recurrence(a in modulus().prop_filter("composite", |n| *n == 12 || *n == 6 || *n == 10).prop_flat_map(element_over)) {
        let mut period = PrimeSeq::of_modulus(a.modulus()).unwrap().period().to_vec();
        period.reverse();
        let seq = PrimeSeq::new(period).unwrap();
        let b = omega_lambda_inv(&a, &seq).unwrap();
        for m in 0..12 {
            let lam = BigRational::from_integer(BigInt::from(seq.entry(m)));
            let d = lam * b.value(m + 1).unwrap() - b.value(m).unwrap();
            prop_assert_eq!(d, BigRational::from_integer(BigInt::from(b.digit(m).unwrap())));
        }
        prop_assert_eq!(omega_lambda(&b).unwrap(), a);
    }

    #[test]
    fn pairing_is_a_character((a, x, y) in modulus().prop_flat_map(|n| (element_over(n), qn(n), qn(n)))) {
        let lhs = a.pairing(&x.try_add(&y).unwrap()).unwrap();
        let rhs = a.pairing(&x).unwrap() + a.pairing(&y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn decompose_recompose() {
    let a = XiElement::periodic(5, ratio(1, 62)).unwrap();
    let (base, j) = a.decompose();
    assert_eq!((base.clone(), j.value().unwrap().clone()), (ratio(1, 62), ratio(-1, 62)));
    assert_eq!(XiElement::new(5, base, j).unwrap(), a);
    let z = XiElement::zero(4).unwrap();
    let (b0, j0) = z.decompose();
    assert!(b0.is_zero() && j0.value().unwrap().is_zero());
}
