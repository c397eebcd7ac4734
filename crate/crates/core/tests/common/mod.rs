#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use nsolenoid::{NadicInteger, QnRational, XiElement};
use proptest::prelude::*;

pub const MODULI: [u64; 7] = [2, 3, 4, 5, 6, 10, 12];

pub fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

pub fn modulus() -> impl Strategy<Value = u64> {
    prop::sample::select(MODULI.to_vec())
}

/// Smallest denominator `≥ d` coprime to `n`.
pub fn coprime_den(d: i64, n: u64) -> i64 {
    (d..).find(|x| x.gcd(&(n as i64)) == 1).unwrap()
}

/// A rational carrier `c/d` with `d` coprime to `n`.
pub fn carrier(n: u64) -> impl Strategy<Value = NadicInteger> {
    (-60i64..60, 1i64..25).prop_map(move |(c, d)| NadicInteger::from_rational(ratio(c, coprime_den(d, n)), n).unwrap())
}

/// Arbitrary rational elements of Ξ_n, with periodic ones mixed in.
pub fn element_over(n: u64) -> impl Strategy<Value = XiElement> {
    prop_oneof![
        (0i64..40, 1i64..40, carrier(n)).prop_map(move |(a, b, j)| {
            let b = b.max(1);
            XiElement::new(n, ratio(a % b, b), j).unwrap()
        }),
        (0i64..40, 1i64..40).prop_map(move |(a, b)| {
            let b = coprime_den(b, n);
            XiElement::periodic(n, ratio(a % b, b)).unwrap()
        }),
    ]
}

pub fn element() -> impl Strategy<Value = XiElement> {
    modulus().prop_flat_map(element_over)
}

pub fn qn_over(n: u64, max_exp: u32) -> impl Strategy<Value = QnRational> {
    (-200i64..200, 0..=max_exp).prop_map(move |(p, k)| QnRational::new(p, k, n).unwrap())
}

pub fn qn(n: u64) -> impl Strategy<Value = QnRational> {
    qn_over(n, 5)
}
