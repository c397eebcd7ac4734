mod common;

use std::sync::Arc;

use common::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use nsolenoid::arith::big_pow;
use nsolenoid::ktheory::{
    coboundary, cohomologous, k_member, omega_from_k, omega_to_k, prufer_pair, q_add, q_neg, trace_lift,
    trace_lift_q, weakly_equivalent, xi_cocycle, zeta_cocycle, Cochain,
};
use nsolenoid::{KElement, NadicInteger, QGroupElement, QnRational, WeakVerdict, XiElement};
use proptest::prelude::*;

/// `a·b⁻¹ mod N^k` straight from the rational value.
fn residue(j: &NadicInteger, k: usize) -> BigInt {
    let v = j.value().unwrap();
    let m = big_pow(j.modulus(), k);
    let e = v.denom().extended_gcd(&m);
    assert!(e.gcd.is_one());
    (v.numer() * e.x).mod_floor(&m)
}

/// The rational potential `f(p/N^k) = p·J_k/N^k` of which ξ_J is the coboundary.
fn potential(j: &NadicInteger, x: &QnRational) -> BigRational {
    let k = x.exp() as usize;
    BigRational::new(x.numer() * residue(j, k), big_pow(j.modulus(), k))
}

fn triple(n: u64) -> impl Strategy<Value = (QnRational, QnRational, QnRational)> {
    (qn(n), qn(n), qn(n))
}

fn setup() -> impl Strategy<Value = (NadicInteger, (QnRational, QnRational, QnRational))> {
    modulus().prop_flat_map(|n| (carrier(n), triple(n)))
}

type AlphaCase = (Arc<XiElement>, (QnRational, QnRational, QnRational), (i64, i64, i64));

fn alpha_setup() -> impl Strategy<Value = AlphaCase> {
    modulus().prop_flat_map(|n| (element_over(n).prop_map(Arc::new), triple(n), (-20i64..20, -20i64..20, -20i64..20)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn xi_is_a_symmetric_coboundary((j, (x, y, z)) in setup()) {
        let c = |a: &QnRational, b: &QnRational| xi_cocycle(&j, a, b).unwrap();
        prop_assert_eq!(c(&x, &y), c(&y, &x));
        let xy = x.try_add(&y).unwrap();
        let yz = y.try_add(&z).unwrap();
        prop_assert_eq!(c(&x, &y) + c(&xy, &z), c(&x, &yz) + c(&y, &z));
        let df = potential(&j, &x) + potential(&j, &y) - potential(&j, &xy);
        prop_assert_eq!(BigRational::from_integer(c(&x, &y)), df);
    }

    #[test]
    fn zeta_and_mu_reassemble_xi((j, (x, y, _z)) in setup()) {
        let minus_mu = Cochain::Scaled(BigInt::from(-1), Box::new(Cochain::Mu(j.clone())));
        let lhs = zeta_cocycle(&j, &x, &y).unwrap() + coboundary(&minus_mu, &x, &y).unwrap();
        prop_assert_eq!(lhs, xi_cocycle(&j, &x, &y).unwrap());
        let z = zeta_cocycle(&j, &x, &y).unwrap();
        prop_assert!(z == BigInt::zero() || z == BigInt::one());
    }

    #[test]
    fn prufer_pairing_is_bilinear(
        (j, r, (x, y, _z)) in modulus().prop_flat_map(|n| (carrier(n), carrier(n), triple(n)))
    ) {
        let xy = x.try_add(&y).unwrap();
        prop_assert_eq!(prufer_pair(&j, &xy).unwrap(), prufer_pair(&j, &x).unwrap() + prufer_pair(&j, &y).unwrap());
        let jr = j.try_add(&r).unwrap();
        prop_assert_eq!(prufer_pair(&jr, &x).unwrap(), prufer_pair(&j, &x).unwrap() + prufer_pair(&r, &x).unwrap());
    }

    #[test]
    fn coboundary_is_linear((j, (x, y, _z)) in setup(), m in -5i64..6) {
        let mu = Cochain::Mu(j.clone());
        let g = Cochain::Generators { modulus: j.modulus(), values: (0..6).map(|k| BigInt::from(k * 3 - 4)).collect() };
        let sum = Cochain::Sum(Box::new(Cochain::Scaled(BigInt::from(m), Box::new(mu.clone()))), Box::new(g.clone()));
        let lhs = coboundary(&sum, &x, &y).unwrap();
        let rhs = BigInt::from(m) * coboundary(&mu, &x, &y).unwrap() + coboundary(&g, &x, &y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn boxplus_is_an_abelian_group((a, (x, y, z), (s, t, u)) in alpha_setup()) {
        let e = |c: i64, x: &QnRational| QGroupElement::new(&a, c, x.clone()).unwrap();
        let (p, q, r) = (e(s, &x), e(t, &y), e(u, &z));
        let add = |g: &QGroupElement, h: &QGroupElement| q_add(&a, g, h).unwrap();
        prop_assert_eq!(add(&add(&p, &q), &r), add(&p, &add(&q, &r)));
        prop_assert_eq!(add(&p, &q), add(&q, &p));
        let zero = QGroupElement::zero(&a).unwrap();
        prop_assert_eq!(add(&p, &zero), p.clone());
        prop_assert_eq!(add(&p, &q_neg(&a, &p).unwrap()), zero);
    }

    #[test]
    fn omega_is_an_isomorphism_onto_k((a, (x, y, _z), (s, t, _u)) in alpha_setup()) {
        let p = QGroupElement::new(&a, s, x.clone()).unwrap();
        let q = QGroupElement::new(&a, t, y.clone()).unwrap();
        let (op, oq) = (omega_to_k(&a, &p).unwrap(), omega_to_k(&a, &q).unwrap());
        prop_assert!(k_member(&a, op.first(), op.second()).unwrap());
        prop_assert_eq!(omega_to_k(&a, &q_add(&a, &p, &q).unwrap()).unwrap(), op.try_add(&oq).unwrap());
        prop_assert_eq!(omega_from_k(&a, &op).unwrap(), p.clone());
        let tp = trace_lift_q(&a, &p).unwrap();
        let tq = trace_lift_q(&a, &q).unwrap();
        prop_assert_eq!(trace_lift_q(&a, &q_add(&a, &p, &q).unwrap()).unwrap(), tp + tq);
        // Off-lattice first coordinates are rejected.
        let off = op.first() + BigRational::new(BigInt::one(), BigInt::from(a.modulus() * 7 + 1));
        prop_assert!(KElement::new(&a, off, x.clone()).is_err());
    }

    #[test]
    fn trace_of_generators_recovers_alpha(a in element().prop_map(Arc::new), k in 0u32..8) {
        let n = a.modulus();
        let first = BigRational::new(residue(a.carrier(), k as usize), big_pow(n, k as usize));
        let e = KElement::new(&a, first, QnRational::new(1, k, n).unwrap()).unwrap();
        prop_assert_eq!(trace_lift(&e), a.value(k as usize).unwrap());
        let q = omega_from_k(&a, &e).unwrap();
        prop_assert!(q.z().is_zero());
    }

    #[test]
    fn cohomology_matches_residue_search((j, r) in modulus().prop_flat_map(|n| (carrier(n), carrier(n)))) {
        // J and R differ by ι(d) exactly when J_k − R_k ≡ d (mod N^k) for all large k;
        // at depth 24 every small candidate is pinned down.
        let n = j.modulus();
        let m = big_pow(n, 24);
        let mut d = (residue(&j, 24) - residue(&r, 24)).mod_floor(&m);
        if d > &m / 2 {
            d -= &m;
        }
        let brute = if d.abs() < BigInt::from(10_000) { Some(-d) } else { None };
        prop_assert_eq!(cohomologous(&j, &r).unwrap(), brute);
    }

    #[test]
    fn shifted_carriers_are_cohomologous((j, d) in modulus().prop_flat_map(|n| (carrier(n), -100i64..100))) {
        let r = j.try_sub(&NadicInteger::iota(d, j.modulus()).unwrap()).unwrap();
        prop_assert_eq!(cohomologous(&j, &r).unwrap(), Some(BigInt::from(-d)));
    }

    #[test]
    fn weak_equivalence_witness_is_exact(
        (j, r, k) in prop::sample::select(vec![2u64, 3, 5, 7]).prop_flat_map(|n| (carrier(n), carrier(n), 0u32..4))
    ) {
        let n = j.modulus();
        let scaled = j.scale(&big_pow(n, k as usize));
        let r2 = scaled.try_add(&NadicInteger::iota(3, n).unwrap()).unwrap();
        match weakly_equivalent(&j, &r2, 40).unwrap() {
            WeakVerdict::Yes { k: found, .. } => prop_assert!(found <= k as usize),
            other => prop_assert!(false, "{:?}", other),
        }
        if let WeakVerdict::Yes { k, scaled } = weakly_equivalent(&j, &r, 40).unwrap() {
            let p = BigRational::from_integer(big_pow(n, k));
            let (a, b) = (j.value().unwrap(), r.value().unwrap());
            let diff = match scaled {
                nsolenoid::ScaledSide::First => &p * a - b,
                nsolenoid::ScaledSide::Second => &p * b - a,
            };
            prop_assert!(diff.is_integer());
        }
    }
}
