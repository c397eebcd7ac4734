//! One line per acceptance criterion; exits non-zero if any fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use nsolenoid::classify::{bundle_data, isomorphic, replay_witness};
use nsolenoid::ktheory::{
    coboundary, cohomologous, difference_cochain, omega_from_k, omega_to_k, q_add, trace_lift, trace_lift_q,
    xi_cocycle,
};
use nsolenoid::multiplier::{is_simple, symmetrizer, theta};
use nsolenoid::{
    Angle, Direction, IsoVerdict, KElement, NadicInteger, QGroupElement, QnRational, SymmetrizerDescription,
    XiElement,
};
use nsolenoid_oracle::symmetrizer::is_lattice_of;
use nsolenoid_oracle::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const SEED: u64 = 20_240_601;

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn err(e: nsolenoid::Error) -> String {
    e.to_string()
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn c1() -> Outcome {
    let a = XiElement::periodic(5, ratio(1, 62)).map_err(err)?;
    let desc = symmetrizer(&a).map_err(err)?;
    ensure!(desc == SymmetrizerDescription::ScaledLattice { b: BigInt::from(62) }, "closed form gave {desc:?}");
    let brute = brute_symmetrizer(&a, 130, 4).map_err(err)?;
    ensure!(is_lattice_of(&brute, 62), "brute window is not the 62-lattice ({} points)", brute.points.len());
    let cmp = compare_symmetrizer(&a, 130, 4).map_err(err)?;
    ensure!(cmp.agrees, "{} window points disagree", cmp.mismatches.len());
    Ok(format!("ScaledLattice(62); {} symmetric points in the P=130, K=4 window", brute.points.len()))
}

fn c2() -> Outcome {
    let a = XiElement::periodic(3, ratio(1, 2)).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut q = || QnRational::new(rng.gen_range(-300i64..=300), rng.gen_range(0u32..6), 3).unwrap();
    let (mut even, mut odd) = (0, 0);
    for _ in 0..200 {
        let g = (q(), q());
        let h = (q(), q());
        let t = theta(&a, &g, &h).map_err(err)?;
        let prod = g.0.numer() * h.1.numer() - h.0.numer() * g.1.numer();
        let expected = if prod.bit(0) { Angle::new(ratio(1, 2)) } else { Angle::zero() };
        ensure!(t == expected, "theta({g:?}, {h:?}) = {t}");
        if prod.bit(0) { odd += 1 } else { even += 1 }
    }
    Ok(format!("{even} even products gave 0, {odd} odd products gave 1/2"))
}

fn c3() -> Outcome {
    for n in [2u64, 3, 5] {
        let a = carrier_element(n, ratio(1, 1)).map_err(err)?;
        for k in 0..8 {
            let expected = if k == 0 { BigRational::zero() } else { BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(n), k)) };
            ensure!(a.value(k).map_err(err)? == expected, "N={n}: alpha_{k} is not 1/N^{k}");
        }
        ensure!(symmetrizer(&a).map_err(err)? == SymmetrizerDescription::Trivial, "N={n}: symmetrizer not trivial");
        ensure!(is_simple(&a).map_err(err)?, "N={n}: not simple");
    }
    Ok("Trivial and simple for N = 2, 3, 5".into())
}

fn fuzz_suite(kind: FuzzKind, trials: usize) -> Outcome {
    let mut runs = 0;
    for n in FUZZ_MODULI {
        for j in standard_carriers(n) {
            let a = carrier_element(n, j.clone()).map_err(err)?;
            let rep = cocycle_fuzz(kind, &a, trials, SEED).map_err(err)?;
            ensure!(rep.passed, "N={n}, J={j}: {}", rep.counterexamples.join("; "));
            runs += 1;
        }
    }
    Ok(format!("{runs} configurations x {trials} seeded trials"))
}

fn c4() -> Outcome {
    fuzz_suite(FuzzKind::Xi, 1000)
}

fn c5() -> Outcome {
    fuzz_suite(FuzzKind::Zeta, 500)
}

fn c6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut alphas = vec![Arc::new(XiElement::periodic(3, ratio(1, 2)).map_err(err)?)];
    for _ in 0..2 {
        alphas.push(Arc::new(random_element(&mut rng).map_err(err)?));
    }
    for a in &alphas {
        let n = a.modulus();
        let re = Reference::of(a);
        let sample: Vec<QGroupElement> = (0..200)
            .map(|_| {
                let x = QnRational::new(rng.gen_range(-400i64..=400), rng.gen_range(0u32..7), n).unwrap();
                QGroupElement::new(a, rng.gen_range(-50i64..=50), x).unwrap()
            })
            .collect();
        let images = sample.iter().map(|e| omega_to_k(a, e)).collect::<Result<Vec<_>, _>>().map_err(err)?;
        for (e, img) in sample.iter().zip(&images) {
            ensure!(&omega_from_k(a, img).map_err(err)? == e, "roundtrip fails at {e:?}");
        }
        for i in 0..sample.len() {
            for j in i + 1..sample.len() {
                ensure!((sample[i] == sample[j]) == (images[i] == images[j]), "omega not injective");
            }
        }
        for w in sample.windows(2) {
            let s = q_add(a, &w[0], &w[1]).map_err(err)?;
            let lhs = omega_to_k(a, &s).map_err(err)?;
            let rhs = omega_to_k(a, &w[0]).map_err(err)?.try_add(&omega_to_k(a, &w[1]).map_err(err)?).map_err(err)?;
            ensure!(lhs == rhs, "omega not additive");
            let t = trace_lift_q(a, &s).map_err(err)?;
            let ts = trace_lift_q(a, &w[0]).map_err(err)? + trace_lift_q(a, &w[1]).map_err(err)?;
            ensure!(t == ts, "trace not additive");
        }
        // Surjectivity: K elements built from the definition have preimages.
        for _ in 0..200 {
            let x = QnRational::new(rng.gen_range(-400i64..=400), rng.gen_range(0u32..7), n).map_err(err)?;
            let k = x.exp() as usize;
            let first = BigRational::from_integer(BigInt::from(rng.gen_range(-50i64..=50)))
                + BigRational::new(x.numer() * re.j(k).map_err(err)?, num_traits::pow(BigInt::from(n), k));
            let e = KElement::new(a, first, x).map_err(err)?;
            ensure!(omega_to_k(a, &omega_from_k(a, &e).map_err(err)?).map_err(err)? == e, "no preimage");
        }
        for k in 0..=10usize {
            let d = num_traits::pow(BigInt::from(n), k);
            let e = KElement::new(a, BigRational::new(re.j(k).map_err(err)?, d.clone()), QnRational::new(1, k as u32, n).map_err(err)?)
                .map_err(err)?;
            let pre = omega_from_k(a, &e).map_err(err)?;
            ensure!(trace_lift_q(a, &pre).map_err(err)? == re.alpha(k).map_err(err)?, "trace at k={k}");
            ensure!(trace_lift(&e) == re.alpha(k).map_err(err)?, "trace lift at k={k}");
        }
    }
    Ok(format!("{} contexts, 200-element samples, traces to k=10", alphas.len()))
}

fn c7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut inputs = vec![XiElement::periodic(3, ratio(1, 2)).map_err(err)?];
    inputs.push(random_element(&mut rng).map_err(err)?);
    inputs.push(random_element(&mut rng).map_err(err)?);
    let mut classes = 0;
    for a in &inputs {
        let rep = colimit_compare(a, 6, 8, 6).map_err(err)?;
        ensure!(rep.holds, "N={}, alpha_0={}: {rep:?}", a.modulus(), a.base());
        classes += rep.classes;
    }
    Ok(format!("3 inputs to depth 6, {classes} classes"))
}

fn c8() -> Outcome {
    let a = XiElement::periodic(2, ratio(1, 3)).map_err(err)?;
    let b = XiElement::periodic(4, ratio(1, 3)).map_err(err)?;
    let v = isomorphic(&a, &b, 32).map_err(err)?;
    let IsoVerdict::Yes(w) = &v else { return Err(format!("(a) gave {v:?}")) };
    ensure!(w.r == 2 && w.nu == 2, "(a) witness {w:?}");
    ensure!(replay_witness(&a, &b, w, 40).map_err(err)?, "(a) witness does not replay");
    let c = XiElement::periodic(2, ratio(1, 5)).map_err(err)?;
    ensure!(c.period().map_err(err)? == Some(4), "(b) input period");
    let v = isomorphic(&a, &c, 32).map_err(err)?;
    ensure!(v.is_no(), "(b) gave {v:?}");
    let shifted = a.shift(1).map_err(err)?;
    let v = isomorphic(&a, &shifted, 32).map_err(err)?;
    let IsoVerdict::Yes(w) = &v else { return Err(format!("(c) gave {v:?}")) };
    ensure!(w.shift == 1 && w.sign == 1, "(c) witness {w:?}");
    let mut pairs = 0;
    for n in [2u64, 3, 5, 7] {
        for (base, j) in [((1, 3), (2, 11)), ((0, 1), (1, 1)), ((3, 4), (-7, 13))] {
            let j = ratio(j.0, j.1);
            let alpha = XiElement::new(n, ratio(base.0, base.1), NadicInteger::from_rational(j, n).map_err(err)?).map_err(err)?;
            for k in 0..5 {
                let beta = alpha.shift(k).map_err(err)?;
                let v = isomorphic(&alpha, &beta, 32).map_err(err)?;
                let IsoVerdict::Yes(w) = &v else { return Err(format!("(c) N={n} k={k}: {v:?}")) };
                ensure!(replay_witness(&alpha, &beta, w, 40).map_err(err)?, "(c) replay N={n} k={k}");
                if alpha.period().map_err(err)?.is_none() && k > 0 {
                    ensure!(w.direction == Direction::BetaFromAlpha && w.shift == k, "(c) N={n} k={k}: {w:?}");
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("(a) Yes via R=2, (b) No, (c) {} shift pairs Yes", pairs + 1))
}

fn c9() -> Outcome {
    let mut count = 0;
    for n in [2u64, 3, 6] {
        let probes: Vec<(QnRational, QnRational)> = (0..12)
            .map(|i| {
                (
                    QnRational::new(i * 7 - 40, (i % 4) as u32, n).unwrap(),
                    QnRational::new(33 - i * 5, (i % 3) as u32 + 1, n).unwrap(),
                )
            })
            .collect();
        for a in -20i64..=20 {
            for b in -20i64..=20 {
                let (j, r) = (NadicInteger::iota(a, n).map_err(err)?, NadicInteger::iota(b, n).map_err(err)?);
                let w = cohomologous(&j, &r).map_err(err)?.ok_or(format!("N={n}: no witness for ({a}, {b})"))?;
                ensure!(w == BigInt::from(b - a), "N={n}: witness {w} for ({a}, {b})");
                let psi = difference_cochain(&j, &r, &-w.clone(), 4).map_err(err)?;
                for (x, y) in &probes {
                    let lhs = coboundary(&psi, x, y).map_err(err)?;
                    let rhs = xi_cocycle(&j, x, y).map_err(err)? - xi_cocycle(&r, x, y).map_err(err)?;
                    ensure!(lhs == rhs, "N={n}: replay fails for ({a}, {b}) at ({x}, {y})");
                }
                count += 1;
            }
        }
    }
    let half = NadicInteger::from_rational(ratio(-1, 2), 3).map_err(err)?;
    let zero = NadicInteger::iota(0, 3).map_err(err)?;
    ensure!(cohomologous(&half, &zero).map_err(err)?.is_none(), "(-1/2, iota(0)) gave a witness");
    Ok(format!("{count} integer pairs replayed; (-1/2, iota(0)) has none"))
}

fn c10() -> Outcome {
    let a = XiElement::periodic(2, ratio(1, 3)).map_err(err)?;
    let b = bundle_data(&a).map_err(err)?;
    ensure!(b.q == BigInt::from(3) && b.k == 2 && b.lambda == Angle::new(ratio(1, 3)), "N=2: {b:?}");
    ensure!(b.commutation_holds() && b.orders_hold(), "N=2: identities fail");
    let c = XiElement::periodic(5, ratio(1, 62)).map_err(err)?;
    let d = bundle_data(&c).map_err(err)?;
    ensure!(d.q == BigInt::from(62) && d.k == 3, "N=5: q={}, k={}", d.q, d.k);
    ensure!(d.commutation_holds() && d.orders_hold(), "N=5: identities fail");
    Ok("q=3, k=2, lambda=1/3; q=62, k=3".into())
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() {
    let criteria: [Criterion; 10] = [
        ("symmetrizer of alpha_0 = 1/62 over N=5 against the brute window", c1, Some(Duration::from_secs(10))),
        ("skew form of the constant 1/2 sequence over N=3", c2, Some(Duration::from_secs(1))),
        ("values 1/N^n give a simple algebra", c3, None),
        ("xi cocycle suite", c4, Some(Duration::from_secs(5))),
        ("zeta + d(-mu) = xi", c5, None),
        ("omega, its inverse and the trace lift", c6, None),
        ("finite-stage colimit", c7, Some(Duration::from_secs(30))),
        ("classification decisions", c8, None),
        ("cohomologous integer carriers", c9, None),
        ("bundle data", c10, None),
    ];
    let mut failures = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if took > *l => Err(format!("took {took:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name}: {detail} ({took:.2?})", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2}: FAIL  {name}: {why} ({took:.2?})", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
