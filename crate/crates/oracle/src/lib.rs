//! Brute-force verifiers for the closed forms of `nsolenoid`: a windowed
//! symmetrizer search, explicit finite-stage colimits, seeded cocycle
//! fuzzing and a stage-by-stage coboundary solver.
//!
//! Sequence values are recomputed from raw element data in [`reference`].

pub mod coboundary;
pub mod colimit;
pub mod fuzz;
pub mod reference;
pub mod symmetrizer;

pub use coboundary::{coboundary_solve, stages_for_bound, CochainSpec, SolveOutcome};
pub use colimit::{colimit_build, colimit_compare, ColimitReport, ColimitStage};
pub use fuzz::{cocycle_fuzz, FuzzKind, FuzzReport};
pub use reference::Reference;
pub use symmetrizer::{brute_symmetrizer, compare_symmetrizer, BruteSymmetrizer, LatticePoint, SymmetrizerComparison};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use nsolenoid::{NadicInteger, Result, XiElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleConfig {
    pub window_p: i64,
    pub window_k: u32,
    pub depth: usize,
    pub max_depth: usize,
    pub colimit_window: i64,
    pub trials: usize,
    pub solve_bound: u64,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            window_p: 150,
            window_k: 4,
            depth: 6,
            max_depth: 6,
            colimit_window: 8,
            trials: 1000,
            solve_bound: 100,
            seed: 0x5eed,
        }
    }
}

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

/// A seeded element with rational carrier over one of a few small moduli.
pub fn random_element(rng: &mut ChaCha8Rng) -> Result<XiElement> {
    let n = [2u64, 3, 5, 6, 10][rng.gen_range(0..5)];
    let b = rng.gen_range(1i64..30);
    let a = rng.gen_range(0..b);
    let mut d = rng.gen_range(1i64..30);
    while d.gcd(&(n as i64)) != 1 {
        d += 1;
    }
    let c = rng.gen_range(-60i64..60);
    XiElement::new(n, ratio(a, b), NadicInteger::from_rational(ratio(c, d), n)?)
}

/// `α_0 = 0` with carrier `J`.
pub fn carrier_element(n: u64, j: BigRational) -> Result<XiElement> {
    XiElement::new(n, ratio(0, 1), NadicInteger::from_rational(j, n)?)
}

/// The carriers ι(0), ι(1), ι(−1) and, for odd N, −1/2.
pub fn standard_carriers(n: u64) -> Vec<BigRational> {
    let mut v = vec![ratio(0, 1), ratio(1, 1), ratio(-1, 1)];
    if n % 2 == 1 {
        v.push(ratio(-1, 2));
    }
    v
}

pub const FUZZ_MODULI: [u64; 5] = [2, 3, 6, 10, 12];

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub config: OracleConfig,
    pub passed: bool,
    pub checks: Vec<Check>,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

/// Runs every oracle against the library with the given windows.
pub fn selftest(cfg: &OracleConfig) -> Result<SelftestReport> {
    let mut checks = Vec::new();

    let n5 = XiElement::periodic(5, ratio(1, 62))?;
    let cmp = compare_symmetrizer(&n5, cfg.window_p, cfg.window_k)?;
    let brute = brute_symmetrizer(&n5, cfg.window_p, cfg.window_k)?;
    checks.push(check(
        "symmetrizer: N=5, alpha_0=1/62",
        cmp.agrees && symmetrizer::is_lattice_of(&brute, 62),
        format!("{} of {} window points symmetric", cmp.brute_count, cmp.window_count),
    ));
    let zero = XiElement::zero(3)?;
    // Every point is symmetric here, so the search is quadratic in the window.
    let cmp = compare_symmetrizer(&zero, cfg.window_p.min(10), cfg.window_k.min(2))?;
    checks.push(check(
        "symmetrizer: zero element",
        cmp.agrees && cmp.brute_count == cmp.window_count,
        format!("{} of {} window points symmetric", cmp.brute_count, cmp.window_count),
    ));
    for n in [2u64, 3, 5] {
        let a = carrier_element(n, ratio(1, 1))?;
        let cmp = compare_symmetrizer(&a, cfg.window_p, cfg.window_k)?;
        let brute = brute_symmetrizer(&a, cfg.window_p, cfg.window_k)?;
        checks.push(check(
            format!("symmetrizer: N={n}, values 1/N^n"),
            cmp.agrees && symmetrizer::is_trivial(&brute),
            format!("{} symmetric points", cmp.brute_count),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut colimit_inputs = vec![XiElement::periodic(3, ratio(1, 2))?];
    colimit_inputs.push(random_element(&mut rng)?);
    colimit_inputs.push(random_element(&mut rng)?);
    for a in &colimit_inputs {
        let rep = colimit_compare(a, cfg.depth, cfg.colimit_window, cfg.max_depth)?;
        checks.push(check(
            format!("colimit: N={}, alpha_0={}, J={}", a.modulus(), a.base(), show_carrier(a)),
            rep.holds,
            format!("{} classes to depth {}", rep.classes, rep.depth),
        ));
    }

    for n in FUZZ_MODULI {
        for j in standard_carriers(n) {
            let a = carrier_element(n, j.clone())?;
            for kind in [FuzzKind::Xi, FuzzKind::Zeta] {
                let rep = cocycle_fuzz(kind, &a, cfg.trials, cfg.seed)?;
                checks.push(check(
                    format!("fuzz {kind:?}: N={n}, J={j}"),
                    rep.passed,
                    rep.counterexamples.first().cloned().unwrap_or_default(),
                ));
            }
        }
    }
    for a in [n5.clone(), XiElement::periodic(3, ratio(1, 2))?, carrier_element(2, ratio(1, 1))?] {
        let rep = cocycle_fuzz(FuzzKind::PsiBichar, &a, cfg.trials, cfg.seed)?;
        checks.push(check(
            format!("fuzz PsiBichar: N={}, alpha_0={}", a.modulus(), a.base()),
            rep.passed,
            rep.counterexamples.first().cloned().unwrap_or_default(),
        ));
    }

    let iota = |z: i64, n: u64| NadicInteger::iota(z, n);
    let k = stages_for_bound(3, cfg.solve_bound);
    let cases = [
        ("coboundary: (J, J)", iota(7, 3)?, iota(7, 3)?, true),
        ("coboundary: (iota(5), iota(0))", iota(5, 3)?, iota(0, 3)?, true),
        (
            "coboundary: (-1/2, iota(0))",
            NadicInteger::from_rational(ratio(-1, 2), 3)?,
            iota(0, 3)?,
            false,
        ),
    ];
    for (name, j, r, solvable) in cases {
        let out = coboundary_solve(&j, &r, k, cfg.solve_bound)?;
        let passed = match &out {
            SolveOutcome::Solved { agrees_with_library, .. } => solvable && *agrees_with_library,
            SolveOutcome::NoSolution { agrees_with_library, .. } => !solvable && *agrees_with_library,
            SolveOutcome::BoundExhausted { .. } => false,
        };
        checks.push(check(name, passed, format!("{out:?}")));
    }

    Ok(SelftestReport {
        seed: cfg.seed,
        config: *cfg,
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

fn show_carrier(a: &XiElement) -> String {
    match a.carrier().value() {
        Some(v) => v.to_string(),
        None => "prefix".into(),
    }
}
