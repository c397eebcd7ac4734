//! Seeded fuzzing of the cocycle identities.

use num_bigint::BigInt;
use num_rational::BigRational;
use nsolenoid::ktheory::{coboundary, mu_cochain, xi_cocycle, zeta_cocycle, Cochain};
use nsolenoid::multiplier::psi;
use nsolenoid::{Angle, QnRational, Result, XiElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::reference::{fract, pow, Reference};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FuzzKind {
    /// Symmetry and the 2-cocycle law of ξ_J, and ξ_J = δf.
    Xi,
    /// `ζ_J + δ(−μ_J) = ξ_J`.
    Zeta,
    /// Bicharacter and 2-cocycle laws of Ψ_α.
    PsiBichar,
}

impl std::str::FromStr for FuzzKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "xi" => Ok(FuzzKind::Xi),
            "zeta" => Ok(FuzzKind::Zeta),
            "psi_bichar" => Ok(FuzzKind::PsiBichar),
            _ => Err(format!("unknown fuzz kind {s}")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzReport {
    pub kind: FuzzKind,
    pub modulus: u64,
    pub seed: u64,
    pub trials: usize,
    pub passed: bool,
    /// The first counterexamples found, verbatim.
    pub counterexamples: Vec<String>,
}

const MAX_REPORTED: usize = 10;

fn random_qn(rng: &mut ChaCha8Rng, n: u64) -> Result<QnRational> {
    QnRational::new(rng.gen_range(-500i64..=500), rng.gen_range(0u32..=6), n)
}

/// `f(p/N^k) = p·J_k/N^k`.
fn potential(re: &Reference, x: &QnRational) -> Result<BigRational> {
    let k = x.exp() as usize;
    Ok(BigRational::new(x.numer() * re.j(k)?, pow(re.modulus(), k)))
}

fn own_psi(re: &Reference, g: &(QnRational, QnRational), h: &(QnRational, QnRational)) -> Result<BigRational> {
    let (x1, x4) = (&g.0, &h.1);
    let a = re.alpha((x1.exp() + x4.exp()) as usize)?;
    Ok(fract(&(a * BigRational::from_integer(x1.numer() * x4.numer()))))
}

fn pair_add(g: &(QnRational, QnRational), h: &(QnRational, QnRational)) -> Result<(QnRational, QnRational)> {
    Ok((g.0.try_add(&h.0)?, g.1.try_add(&h.1)?))
}

fn fuzz_trial(kind: FuzzKind, alpha: &XiElement, re: &Reference, rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    let n = alpha.modulus();
    let j = alpha.carrier();
    let (x, y, z) = (random_qn(rng, n)?, random_qn(rng, n)?, random_qn(rng, n)?);
    let xy = x.try_add(&y)?;
    match kind {
        FuzzKind::Xi => {
            let c = |a: &QnRational, b: &QnRational| xi_cocycle(j, a, b);
            if c(&x, &y)? != c(&y, &x)? {
                return Ok(Some(format!("xi not symmetric at ({x}, {y})")));
            }
            let yz = y.try_add(&z)?;
            if c(&x, &y)? + c(&xy, &z)? != c(&x, &yz)? + c(&y, &z)? {
                return Ok(Some(format!("xi cocycle law fails at ({x}, {y}, {z})")));
            }
            let df = potential(re, &x)? + potential(re, &y)? - potential(re, &xy)?;
            if df != BigRational::from_integer(c(&x, &y)?) {
                return Ok(Some(format!("xi({x}, {y}) = {} but the coboundary of f gives {df}", c(&x, &y)?)));
            }
        }
        FuzzKind::Zeta => {
            let minus_mu = Cochain::Scaled(BigInt::from(-1), Box::new(Cochain::Mu(j.clone())));
            let zeta = zeta_cocycle(j, &x, &y)?;
            if zeta.clone() + coboundary(&minus_mu, &x, &y)? != xi_cocycle(j, &x, &y)? {
                return Ok(Some(format!("zeta + d(-mu) != xi at ({x}, {y})")));
            }
            let fr = |v: &QnRational| potential(re, v).map(|f| fract(&f));
            let own = fr(&x)? + fr(&y)? - fr(&xy)?;
            if own != BigRational::from_integer(zeta.clone()) {
                return Ok(Some(format!("zeta({x}, {y}) = {zeta} but the cross-section gives {own}")));
            }
            let mu = mu_cochain(j, &x)?;
            if BigRational::from_integer(-mu.clone()) != potential(re, &x)?.floor() {
                return Ok(Some(format!("mu({x}) = {mu} disagrees with the floor of the potential")));
            }
        }
        FuzzKind::PsiBichar => {
            let (w, t) = (random_qn(rng, n)?, random_qn(rng, n)?);
            let (g, h, l) = ((x, y), (z, w), (t.clone(), t.scale(&BigInt::from(3))));
            let p = |a: &(QnRational, QnRational), b: &(QnRational, QnRational)| psi(alpha, a, b);
            for (a, b) in [(&g, &h), (&h, &l), (&l, &g)] {
                let own = own_psi(re, a, b)?;
                if p(a, b)? != Angle::new(own.clone()) {
                    return Ok(Some(format!("psi({a:?}, {b:?}) = {} but the sequence gives {own}", p(a, b)?)));
                }
            }
            let gh = pair_add(&g, &h)?;
            if p(&gh, &l)? != p(&g, &l)? + p(&h, &l)? || p(&l, &gh)? != p(&l, &g)? + p(&l, &h)? {
                return Ok(Some(format!("bicharacter law fails at ({g:?}, {h:?}, {l:?})")));
            }
            let hl = pair_add(&h, &l)?;
            if p(&g, &h)? + p(&gh, &l)? != p(&g, &hl)? + p(&h, &l)? {
                return Ok(Some(format!("multiplier cocycle law fails at ({g:?}, {h:?}, {l:?})")));
            }
        }
    }
    Ok(None)
}

/// Runs `trials` seeded random checks of the identities named by `kind`.
pub fn cocycle_fuzz(kind: FuzzKind, alpha: &XiElement, trials: usize, seed: u64) -> Result<FuzzReport> {
    let re = Reference::of(alpha);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counterexamples = Vec::new();
    for _ in 0..trials.max(1) {
        if let Some(c) = fuzz_trial(kind, alpha, &re, &mut rng)? {
            if counterexamples.len() < MAX_REPORTED {
                counterexamples.push(c);
            }
        }
    }
    Ok(FuzzReport {
        kind,
        modulus: alpha.modulus(),
        seed,
        trials: trials.max(1),
        passed: counterexamples.is_empty(),
        counterexamples,
    })
}
