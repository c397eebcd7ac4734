//! K₀ of a noncommutative solenoid, seen either as the subgroup
//! `𝒦_α = {(z + pJ_k/N^k, p/N^k)}` of ℚ × ℚ_N or as the extension
//! `𝒬_α = (ℤ × ℚ_N, ⊞)` of ℚ_N by ℤ, together with the integer cocycles
//! that describe that extension.
//!
//! Coboundaries follow `δc(x, y) = c(x) + c(y) − c(x + y)` throughout.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{big_pow, floor_int, frac, is_prime, multiplicative_order};
use crate::error::{Error, Result};
use crate::nadic::{NadicInteger, QnRational};
use crate::xi::{Angle, XiElement};

fn rat(z: BigInt) -> BigRational {
    BigRational::from_integer(z)
}

fn check_modulus(j: &NadicInteger, xs: &[&QnRational]) -> Result<()> {
    for x in xs {
        if x.modulus() != j.modulus() {
            return Err(Error::ModulusMismatch(j.modulus(), x.modulus()));
        }
    }
    Ok(())
}

/// `J^α`, with `J^α_k = N^k·α_k − α_0`.
pub fn j_seq(alpha: &XiElement) -> NadicInteger {
    alpha.carrier().clone()
}

/// `p·J_k / N^k` for `x = p/N^k` reduced.
fn potential(j: &NadicInteger, x: &QnRational) -> Result<BigRational> {
    if x.is_zero() {
        return Ok(BigRational::zero());
    }
    let k = x.exp() as usize;
    Ok(BigRational::new(x.numer() * j.at(k)?, big_pow(j.modulus(), k)))
}

/// The symmetric ℤ-valued 2-cocycle ξ_J of ℚ_N.
pub fn xi_cocycle(j: &NadicInteger, x: &QnRational, y: &QnRational) -> Result<BigInt> {
    check_modulus(j, &[x, y])?;
    if x.is_zero() || y.is_zero() {
        return Ok(BigInt::zero());
    }
    let (k1, k2) = (x.exp() as usize, y.exp() as usize);
    let n = j.modulus();
    Ok(match k1.cmp(&k2) {
        std::cmp::Ordering::Less => -(x.numer() * j.segment(k1, k2)?),
        std::cmp::Ordering::Greater => -(y.numer() * j.segment(k2, k1)?),
        std::cmp::Ordering::Equal => {
            let s = QnRational::new(x.numer() + y.numer(), k1 as u32, n)?;
            s.numer() * j.segment(s.exp() as usize, k1)?
        }
    })
}

/// `⟨J, x⟩ = p·J_k / N^k mod 1`, the pairing of ℤ_N with the Prüfer group.
pub fn prufer_pair(j: &NadicInteger, x: &QnRational) -> Result<Angle> {
    check_modulus(j, &[x])?;
    Ok(Angle::new(potential(j, x)?))
}

/// `μ_J(x) = [pJ_k/N^k mod 1] − pJ_k/N^k`.
pub fn mu_cochain(j: &NadicInteger, x: &QnRational) -> Result<BigInt> {
    check_modulus(j, &[x])?;
    Ok(-floor_int(&potential(j, x)?))
}

/// `s(z₁) + s(z₂) − s(z₁ + z₂)` with `s` the section of ℚ → ℚ/ℤ landing in `[0, 1)`.
pub fn frac_cross_section_cocycle(z1: &BigRational, z2: &BigRational) -> BigInt {
    let (a, b) = (frac(z1), frac(z2));
    let c = frac(&(&a + &b));
    (a + b - c).to_integer()
}

/// ζ_J: the cross-section cocycle pulled back along the Prüfer pairing.
pub fn zeta_cocycle(j: &NadicInteger, x: &QnRational, y: &QnRational) -> Result<BigInt> {
    check_modulus(j, &[x, y])?;
    let s = x.try_add(y)?;
    let total = prufer_pair(j, x)?.value() + prufer_pair(j, y)?.value() - prufer_pair(j, &s)?.value();
    debug_assert!(total.is_integer());
    Ok(total.to_integer())
}

/// A finitely described map ℚ_N → ℤ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cochain {
    Zero,
    /// μ_J.
    Mu(NadicInteger),
    /// `p/N^k ↦ p·g_k` on reduced forms; undefined for `k ≥ g.len()`.
    Generators { modulus: u64, values: Vec<BigInt> },
    Scaled(BigInt, Box<Cochain>),
    Sum(Box<Cochain>, Box<Cochain>),
}

impl Cochain {
    pub fn eval(&self, x: &QnRational) -> Result<BigInt> {
        match self {
            Cochain::Zero => Ok(BigInt::zero()),
            Cochain::Mu(j) => mu_cochain(j, x),
            Cochain::Generators { modulus, values } => {
                if x.modulus() != *modulus {
                    return Err(Error::ModulusMismatch(*modulus, x.modulus()));
                }
                let g = values.get(x.exp() as usize).ok_or_else(|| {
                    Error::InvalidArgument(format!("cochain undefined at {x}: {} generators known", values.len()))
                })?;
                Ok(x.numer() * g)
            }
            Cochain::Scaled(m, c) => Ok(m * c.eval(x)?),
            Cochain::Sum(a, b) => Ok(a.eval(x)? + b.eval(x)?),
        }
    }
}

/// `δc(x, y) = c(x) + c(y) − c(x + y)`.
pub fn coboundary(c: &Cochain, x: &QnRational, y: &QnRational) -> Result<BigInt> {
    Ok(c.eval(x)? + c.eval(y)? - c.eval(&x.try_add(y)?)?)
}

/// The cochain `ψ(p/N^k) = p·(J_k − R_k − d)/N^k` for `J − R = ι(d)`, with
/// generators up to exponent `depth`. Its coboundary is `ξ_J − ξ_R`.
pub fn difference_cochain(j: &NadicInteger, r: &NadicInteger, d: &BigInt, depth: usize) -> Result<Cochain> {
    let values = (0..=depth)
        .map(|k| Ok((j.at(k)? - r.at(k)? - d) / big_pow(j.modulus(), k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Cochain::Generators {
        modulus: j.modulus(),
        values,
    })
}

/// Deterministic probe pairs used to re-verify witnesses.
fn probe_pairs(modulus: u64, count: usize) -> Result<Vec<(QnRational, QnRational)>> {
    (0..count)
        .map(|i| {
            let p1 = (i as i64 * 37) % 41 - 20;
            let p2 = (i as i64 * 53) % 43 - 21;
            let x = QnRational::new(p1, (i % 5) as u32, modulus)?;
            let y = QnRational::new(p2, ((i / 5) % 5) as u32, modulus)?;
            Ok((x, y))
        })
        .collect()
}

/// Decides whether ξ_J and ξ_R are cohomologous, i.e. whether `J − R ∈ ι(ℤ)`.
/// This is wider than asking `J_n = R_n` for all large `n`: `ι(−1)` and
/// `ι(0)` differ in every `J_n` yet give cohomologous cocycles.
/// The witness is `ψ(1)` for the cochain of [`difference_cochain`], checked
/// against `δψ = ξ_J − ξ_R` on 100 probe pairs before it is returned.
pub fn cohomologous(j: &NadicInteger, r: &NadicInteger) -> Result<Option<BigInt>> {
    let diff = j.value_or_undecidable()? - r.value_or_undecidable()?;
    if j.modulus() != r.modulus() {
        return Err(Error::ModulusMismatch(j.modulus(), r.modulus()));
    }
    if !diff.is_integer() {
        return Ok(None);
    }
    let d = diff.to_integer();
    let psi = difference_cochain(j, r, &d, 5)?;
    for (x, y) in probe_pairs(j.modulus(), 100)? {
        if coboundary(&psi, &x, &y)? != xi_cocycle(j, &x, &y)? - xi_cocycle(r, &x, &y)? {
            return Err(Error::InvalidArgument(format!("witness failed verification at ({x}, {y})")));
        }
    }
    Ok(Some(-d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaledSide {
    /// `N^k·J − R ∈ ℤ`.
    First,
    /// `N^k·R − J ∈ ℤ`.
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeakVerdict {
    Yes { k: usize, scaled: ScaledSide },
    No { reason: String },
    Unknown { bound: usize },
}

/// Weak equivalence on ℤ_N/ℤ for prime N: is `N^k·J − R` or `N^k·R − J` an
/// integer for some `k ≤ bound`? Returns the least such `k`.
pub fn weakly_equivalent(j: &NadicInteger, r: &NadicInteger, bound: usize) -> Result<WeakVerdict> {
    let n = j.modulus();
    if r.modulus() != n {
        return Err(Error::ModulusMismatch(n, r.modulus()));
    }
    if !is_prime(n) {
        return Err(Error::Unsupported(format!(
            "weak equivalence is only available for prime N, got {n}"
        )));
    }
    let (a, b) = (j.value_or_undecidable()?, r.value_or_undecidable()?);
    let (fa, fb) = (frac(a), frac(b));
    if fa.denom() != fb.denom() {
        return Ok(WeakVerdict::No {
            reason: format!(
                "fractional parts have denominators {} and {}, which powers of {n} never reconcile",
                fa.denom(),
                fb.denom()
            ),
        });
    }
    let mut pow = BigInt::one();
    for k in 0..=bound {
        let scaled = rat(pow.clone());
        if (&scaled * a - b).is_integer() {
            return Ok(WeakVerdict::Yes { k, scaled: ScaledSide::First });
        }
        if (&scaled * b - a).is_integer() {
            return Ok(WeakVerdict::Yes { k, scaled: ScaledSide::Second });
        }
        pow *= n;
    }
    let orbit = multiplicative_order(n, fa.denom())? as usize;
    if orbit <= bound + 1 {
        Ok(WeakVerdict::No {
            reason: format!(
                "the full orbit of length {orbit} under multiplication by {n} was searched"
            ),
        })
    } else {
        Ok(WeakVerdict::Unknown { bound })
    }
}

fn same_context(a: &Arc<XiElement>, b: &Arc<XiElement>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::ContextMismatch)
    }
}

/// An element `(z, x)` of 𝒬_α.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QGroupElement {
    z: BigInt,
    x: QnRational,
    alpha: Arc<XiElement>,
}

impl QGroupElement {
    pub fn new(alpha: &Arc<XiElement>, z: impl Into<BigInt>, x: QnRational) -> Result<Self> {
        if x.modulus() != alpha.modulus() {
            return Err(Error::ModulusMismatch(alpha.modulus(), x.modulus()));
        }
        Ok(QGroupElement {
            z: z.into(),
            x,
            alpha: alpha.clone(),
        })
    }

    pub fn zero(alpha: &Arc<XiElement>) -> Result<Self> {
        Self::new(alpha, 0, QnRational::zero(alpha.modulus())?)
    }

    pub fn z(&self) -> &BigInt {
        &self.z
    }

    pub fn x(&self) -> &QnRational {
        &self.x
    }

    pub fn alpha(&self) -> &Arc<XiElement> {
        &self.alpha
    }
}

/// An element of 𝒦_α ⊂ ℚ × ℚ_N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KElement {
    first: BigRational,
    second: QnRational,
    alpha: Arc<XiElement>,
}

impl KElement {
    /// Validates `first − pJ_k/N^k ∈ ℤ`.
    pub fn new(alpha: &Arc<XiElement>, first: BigRational, second: QnRational) -> Result<Self> {
        if second.modulus() != alpha.modulus() {
            return Err(Error::ModulusMismatch(alpha.modulus(), second.modulus()));
        }
        if !k_member(alpha, &first, &second)? {
            return Err(Error::NotInK(crate::arith::fmt_rational(&first), second.to_string()));
        }
        Ok(KElement {
            first,
            second,
            alpha: alpha.clone(),
        })
    }

    pub fn first(&self) -> &BigRational {
        &self.first
    }

    pub fn second(&self) -> &QnRational {
        &self.second
    }

    pub fn alpha(&self) -> &Arc<XiElement> {
        &self.alpha
    }

    /// Componentwise sum.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        same_context(&self.alpha, &other.alpha)?;
        Ok(KElement {
            first: &self.first + &other.first,
            second: self.second.try_add(&other.second)?,
            alpha: self.alpha.clone(),
        })
    }
}

/// `(z, x) ⊞ (y, x') = (z + y + ξ_α(x, x'), x + x')`.
pub fn q_add(alpha: &Arc<XiElement>, a: &QGroupElement, b: &QGroupElement) -> Result<QGroupElement> {
    same_context(alpha, &a.alpha)?;
    same_context(alpha, &b.alpha)?;
    let c = xi_cocycle(alpha.carrier(), &a.x, &b.x)?;
    QGroupElement::new(alpha, &a.z + &b.z + c, a.x.try_add(&b.x)?)
}

/// The ⊞-inverse `(−z − ξ_α(x, −x), −x)`.
pub fn q_neg(alpha: &Arc<XiElement>, a: &QGroupElement) -> Result<QGroupElement> {
    same_context(alpha, &a.alpha)?;
    let nx = a.x.neg();
    let c = xi_cocycle(alpha.carrier(), &a.x, &nx)?;
    QGroupElement::new(alpha, -&a.z - c, nx)
}

/// ω: 𝒬_α → 𝒦_α, `(z, p/N^k) ↦ (z + pJ_k/N^k, p/N^k)`.
pub fn omega_to_k(alpha: &Arc<XiElement>, a: &QGroupElement) -> Result<KElement> {
    same_context(alpha, &a.alpha)?;
    let first = rat(a.z.clone()) + potential(alpha.carrier(), &a.x)?;
    Ok(KElement {
        first,
        second: a.x.clone(),
        alpha: alpha.clone(),
    })
}

pub fn omega_from_k(alpha: &Arc<XiElement>, e: &KElement) -> Result<QGroupElement> {
    same_context(alpha, &e.alpha)?;
    let z = &e.first - potential(alpha.carrier(), &e.second)?;
    if !z.is_integer() {
        return Err(Error::NotInK(crate::arith::fmt_rational(&e.first), e.second.to_string()));
    }
    QGroupElement::new(alpha, z.to_integer(), e.second.clone())
}

pub fn k_member(alpha: &XiElement, first: &BigRational, second: &QnRational) -> Result<bool> {
    if second.modulus() != alpha.modulus() {
        return Ok(false);
    }
    Ok((first - potential(alpha.carrier(), second)?).is_integer())
}

/// The quotient map 𝒦_α → ℚ_N.
pub fn k_project(e: &KElement) -> QnRational {
    e.second.clone()
}

/// `(z + pJ_k/N^k, p/N^k) ↦ z + p·α_k`.
pub fn trace_lift(e: &KElement) -> BigRational {
    let x = &e.second;
    let shift = BigRational::new(x.numer().clone(), x.denom()) * e.alpha.base();
    &e.first + shift
}

/// The trace on 𝒬_α, through ω.
pub fn trace_lift_q(alpha: &Arc<XiElement>, a: &QGroupElement) -> Result<BigRational> {
    Ok(trace_lift(&omega_to_k(alpha, a)?))
}

pub type IntMatrix = [[BigInt; 2]; 2];
pub type RatMatrix = [[BigRational; 2]; 2];

/// `r_k = N·j_{2k+1} + j_{2k}`, so that `N²·α_{2k+2} = α_{2k} + r_k`.
pub fn r_k(alpha: &XiElement, k: usize) -> Result<BigInt> {
    Ok(BigInt::from(alpha.modulus()) * alpha.digit(2 * k + 1)? + alpha.digit(2 * k)?)
}

/// `[[1, r_k], [0, N²]]`, the connecting map between the rotation-algebra stages.
pub fn phi_k0_matrix(alpha: &XiElement, k: usize) -> Result<IntMatrix> {
    let n2 = BigInt::from(alpha.modulus()).pow(2);
    Ok([[BigInt::one(), r_k(alpha, k)?], [BigInt::zero(), n2]])
}

/// `[[1, −r_k], [0, N²]]`: the connecting map in the coordinates where stage k
/// embeds into 𝒦_α through [`upsilon_matrix`]. It is [`phi_k0_matrix`]
/// conjugated by `diag(1, −1)`.
pub fn k0_stage_map(alpha: &XiElement, k: usize) -> Result<IntMatrix> {
    let n2 = BigInt::from(alpha.modulus()).pow(2);
    Ok([[BigInt::one(), -r_k(alpha, k)?], [BigInt::zero(), n2]])
}

/// `[[1, J_{2k}/N^{2k}], [0, 1/N^{2k}]]`: stage k of the direct system into 𝒦_α.
pub fn upsilon_matrix(alpha: &XiElement, k: usize) -> Result<RatMatrix> {
    let d = big_pow(alpha.modulus(), 2 * k);
    let j = alpha.carrier().at(2 * k)?;
    Ok([
        [BigRational::one(), BigRational::new(j, d.clone())],
        [BigRational::zero(), BigRational::new(BigInt::one(), d)],
    ])
}

pub fn mat_mul_rat(a: &RatMatrix, b: &RatMatrix) -> RatMatrix {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

pub fn int_to_rat(m: &IntMatrix) -> RatMatrix {
    [
        [rat(m[0][0].clone()), rat(m[0][1].clone())],
        [rat(m[1][0].clone()), rat(m[1][1].clone())],
    ]
}
