//! Multipliers Ψ_α of ℚ_N², their skew forms Θ_α, and the symmetrizer group.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::nadic::QnRational;
use crate::xi::{Angle, XiElement};

/// A point `(x, y)` of ℚ_N².
pub type Pair = (QnRational, QnRational);

fn check(alpha: &XiElement, xs: &[&QnRational]) -> Result<()> {
    for x in xs {
        if x.modulus() != alpha.modulus() {
            return Err(Error::ModulusMismatch(alpha.modulus(), x.modulus()));
        }
    }
    Ok(())
}

/// `p·q·α_k mod 1`.
fn term(alpha: &XiElement, k: usize, p: &BigInt, q: &BigInt) -> Result<Angle> {
    if p.is_zero() || q.is_zero() {
        return Ok(Angle::zero());
    }
    Ok(Angle::new(alpha.value(k)? * BigRational::from_integer(p * q)))
}

/// `Ψ_α(g, h) = α_{k₁+k₄}·p₁·p₄ mod 1` for `g = (p₁/N^{k₁}, ·)`, `h = (·, p₄/N^{k₄})`.
pub fn psi(alpha: &XiElement, g: &Pair, h: &Pair) -> Result<Angle> {
    check(alpha, &[&g.0, &g.1, &h.0, &h.1])?;
    let (x1, x4) = (&g.0, &h.1);
    term(alpha, (x1.exp() + x4.exp()) as usize, x1.numer(), x4.numer())
}

/// [`psi`] evaluated on unreduced representatives `(p, k)`; used to check
/// that the value does not depend on the representative.
pub fn psi_raw(alpha: &XiElement, g1: (&BigInt, usize), h2: (&BigInt, usize)) -> Result<Angle> {
    term(alpha, g1.1 + h2.1, g1.0, h2.0)
}

/// `Θ_α(g, h) = Ψ_α(g, h) − Ψ_α(h, g)`.
pub fn theta(alpha: &XiElement, g: &Pair, h: &Pair) -> Result<Angle> {
    Ok(psi(alpha, g, h)? - psi(alpha, h, g)?)
}

/// The general bicharacter of ℚ_N² attached to four elements of Ξ_N.
pub fn bichar_eval(
    zeta: &XiElement,
    xi: &XiElement,
    eta: &XiElement,
    chi: &XiElement,
    g: &Pair,
    h: &Pair,
) -> Result<Angle> {
    let n = zeta.modulus();
    for e in [xi, eta, chi] {
        if e.modulus() != n {
            return Err(Error::ModulusMismatch(n, e.modulus()));
        }
    }
    check(zeta, &[&g.0, &g.1, &h.0, &h.1])?;
    let (x1, x2, x3, x4) = (&g.0, &g.1, &h.0, &h.1);
    let k = |a: &QnRational, b: &QnRational| (a.exp() + b.exp()) as usize;
    Ok(term(zeta, k(x1, x3), x1.numer(), x3.numer())?
        + term(eta, k(x2, x3), x2.numer(), x3.numer())?
        + term(chi, k(x2, x4), x2.numer(), x4.numer())?
        + term(xi, k(x1, x4), x1.numer(), x4.numer())?)
}

/// Phase by which the dual action of `x = p/N^k` rotates coordinate `n`: `p·α_{k+n}`.
pub fn action_phase(alpha: &XiElement, x: &QnRational, n: usize) -> Result<Angle> {
    check(alpha, &[x])?;
    term(alpha, x.exp() as usize + n, x.numer(), &BigInt::one())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SymmetrizerDescription {
    Trivial,
    Full,
    /// `{(p₁b/N^m, p₂b/N^n)}`.
    ScaledLattice { b: BigInt },
}

impl SymmetrizerDescription {
    pub fn contains(&self, g: &Pair) -> bool {
        match self {
            SymmetrizerDescription::Full => true,
            SymmetrizerDescription::Trivial => g.0.is_zero() && g.1.is_zero(),
            SymmetrizerDescription::ScaledLattice { b } => g.0.numer().is_multiple_of(b) && g.1.numer().is_multiple_of(b),
        }
    }
}

/// The symmetrizer `{g : Θ_α(g, ·) ≡ 0}`.
pub fn symmetrizer(alpha: &XiElement) -> Result<SymmetrizerDescription> {
    let Some(period) = alpha.period()? else {
        return Ok(SymmetrizerDescription::Trivial);
    };
    if alpha.is_zero() {
        return Ok(SymmetrizerDescription::Full);
    }
    let mut b = BigInt::one();
    for n in 0..period as usize {
        b = b.lcm(alpha.value(n)?.denom());
    }
    Ok(SymmetrizerDescription::ScaledLattice { b })
}

pub fn is_simple(alpha: &XiElement) -> Result<bool> {
    Ok(alpha.period()?.is_none())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SolenoidClass {
    RationalPeriodic,
    RationalAperiodic,
    IrrationalSurrogate,
}

pub fn classify_type(alpha: &XiElement) -> Result<SolenoidClass> {
    if alpha.is_surrogate() {
        return Ok(SolenoidClass::IrrationalSurrogate);
    }
    Ok(if alpha.period()?.is_some() {
        SolenoidClass::RationalPeriodic
    } else {
        SolenoidClass::RationalAperiodic
    })
}
