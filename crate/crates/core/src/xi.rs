//! The group Ξ_N of sequences `α` with `α_0 ∈ [0,1)` and `N·α_{n+1} ≡ α_n mod 1`,
//! and its mixed-radix counterpart Ξ_Λ.
//!
//! An element is stored as its base value `α_0` plus the N-adic integer
//! `J^α` with `J^α_n = N^n·α_n − α_0`, so `α_n = (α_0 + J^α_n) / N^n`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{big_pow, floor_int, fmt_rational, frac, multiplicative_order, rational_mod};
use crate::error::{Error, Result};
use crate::nadic::{NadicInteger, NadicRepr, PrimeSeq, QnRational};

/// An exact point `exp(2iπθ)` of the circle, stored as `θ ∈ [0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(BigRational);

impl Angle {
    /// Reduces any rational modulo 1.
    pub fn new(r: BigRational) -> Self {
        Angle(frac(&r))
    }

    pub fn zero() -> Self {
        Angle(BigRational::zero())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn scale(&self, m: &BigInt) -> Self {
        Angle::new(&self.0 * BigRational::from_integer(m.clone()))
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, rhs: Angle) -> Angle {
        Angle::new(self.0 + rhs.0)
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, rhs: Angle) -> Angle {
        Angle::new(self.0 - rhs.0)
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle::new(-self.0)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rational(&self.0))
    }
}

fn check_base(base: &BigRational) -> Result<()> {
    if base.is_negative() || base >= &BigRational::one() {
        Err(Error::BaseOutOfRange(fmt_rational(base)))
    } else {
        Ok(())
    }
}

/// An element α of Ξ_N.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct XiElement {
    modulus: u64,
    base: BigRational,
    carrier: NadicInteger,
    surrogate: bool,
}

impl XiElement {
    pub fn new(modulus: u64, base: BigRational, carrier: NadicInteger) -> Result<Self> {
        check_base(&base)?;
        if carrier.modulus() != modulus {
            return Err(Error::ModulusMismatch(modulus, carrier.modulus()));
        }
        let el = XiElement {
            modulus,
            base,
            carrier,
            surrogate: false,
        };
        for n in 1..=2 {
            match el.value(n) {
                Ok(v) if v.is_negative() || v >= BigRational::one() => {
                    return Err(Error::ValueOutOfRange { index: n, value: fmt_rational(&v) })
                }
                Ok(_) | Err(Error::PrefixExhausted { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        Ok(el)
    }

    /// A rational stand-in for an element with irrational base. Exact
    /// arithmetic still applies to the stand-in, but classification reports it
    /// as a surrogate.
    pub fn new_surrogate(modulus: u64, base: BigRational, carrier: NadicInteger) -> Result<Self> {
        let mut el = Self::new(modulus, base, carrier)?;
        el.surrogate = true;
        Ok(el)
    }

    pub fn zero(modulus: u64) -> Result<Self> {
        Self::new(modulus, BigRational::zero(), NadicInteger::zero(modulus)?)
    }

    /// The periodic element with `α_0 = a/b` (`gcd(b, N) = 1`) repeating with period `ord_b(N)`.
    pub fn periodic(modulus: u64, base: BigRational) -> Result<Self> {
        let carrier = NadicInteger::from_rational(-base.clone(), modulus)?;
        Self::new(modulus, base, carrier)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn base(&self) -> &BigRational {
        &self.base
    }

    pub fn carrier(&self) -> &NadicInteger {
        &self.carrier
    }

    pub fn is_surrogate(&self) -> bool {
        self.surrogate
    }

    pub fn is_zero(&self) -> bool {
        self.base.is_zero() && self.carrier.value().is_some_and(|v| v.is_zero())
    }

    /// `(α_0, J^α)`; [`XiElement::new`] is the inverse.
    pub fn decompose(&self) -> (BigRational, NadicInteger) {
        (self.base.clone(), self.carrier.clone())
    }

    /// `α_n = (α_0 + J^α_n) / N^n`.
    pub fn value(&self, n: usize) -> Result<BigRational> {
        let j = self.carrier.at(n)?;
        Ok((&self.base + BigRational::from_integer(j)) / BigRational::from_integer(big_pow(self.modulus, n)))
    }

    /// `j_n = N·α_{n+1} − α_n`.
    pub fn digit(&self, n: usize) -> Result<u64> {
        self.carrier.digit(n)
    }

    fn same_modulus(&self, other: &Self) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.modulus, other.modulus))
        }
    }

    fn assemble(&self, base: BigRational, carrier: NadicInteger, surrogate: bool) -> Self {
        XiElement {
            modulus: self.modulus,
            base,
            carrier,
            surrogate,
        }
    }

    /// Pointwise addition modulo one. The carrier of the sum is
    /// `J^α + J^β + ι(c)` where `c = ⌊α_0 + β_0⌋`.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        let s = &self.base + &other.base;
        let carry = NadicInteger::iota(floor_int(&s), self.modulus)?;
        let carrier = self.carrier.try_add(&other.carrier)?.try_add(&carry)?;
        Ok(self.assemble(frac(&s), carrier, self.surrogate || other.surrogate))
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    /// The integer multiple `m·α`, pointwise modulo one.
    pub fn scale(&self, m: &BigInt) -> Self {
        let s = &self.base * BigRational::from_integer(m.clone());
        let carry = NadicInteger::iota(floor_int(&s), self.modulus).expect("valid modulus");
        let carrier = self.carrier.scale(m).try_add(&carry).expect("same modulus");
        self.assemble(frac(&s), carrier, self.surrogate)
    }

    /// The truncated sequence `(α_{n+k})_n`.
    pub fn shift(&self, k: usize) -> Result<Self> {
        let base = self.value(k)?;
        let carrier = match self.carrier.repr() {
            NadicRepr::RationalValue(r) => {
                let jk = BigRational::from_integer(self.carrier.at(k)?);
                let pk = BigRational::from_integer(big_pow(self.modulus, k));
                NadicInteger::from_rational((r - jk) / pk, self.modulus)?
            }
            NadicRepr::FinitePrefix(d) => NadicInteger::from_prefix(d[k..].to_vec(), self.modulus)?,
        };
        Ok(self.assemble(base, carrier, self.surrogate))
    }

    /// `w(α) = α_0 + J^α`, read as a rational. It is additive, vanishes
    /// exactly on the periodic elements, and satisfies `w(shift_k α) = w(α)/N^k`.
    pub fn periodic_defect(&self) -> Result<BigRational> {
        Ok(&self.base + self.carrier.value_or_undecidable()?)
    }

    /// Minimal period when α is periodic.
    pub fn period(&self) -> Result<Option<u64>> {
        if !self.periodic_defect()?.is_zero() {
            return Ok(None);
        }
        multiplicative_order(self.modulus, self.base.denom()).map(Some)
    }

    pub fn range_finite(&self) -> Result<bool> {
        Ok(self.period()?.is_some())
    }

    /// Searches `j < k ≤ bound` with `α_j = α_k`. Reported on its own: a
    /// repetition implies periodicity only of a tail.
    pub fn first_repeat(&self, bound: usize) -> Result<Option<(usize, usize)>> {
        let mut seen: Vec<BigRational> = Vec::with_capacity(bound + 1);
        for k in 0..=bound {
            let v = self.value(k)?;
            if let Some(j) = seen.iter().position(|s| s == &v) {
                return Ok(Some((j, k)));
            }
            seen.push(v);
        }
        Ok(None)
    }

    /// The least `k ≥ 1` with `(N^k − 1)·α_0 ∈ ℤ`, if any. Reported on its own:
    /// it only depends on `α_0`.
    pub fn root_exponent(&self) -> Result<Option<u64>> {
        let b = self.base.denom();
        if !b.gcd(&BigInt::from(self.modulus)).is_one() {
            return Ok(None);
        }
        multiplicative_order(self.modulus, b).map(Some)
    }

    /// `⟨x, α⟩ = p·α_k mod 1` for `x = p/N^k` in reduced form.
    pub fn pairing(&self, x: &QnRational) -> Result<Angle> {
        if x.modulus() != self.modulus {
            return Err(Error::ModulusMismatch(self.modulus, x.modulus()));
        }
        let v = self.value(x.exp() as usize)?;
        Ok(Angle::new(v * BigRational::from_integer(x.numer().clone())))
    }
}

impl fmt::Display for XiElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Xi_{}(alpha0={}, J={})", self.modulus, fmt_rational(&self.base), self.carrier)
    }
}

/// Carrier of an element of Ξ_Λ: `J_n ∈ [0, π_n(Λ))`, coherent under reduction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LambdaCarrier {
    /// A rational whose denominator is coprime to every prime in Λ.
    RationalValue(BigRational),
    /// Mixed-radix digits, digit `n` in `[0, Λ_n)`.
    Digits(Vec<u64>),
}

/// An element of Ξ_Λ: `Λ_n·β_{n+1} ≡ β_n mod 1`, `β_n = (β_0 + J_n) / π_n(Λ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct XiLambdaElement {
    seq: PrimeSeq,
    base: BigRational,
    carrier: LambdaCarrier,
}

impl XiLambdaElement {
    pub fn new(seq: PrimeSeq, base: BigRational, carrier: LambdaCarrier) -> Result<Self> {
        check_base(&base)?;
        match &carrier {
            LambdaCarrier::RationalValue(r) => {
                let nu = BigInt::from(seq.nu());
                if !r.denom().gcd(&nu).is_one() {
                    return Err(Error::DenominatorNotCoprime {
                        den: r.denom().to_string(),
                        modulus: seq.nu(),
                    });
                }
            }
            LambdaCarrier::Digits(d) => {
                for (n, &j) in d.iter().enumerate() {
                    if j >= seq.entry(n) {
                        return Err(Error::InvalidDigit { digit: j, radix: seq.entry(n) });
                    }
                }
            }
        }
        Ok(XiLambdaElement { seq, base, carrier })
    }

    pub fn seq(&self) -> &PrimeSeq {
        &self.seq
    }

    pub fn base(&self) -> &BigRational {
        &self.base
    }

    pub fn carrier(&self) -> &LambdaCarrier {
        &self.carrier
    }

    /// `J_n`.
    pub fn carrier_at(&self, n: usize) -> Result<BigInt> {
        match &self.carrier {
            LambdaCarrier::RationalValue(r) => Ok(rational_mod(r, &self.seq.pi(n))),
            LambdaCarrier::Digits(d) => {
                if n > d.len() {
                    return Err(Error::PrefixExhausted { index: n, len: d.len() });
                }
                Ok(d[..n]
                    .iter()
                    .enumerate()
                    .fold(BigInt::zero(), |acc, (i, &j)| acc + self.seq.pi(i) * j))
            }
        }
    }

    pub fn value(&self, n: usize) -> Result<BigRational> {
        let j = BigRational::from_integer(self.carrier_at(n)?);
        Ok((&self.base + j) / BigRational::from_integer(self.seq.pi(n)))
    }

    pub fn digit(&self, n: usize) -> Result<u64> {
        let d = (self.carrier_at(n + 1)? - self.carrier_at(n)?) / self.seq.pi(n);
        Ok(d.to_u64().expect("digit fits in u64"))
    }
}

/// The subsampling isomorphism Ξ_Λ → Ξ_N, `α_n = β_{nΩ}`, where `N = ν(Λ)`.
pub fn omega_lambda(beta: &XiLambdaElement) -> Result<XiElement> {
    let n = beta.seq.nu();
    let omega = beta.seq.omega();
    let carrier = match &beta.carrier {
        LambdaCarrier::RationalValue(r) => NadicInteger::from_rational(r.clone(), n)?,
        LambdaCarrier::Digits(d) => {
            let len = d.len() / omega;
            let digits = (0..len)
                .map(|i| {
                    let step = beta.carrier_at((i + 1) * omega)? - beta.carrier_at(i * omega)?;
                    Ok((step / big_pow(n, i)).to_u64().expect("digit fits in u64"))
                })
                .collect::<Result<Vec<_>>>()?;
            NadicInteger::from_prefix(digits, n)?
        }
    };
    XiElement::new(n, beta.base.clone(), carrier)
}

/// The inverse of [`omega_lambda`] for a chosen ordering Λ with `ν(Λ) = N`.
/// Each N-ary digit is split into `Ω` mixed-radix digits by successive
/// Euclidean division, which fills in the intermediate terms.
pub fn omega_lambda_inv(alpha: &XiElement, seq: &PrimeSeq) -> Result<XiLambdaElement> {
    if seq.nu() != alpha.modulus {
        return Err(Error::InvalidArgument(format!(
            "prime period multiplies to {}, expected {}",
            seq.nu(),
            alpha.modulus
        )));
    }
    let carrier = match alpha.carrier.repr() {
        NadicRepr::RationalValue(r) => LambdaCarrier::RationalValue(r.clone()),
        NadicRepr::FinitePrefix(d) => {
            let mut out = Vec::with_capacity(d.len() * seq.omega());
            for (i, &j) in d.iter().enumerate() {
                let mut r = j;
                for t in 0..seq.omega() {
                    let radix = seq.entry(i * seq.omega() + t);
                    out.push(r % radix);
                    r /= radix;
                }
                debug_assert_eq!(r, 0);
            }
            LambdaCarrier::Digits(out)
        }
    };
    XiLambdaElement::new(seq.clone(), alpha.base.clone(), carrier)
}

/// The default ordering Λ(N) for [`omega_lambda_inv`].
pub fn omega_lambda_inv_default(alpha: &XiElement) -> Result<XiLambdaElement> {
    omega_lambda_inv(alpha, &PrimeSeq::of_modulus(alpha.modulus)?)
}
