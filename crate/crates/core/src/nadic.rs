//! N-adic rationals, N-adic integers and finite-range prime sequences.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{big_pow, fmt_rational, is_prime, is_smooth_over, prime_factors, rational_mod};
use crate::error::{Error, Result};

fn check_modulus(n: u64) -> Result<()> {
    if n <= 1 {
        Err(Error::InvalidModulus(n))
    } else {
        Ok(())
    }
}

/// An element `p / N^k` of the N-adic rationals, always kept in N-reduced form
/// (`k = 0` or `N ∤ p`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QnRational {
    num: BigInt,
    exp: u32,
    modulus: u64,
}

impl QnRational {
    /// Builds `p / N^k` and reduces it.
    pub fn new(num: impl Into<BigInt>, exp: u32, modulus: u64) -> Result<Self> {
        check_modulus(modulus)?;
        let mut num = num.into();
        let mut exp = exp;
        if num.is_zero() {
            exp = 0;
        }
        let n = BigInt::from(modulus);
        while exp > 0 {
            let (q, r) = num.div_rem(&n);
            if !r.is_zero() {
                break;
            }
            num = q;
            exp -= 1;
        }
        Ok(QnRational { num, exp, modulus })
    }

    pub fn zero(modulus: u64) -> Result<Self> {
        Self::new(0, 0, modulus)
    }

    pub fn integer(z: impl Into<BigInt>, modulus: u64) -> Result<Self> {
        Self::new(z, 0, modulus)
    }

    /// Reads an ordinary rational as an element of ℚ_N; fails when the
    /// denominator has a prime factor not dividing N.
    pub fn from_rational(r: &BigRational, modulus: u64) -> Result<Self> {
        check_modulus(modulus)?;
        let den = r.denom();
        if !is_smooth_over(den, modulus) {
            return Err(Error::NotNadicRational(fmt_rational(r), modulus));
        }
        let mut pow = BigInt::one();
        let mut k = 0u32;
        while !(&pow % den).is_zero() {
            pow *= modulus;
            k += 1;
        }
        Self::new(r.numer() * (pow / den), k, modulus)
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn denom(&self) -> BigInt {
        big_pow(self.modulus, self.exp as usize)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.num.clone(), self.denom())
    }

    fn same_modulus(&self, other: &Self) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.modulus, other.modulus))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        let k = self.exp.max(other.exp);
        let a = &self.num * big_pow(self.modulus, (k - self.exp) as usize);
        let b = &other.num * big_pow(self.modulus, (k - other.exp) as usize);
        Self::new(a + b, k, self.modulus)
    }

    pub fn neg(&self) -> Self {
        QnRational {
            num: -&self.num,
            exp: self.exp,
            modulus: self.modulus,
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    /// Integer multiple `m · x`.
    pub fn scale(&self, m: &BigInt) -> Self {
        Self::new(&self.num * m, self.exp, self.modulus).expect("modulus already validated")
    }

    /// The same value written with exponent `k ≥ self.exp()` (numerator scaled).
    pub fn numer_at(&self, k: u32) -> Option<BigInt> {
        (k >= self.exp).then(|| &self.num * big_pow(self.modulus, (k - self.exp) as usize))
    }
}

impl fmt::Display for QnRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rational(&self.to_rational()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NadicRepr {
    /// A rational `a/b` with `gcd(b, N) = 1`; its digits are eventually periodic.
    RationalValue(BigRational),
    /// An explicit digit prefix `(j_0, …, j_{L-1})`.
    FinitePrefix(Vec<u64>),
}

/// An N-adic integer `J = (J_k)` with `J_k ∈ [0, N^k)` and `J_{k+1} ≡ J_k mod N^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NadicInteger {
    modulus: u64,
    repr: NadicRepr,
}

impl NadicInteger {
    pub fn from_rational(value: BigRational, modulus: u64) -> Result<Self> {
        check_modulus(modulus)?;
        if !value.denom().gcd(&BigInt::from(modulus)).is_one() {
            return Err(Error::DenominatorNotCoprime {
                den: value.denom().to_string(),
                modulus,
            });
        }
        Ok(NadicInteger {
            modulus,
            repr: NadicRepr::RationalValue(value),
        })
    }

    pub fn from_prefix(digits: Vec<u64>, modulus: u64) -> Result<Self> {
        check_modulus(modulus)?;
        if let Some(&d) = digits.iter().find(|&&d| d >= modulus) {
            return Err(Error::InvalidDigit { digit: d, radix: modulus });
        }
        Ok(NadicInteger {
            modulus,
            repr: NadicRepr::FinitePrefix(digits),
        })
    }

    /// The canonical inclusion ι: ℤ → ℤ_N.
    pub fn iota(z: impl Into<BigInt>, modulus: u64) -> Result<Self> {
        Self::from_rational(BigRational::from_integer(z.into()), modulus)
    }

    pub fn zero(modulus: u64) -> Result<Self> {
        Self::iota(0, modulus)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn repr(&self) -> &NadicRepr {
        &self.repr
    }

    /// The rational value, when the representation is exact.
    pub fn value(&self) -> Option<&BigRational> {
        match &self.repr {
            NadicRepr::RationalValue(r) => Some(r),
            NadicRepr::FinitePrefix(_) => None,
        }
    }

    pub fn value_or_undecidable(&self) -> Result<&BigRational> {
        self.value().ok_or(Error::Undecidable)
    }

    /// Number of queryable digits, `None` when unbounded.
    pub fn prefix_len(&self) -> Option<usize> {
        match &self.repr {
            NadicRepr::RationalValue(_) => None,
            NadicRepr::FinitePrefix(d) => Some(d.len()),
        }
    }

    /// The inverse ζ of ι on its image.
    pub fn zeta(&self) -> Result<BigInt> {
        match &self.repr {
            NadicRepr::RationalValue(r) if r.is_integer() => Ok(r.to_integer()),
            NadicRepr::RationalValue(_) => Err(Error::NotInteger),
            NadicRepr::FinitePrefix(_) => Err(Error::Undecidable),
        }
    }

    pub fn is_integer(&self) -> Option<bool> {
        self.value().map(|r| r.is_integer())
    }

    fn check_index(&self, k: usize) -> Result<()> {
        match &self.repr {
            NadicRepr::FinitePrefix(d) if k > d.len() => Err(Error::PrefixExhausted { index: k, len: d.len() }),
            _ => Ok(()),
        }
    }

    /// `J_k`, the representative of `J mod N^k` in `[0, N^k)`.
    pub fn at(&self, k: usize) -> Result<BigInt> {
        self.check_index(k)?;
        match &self.repr {
            NadicRepr::RationalValue(r) => Ok(rational_mod(r, &big_pow(self.modulus, k))),
            NadicRepr::FinitePrefix(d) => {
                let n = BigInt::from(self.modulus);
                Ok(d[..k].iter().rev().fold(BigInt::zero(), |acc, &j| acc * &n + j))
            }
        }
    }

    /// The residue of `J` modulo an arbitrary `m` whose primes divide N.
    /// Prefix representations need enough digits for `N^L` to be a multiple of `m`.
    pub fn residue_mod(&self, m: &BigInt) -> Result<BigInt> {
        match &self.repr {
            NadicRepr::RationalValue(r) => Ok(rational_mod(r, m)),
            NadicRepr::FinitePrefix(d) => {
                let mut k = 0usize;
                let mut pow = BigInt::one();
                while !(&pow % m).is_zero() {
                    k += 1;
                    pow *= self.modulus;
                    if k > d.len() {
                        return Err(Error::PrefixExhausted { index: k, len: d.len() });
                    }
                }
                Ok(self.at(k)?.mod_floor(m))
            }
        }
    }

    /// The digit `j_n = (J_{n+1} − J_n) / N^n`.
    pub fn digit(&self, n: usize) -> Result<u64> {
        if let NadicRepr::FinitePrefix(d) = &self.repr {
            return d.get(n).copied().ok_or(Error::PrefixExhausted { index: n + 1, len: d.len() });
        }
        let seg = self.segment(n, n + 1)?;
        Ok(seg.to_u64().expect("digit fits in u64"))
    }

    /// `J_{k,m} = (J_m − J_k) / N^k` for `m ≥ k`.
    pub fn segment(&self, k: usize, m: usize) -> Result<BigInt> {
        if m < k {
            return Err(Error::InvalidArgument(format!("segment({k}, {m}) needs m ≥ k")));
        }
        let diff = self.at(m)? - self.at(k)?;
        Ok(diff / big_pow(self.modulus, k))
    }

    /// First `len` digits as an explicit prefix.
    pub fn to_prefix(&self, len: usize) -> Result<Self> {
        let digits = (0..len).map(|n| self.digit(n)).collect::<Result<Vec<_>>>()?;
        Self::from_prefix(digits, self.modulus)
    }

    fn same_modulus(&self, other: &Self) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(self.modulus, other.modulus))
        }
    }

    /// Applies a termwise map `k ↦ f(J_k, K_k) mod N^k` over a finite prefix.
    fn prefix_map(&self, len: usize, f: impl Fn(usize) -> Result<BigInt>) -> Result<Self> {
        let mut digits = Vec::with_capacity(len);
        let mut prev = BigInt::zero();
        for k in 1..=len {
            let v = f(k)?.mod_floor(&big_pow(self.modulus, k));
            let d = (&v - &prev) / big_pow(self.modulus, k - 1);
            digits.push(d.to_u64().expect("digit fits in u64"));
            prev = v;
        }
        Self::from_prefix(digits, self.modulus)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_modulus(other)?;
        match (&self.repr, &other.repr) {
            (NadicRepr::RationalValue(a), NadicRepr::RationalValue(b)) => Self::from_rational(a + b, self.modulus),
            _ => {
                let len = match (self.prefix_len(), other.prefix_len()) {
                    (Some(a), Some(b)) => a.min(b),
                    (Some(a), None) | (None, Some(a)) => a,
                    (None, None) => unreachable!(),
                };
                self.prefix_map(len, |k| Ok(self.at(k)? + other.at(k)?))
            }
        }
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            NadicRepr::RationalValue(a) => NadicInteger {
                modulus: self.modulus,
                repr: NadicRepr::RationalValue(-a),
            },
            NadicRepr::FinitePrefix(d) => self
                .prefix_map(d.len(), |k| Ok(-self.at(k)?))
                .expect("prefix length respected"),
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    /// Integer multiple `m · J`.
    pub fn scale(&self, m: &BigInt) -> Self {
        match &self.repr {
            NadicRepr::RationalValue(a) => NadicInteger {
                modulus: self.modulus,
                repr: NadicRepr::RationalValue(a * BigRational::from_integer(m.clone())),
            },
            NadicRepr::FinitePrefix(d) => self
                .prefix_map(d.len(), |k| Ok(self.at(k)? * m))
                .expect("prefix length respected"),
        }
    }
}

impl fmt::Display for NadicInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            NadicRepr::RationalValue(r) => write!(f, "{}", fmt_rational(r)),
            NadicRepr::FinitePrefix(d) => write!(f, "prefix{d:?}"),
        }
    }
}

/// A sequence of primes with finite range, given by one period.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeSeq {
    period: Vec<u64>,
}

impl PrimeSeq {
    pub fn new(period: Vec<u64>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        if let Some(&p) = period.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeSeq { period })
    }

    /// Λ(N): the sorted prime factorization of N, repeated.
    pub fn of_modulus(n: u64) -> Result<Self> {
        check_modulus(n)?;
        Ok(PrimeSeq {
            period: prime_factors(n),
        })
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    /// Ω, the period length.
    pub fn omega(&self) -> usize {
        self.period.len()
    }

    /// ν(Λ), the product of one period.
    pub fn nu(&self) -> u64 {
        self.period.iter().product()
    }

    pub fn entry(&self, j: usize) -> u64 {
        self.period[j % self.period.len()]
    }

    /// π_k(Λ) = Λ_0 ⋯ Λ_{k-1}.
    pub fn pi(&self, k: usize) -> BigInt {
        (0..k).fold(BigInt::one(), |acc, j| acc * self.entry(j))
    }

    /// δ, the inverse of k ↦ π_k(Λ).
    pub fn delta(&self, m: &BigInt) -> Result<usize> {
        let not_partial = || Error::NotPartialProduct(m.to_string());
        if !m.is_positive() {
            return Err(not_partial());
        }
        let mut acc = BigInt::one();
        let mut k = 0usize;
        while &acc < m {
            acc *= self.entry(k);
            k += 1;
        }
        if &acc == m {
            Ok(k)
        } else {
            Err(not_partial())
        }
    }
}
