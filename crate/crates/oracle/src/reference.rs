//! Sequence arithmetic recomputed from an element's raw data, so that the
//! oracles do not go through the library's evaluation paths.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use nsolenoid::{NadicRepr, Result, XiElement};

#[derive(Debug, Clone)]
enum Carrier {
    Rational(BigRational),
    Digits(Vec<u64>),
}

/// `α_n = frac((α_0 + J_n) / N^n)` with `J_n` computed by modular inversion
/// or by summing digits.
#[derive(Debug, Clone)]
pub struct Reference {
    modulus: u64,
    base: BigRational,
    carrier: Carrier,
}

pub(crate) fn pow(n: u64, k: usize) -> BigInt {
    num_traits::pow(BigInt::from(n), k)
}

pub(crate) fn fract(r: &BigRational) -> BigRational {
    r - r.floor()
}

impl Reference {
    pub fn of(alpha: &XiElement) -> Self {
        let (base, j) = alpha.decompose();
        let carrier = match j.repr() {
            NadicRepr::RationalValue(v) => Carrier::Rational(v.clone()),
            NadicRepr::FinitePrefix(d) => Carrier::Digits(d.clone()),
        };
        Reference { modulus: alpha.modulus(), base, carrier }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `J_k ∈ [0, N^k)`.
    pub fn j(&self, k: usize) -> Result<BigInt> {
        let m = pow(self.modulus, k);
        match &self.carrier {
            Carrier::Rational(v) => {
                let e = v.denom().extended_gcd(&m);
                debug_assert!(e.gcd.is_one() || k == 0);
                Ok((v.numer() * e.x).mod_floor(&m))
            }
            Carrier::Digits(d) => {
                if k > d.len() {
                    return Err(nsolenoid::Error::PrefixExhausted { index: k, len: d.len() });
                }
                let mut acc = BigInt::zero();
                for &digit in d[..k].iter().rev() {
                    acc = acc * self.modulus + digit;
                }
                Ok(acc)
            }
        }
    }

    pub fn alpha(&self, n: usize) -> Result<BigRational> {
        let v = (&self.base + BigRational::from_integer(self.j(n)?)) / BigRational::from_integer(pow(self.modulus, n));
        Ok(fract(&v))
    }

    pub fn digit(&self, n: usize) -> Result<BigInt> {
        Ok((self.j(n + 1)? - self.j(n)?) / pow(self.modulus, n))
    }
}
