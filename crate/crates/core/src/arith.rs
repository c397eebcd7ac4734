//! Small number-theoretic helpers shared by every module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Iteration cap for multiplicative-order searches.
pub const ORDER_CAP: u64 = 1_000_000;

pub fn big_pow(base: u64, exp: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), exp)
}

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num.into(), den.into())
}

pub fn int_ratio(num: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(num.into())
}

/// Representative of `x mod 1` in `[0, 1)`.
pub fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

/// `floor(x)` as an integer.
pub fn floor_int(x: &BigRational) -> BigInt {
    x.floor().to_integer()
}

/// Inverse of `a` modulo `m`; the caller guarantees `gcd(a, m) = 1`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    let e = a.mod_floor(m).extended_gcd(m);
    debug_assert!(e.gcd.is_one(), "mod_inverse on non-unit");
    e.x.mod_floor(m)
}

/// The unique representative in `[0, m)` of the rational `r` read modulo `m`,
/// where the denominator of `r` is invertible modulo `m`.
pub fn rational_mod(r: &BigRational, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    let inv = mod_inverse(r.denom(), m);
    (r.numer().mod_floor(m) * inv).mod_floor(m)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factors of `n` with multiplicity, in nondecreasing order (trial division).
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        while n.is_multiple_of(d) {
            out.push(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Distinct prime factors of `n`.
pub fn prime_support(n: u64) -> Vec<u64> {
    let mut f = prime_factors(n);
    f.dedup();
    f
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Largest divisor of `d` that is coprime to `n`.
pub fn coprime_part(d: &BigInt, n: u64) -> BigInt {
    let mut d = d.abs();
    let n = BigInt::from(n);
    loop {
        let g = d.gcd(&n);
        if g.is_one() {
            return d;
        }
        d /= g;
    }
}

/// True when every prime factor of `d` divides `n`.
pub fn is_smooth_over(d: &BigInt, n: u64) -> bool {
    coprime_part(d, n).is_one()
}

/// Multiplicative order of `n` modulo `m` (`m ≥ 1`, `gcd(n, m) = 1`), capped at [`ORDER_CAP`].
pub fn multiplicative_order(n: u64, m: &BigInt) -> Result<u64> {
    if m.is_one() {
        return Ok(1);
    }
    let n = BigInt::from(n).mod_floor(m);
    let mut acc = n.clone();
    let mut k = 1u64;
    while !acc.is_one() {
        if k >= ORDER_CAP {
            return Err(Error::OrderOverflow(ORDER_CAP));
        }
        acc = (acc * &n).mod_floor(m);
        k += 1;
    }
    Ok(k)
}

/// Formats a rational as `a/b`, or as `a` when it is an integer.
pub fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `a/b` or a bare integer `a`. Decimal notation is rejected.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("expected an exact rational \"a/b\", got {s:?}"));
    let parse_int = |t: &str| -> Result<BigInt> {
        let t = t.trim();
        if t.is_empty() || !t.trim_start_matches(['-', '+']).chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        t.parse::<BigInt>().map_err(|_| bad())
    };
    match s.split_once('/') {
        Some((a, b)) => {
            let den = parse_int(b)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(parse_int(a)?, den))
        }
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

pub fn to_u64(x: &BigInt) -> Option<u64> {
    x.to_u64()
}
