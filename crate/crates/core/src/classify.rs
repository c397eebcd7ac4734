//! The isomorphism decision for noncommutative solenoids.
//!
//! Both sequences are first rescaled into Ξ_R with `R = gcd(N, M)`. An
//! automorphism of ℚ_R sends `1` to `±p/R^k` with `p | R`, `0 < p < R`, and
//! the algebras are isomorphic exactly when one rescaled sequence equals
//! `±p` times a truncation of the other. The periodic defect
//! `w(α) = α_0 + J^α` turns the search over `k` into a finite one: it scales
//! by `±p/R^k` under such a move, so it pins down `k` unless it vanishes, and
//! vanishing means the sequence is periodic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{coprime_part, divisors, frac, gcd_u64, multiplicative_order, prime_factors, prime_support};
use crate::error::{Error, Result};
use crate::nadic::{NadicInteger, NadicRepr, PrimeSeq, QnRational};
use crate::xi::{omega_lambda_inv, Angle, XiElement};

pub fn same_primes(n: u64, m: u64) -> bool {
    prime_support(n) == prime_support(m)
}

/// `α'_n = (N/R)^n·α_n mod 1`, an element of Ξ_R. The carrier is the image
/// of `J^α` under ℤ_N → ℤ_R.
pub fn rescale(alpha: &XiElement, r: u64) -> Result<XiElement> {
    let n = alpha.modulus();
    if r <= 1 || !n.is_multiple_of(r) || !same_primes(n, r) {
        return Err(Error::InvalidRescale { target: r, modulus: n });
    }
    let carrier = match alpha.carrier().repr() {
        NadicRepr::RationalValue(v) => NadicInteger::from_rational(v.clone(), r)?,
        NadicRepr::FinitePrefix(d) => {
            let rr = BigInt::from(r);
            let mut digits = Vec::with_capacity(d.len());
            let mut prev = BigInt::zero();
            let mut pow = BigInt::one();
            for k in 1..=d.len() {
                let next_pow = &pow * &rr;
                let v = alpha.carrier().at(k)?.mod_floor(&next_pow);
                digits.push(((&v - &prev) / &pow).to_u64().expect("digit fits in u64"));
                prev = v;
                pow = next_pow;
            }
            NadicInteger::from_prefix(digits, r)?
        }
    };
    XiElement::new(r, alpha.base().clone(), carrier)
}

/// Candidate images `±p/N^k` of `1` under automorphisms of ℚ_N, for
/// `0 < p < N` dividing N and `k ≤ bound`.
pub fn aut_qn_generators(n: u64, bound: u32) -> Result<Vec<QnRational>> {
    let mut out = Vec::new();
    for k in 0..=bound {
        for p in divisors(n).into_iter().filter(|&p| p < n) {
            for s in [1i64, -1] {
                let x = QnRational::new(s * p as i64, k, n)?;
                if !out.contains(&x) {
                    out.push(x);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `α' = sign·p·shift_k(β')`.
    AlphaFromBeta,
    /// `β' = sign·p·shift_k(α')`.
    BetaFromAlpha,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::AlphaFromBeta => "alpha_from_beta",
            Direction::BetaFromAlpha => "beta_from_alpha",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoWitness {
    pub r: u64,
    pub mu: u64,
    pub nu: u64,
    pub direction: Direction,
    /// Positive divisor of R below R.
    pub p: u64,
    /// `+1` or `−1`.
    pub sign: i8,
    pub shift: usize,
    /// Periods of the Λ orderings whose common-extension replay succeeded.
    pub orderings: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoVerdict {
    Yes(IsoWitness),
    No(String),
    Unknown { bound: usize, note: String },
}

impl IsoVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoVerdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, IsoVerdict::No(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, IsoVerdict::Unknown { .. })
    }
}

fn apply_move(beta: &XiElement, sign: i8, p: u64, shift: usize) -> Result<XiElement> {
    Ok(beta.shift(shift)?.scale(&BigInt::from(sign as i64 * p as i64)))
}

/// `log_R(t)` when `t` is a power of `R`.
fn exact_log(t: &BigRational, r: u64) -> Option<usize> {
    if !t.is_integer() || !t.is_positive() {
        return None;
    }
    let mut t = t.to_integer();
    let r = BigInt::from(r);
    let mut k = 0usize;
    while !t.is_one() {
        let (q, rem) = t.div_rem(&r);
        if !rem.is_zero() {
            return None;
        }
        t = q;
        k += 1;
    }
    Some(k)
}

/// Distinct permutations of a multiset, in lexicographic order.
fn multiset_permutations(items: &[u64]) -> Vec<Vec<u64>> {
    let mut cur: Vec<u64> = items.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Periods of the admissible Λ orderings for a divisor `p` of `R`: the last
/// `Ω(p)` entries are the primes of `p`, the rest any arrangement of the
/// remaining primes of `R`.
pub fn lambda_orderings(r: u64, p: u64) -> Vec<Vec<u64>> {
    let tail = prime_factors(p);
    let mut rest = prime_factors(r);
    for q in &tail {
        let i = rest.iter().position(|x| x == q).expect("p divides R");
        rest.remove(i);
    }
    multiset_permutations(&rest)
        .into_iter()
        .map(|mut head| {
            head.extend(tail.iter().copied());
            head
        })
        .collect()
}

/// Checks the common extension through Λ: with γ the extension of `target`
/// to Ξ_Λ, `sign·source_n = γ_{(n+k)Ω − Ω(p)}` for `n < depth`.
fn replay_lambda(
    source: &XiElement,
    target: &XiElement,
    order: &[u64],
    p: u64,
    sign: i8,
    shift: usize,
    depth: usize,
) -> Result<bool> {
    let seq = PrimeSeq::new(order.to_vec())?;
    let gamma = omega_lambda_inv(target, &seq)?;
    let omega = seq.omega();
    let r = prime_factors(p).len();
    let s = BigRational::from_integer(BigInt::from(sign));
    for n in 0..depth {
        let m = (n + shift) * omega;
        if m < r {
            continue;
        }
        if frac(&(&s * source.value(n)?)) != gamma.value(m - r)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn replay_depth(a: &XiElement, b: &XiElement) -> usize {
    let pa = a.period().ok().flatten().unwrap_or(4) as usize;
    let pb = b.period().ok().flatten().unwrap_or(4) as usize;
    (3 * (pa + pb)).clamp(8, 64)
}

enum Search {
    Found { sign: i8, p: u64, shift: usize },
    Beyond(usize),
    Exhausted,
}

/// Searches `source = sign·p·shift_k(target)` in the fixed order sign (+, −),
/// p ascending, k ascending.
fn search_move(source: &XiElement, target: &XiElement, r: u64, bound: usize) -> Result<Search> {
    let divs: Vec<u64> = divisors(r).into_iter().filter(|&p| p < r).collect();
    let ws = source.periodic_defect()?;
    let wt = target.periodic_defect()?;
    let mut beyond: Option<usize> = None;
    for sign in [1i8, -1] {
        for &p in &divs {
            if wt.is_zero() {
                let period = target.period()?.expect("zero defect means periodic") as usize;
                for shift in 0..period {
                    if &apply_move(target, sign, p, shift)? == source {
                        return Ok(Search::Found { sign, p, shift });
                    }
                }
            } else {
                let t = BigRational::from_integer(BigInt::from(sign as i64 * p as i64)) * &wt / &ws;
                if let Some(shift) = exact_log(&t, r) {
                    if shift > bound {
                        beyond = Some(beyond.map_or(shift, |b: usize| b.min(shift)));
                    } else if &apply_move(target, sign, p, shift)? == source {
                        return Ok(Search::Found { sign, p, shift });
                    }
                }
            }
        }
    }
    Ok(beyond.map_or(Search::Exhausted, Search::Beyond))
}

/// Full decision over arbitrary moduli with the same prime support.
pub fn isomorphic(alpha: &XiElement, beta: &XiElement, bound: usize) -> Result<IsoVerdict> {
    let (n, m) = (alpha.modulus(), beta.modulus());
    if !same_primes(n, m) {
        return Ok(IsoVerdict::No(format!(
            "prime supports differ: {:?} vs {:?}",
            prime_support(n),
            prime_support(m)
        )));
    }
    if alpha.carrier().value().is_none() || beta.carrier().value().is_none() {
        return Ok(IsoVerdict::Unknown {
            bound,
            note: "finite-prefix carrier: only a prefix of the sequence is known".into(),
        });
    }
    let r = gcd_u64(n, m);
    let (a, b) = (rescale(alpha, r)?, rescale(beta, r)?);
    let (wa, wb) = (a.periodic_defect()?, b.periodic_defect()?);
    if wa.is_zero() != wb.is_zero() {
        return Ok(IsoVerdict::No(
            "one sequence is periodic and the other is not".into(),
        ));
    }
    let (da, db) = (coprime_part(a.base().denom(), r), coprime_part(b.base().denom(), r));
    if da != db {
        return Ok(IsoVerdict::No(format!(
            "base denominators have coprime-to-{r} parts {da} and {db}"
        )));
    }
    let (va, vb) = (coprime_part(wa.denom(), r), coprime_part(wb.denom(), r));
    if va != vb {
        return Ok(IsoVerdict::No(format!(
            "periodic defects have coprime-to-{r} denominators {va} and {vb}"
        )));
    }
    let mut beyond: Option<usize> = None;
    for direction in [Direction::AlphaFromBeta, Direction::BetaFromAlpha] {
        let (source, target) = match direction {
            Direction::AlphaFromBeta => (&a, &b),
            Direction::BetaFromAlpha => (&b, &a),
        };
        match search_move(source, target, r, bound)? {
            Search::Found { sign, p, shift } => {
                let depth = replay_depth(source, target);
                let mut orderings = Vec::new();
                for order in lambda_orderings(r, p) {
                    if replay_lambda(source, target, &order, p, sign, shift, depth)? {
                        orderings.push(order);
                    }
                }
                return Ok(IsoVerdict::Yes(IsoWitness {
                    r,
                    mu: n / r,
                    nu: m / r,
                    direction,
                    p,
                    sign,
                    shift,
                    orderings,
                }));
            }
            Search::Beyond(k) => beyond = Some(beyond.map_or(k, |b: usize| b.min(k))),
            Search::Exhausted => {}
        }
    }
    Ok(match beyond {
        Some(k) => IsoVerdict::Unknown {
            bound,
            note: format!("the only candidate shift is {k}, beyond the bound"),
        },
        None => IsoVerdict::No(format!(
            "no sign, divisor of {r} and shift relate the rescaled sequences"
        )),
    })
}

/// The prime-modulus case: equal primes and one sequence a truncation of
/// the other or of its negative.
pub fn prime_case_isomorphic(alpha: &XiElement, beta: &XiElement, bound: usize) -> Result<IsoVerdict> {
    let (n, m) = (alpha.modulus(), beta.modulus());
    if prime_factors(n).len() != 1 || prime_factors(m).len() != 1 {
        return isomorphic(alpha, beta, bound);
    }
    if n != m {
        return Ok(IsoVerdict::No(format!("distinct primes {n} and {m}")));
    }
    isomorphic(alpha, beta, bound)
}

/// Independent check of a Yes witness: recomputes both rescalings termwise
/// from values and compares `α'_n` with `sign·p·β'_{n+k}` (or the mirror
/// statement), then replays every recorded Λ ordering.
pub fn replay_witness(alpha: &XiElement, beta: &XiElement, w: &IsoWitness, depth: usize) -> Result<bool> {
    if w.mu * w.r != alpha.modulus() || w.nu * w.r != beta.modulus() {
        return Ok(false);
    }
    let termwise = |x: &XiElement, scale: u64, n: usize| -> Result<BigRational> {
        let f = BigRational::from_integer(BigInt::from(scale).pow(n as u32));
        Ok(frac(&(f * x.value(n)?)))
    };
    let (src, src_mu, tgt, tgt_mu) = match w.direction {
        Direction::AlphaFromBeta => (alpha, w.mu, beta, w.nu),
        Direction::BetaFromAlpha => (beta, w.nu, alpha, w.mu),
    };
    let c = BigRational::from_integer(BigInt::from(w.sign as i64 * w.p as i64));
    for n in 0..depth {
        let lhs = termwise(src, src_mu, n)?;
        let rhs = frac(&(&c * termwise(tgt, tgt_mu, n + w.shift)?));
        if lhs != rhs {
            return Ok(false);
        }
    }
    let (a, b) = (rescale(src, w.r)?, rescale(tgt, w.r)?);
    for order in &w.orderings {
        if !replay_lambda(&a, &b, order, w.p, w.sign, w.shift, depth)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conjugacy {
    NotConjugate,
    NoConclusion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyReport {
    pub conclusion: Conjugacy,
    pub message: String,
}

/// Non-isomorphic algebras come from actions that are not topologically conjugate.
pub fn conjugacy_flag(alpha: &XiElement, beta: &XiElement, bound: usize) -> Result<ConjugacyReport> {
    Ok(match isomorphic(alpha, beta, bound)? {
        IsoVerdict::No(reason) => ConjugacyReport {
            conclusion: Conjugacy::NotConjugate,
            message: format!("actions theta^alpha, theta^beta not topologically conjugate ({reason})"),
        },
        _ => ConjugacyReport {
            conclusion: Conjugacy::NoConclusion,
            message: "no conclusion".into(),
        },
    })
}

/// A monomial matrix `M e_i = exp(2iπ·phase_i)·e_{perm_i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialMatrix {
    pub perm: Vec<usize>,
    pub phases: Vec<Angle>,
}

impl MonomialMatrix {
    pub fn identity(q: usize) -> Self {
        MonomialMatrix {
            perm: (0..q).collect(),
            phases: vec![Angle::zero(); q],
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let phases = (0..other.dim())
            .map(|i| other.phases[i].clone() + self.phases[other.perm[i]].clone())
            .collect();
        MonomialMatrix { perm, phases }
    }

    pub fn scalar(&self, lambda: &Angle) -> Self {
        MonomialMatrix {
            perm: self.perm.clone(),
            phases: self.phases.iter().map(|a| a.clone() + lambda.clone()).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::identity(self.dim()), |acc, _| acc.mul(self))
    }

    pub fn is_identity(&self) -> bool {
        self == &Self::identity(self.dim())
    }
}

/// Data of the bundle description of a periodic rational solenoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleData {
    pub k: u64,
    pub q: BigInt,
    pub p: BigInt,
    pub lambda: Angle,
    pub base: String,
    pub u: MonomialMatrix,
    pub v: MonomialMatrix,
}

impl BundleData {
    /// `v·u = λ·u·v`.
    pub fn commutation_holds(&self) -> bool {
        self.v.mul(&self.u) == self.u.mul(&self.v).scalar(&self.lambda)
    }

    /// `u^q = v^q = 1`.
    pub fn orders_hold(&self) -> bool {
        let q = self.u.dim();
        self.u.pow(q).is_identity() && self.v.pow(q).is_identity()
    }
}

/// Largest matrix size [`bundle_data`] materializes.
pub const BUNDLE_DIM_CAP: u64 = 100_000;

pub fn bundle_data(alpha: &XiElement) -> Result<BundleData> {
    if alpha.period()?.is_none() {
        return Err(Error::NotRationalPeriodic);
    }
    let (p, q) = (alpha.base().numer().clone(), alpha.base().denom().clone());
    let k = multiplicative_order(alpha.modulus(), &q)?;
    let dim = q
        .to_u64()
        .filter(|&d| d <= BUNDLE_DIM_CAP)
        .ok_or_else(|| Error::Unsupported(format!("bundle matrices of size {q}")))? as usize;
    let lambda = Angle::new(alpha.base().clone());
    let u = MonomialMatrix {
        perm: (0..dim).collect(),
        phases: (0..dim).map(|i| lambda.scale(&BigInt::from(i))).collect(),
    };
    let v = MonomialMatrix {
        perm: (0..dim).map(|i| (i + dim - 1) % dim).collect(),
        phases: vec![Angle::zero(); dim],
    };
    let nk = BigInt::from(alpha.modulus()).pow(k as u32);
    let data = BundleData {
        k,
        q,
        p,
        lambda,
        base: format!("S_{nk} x S_{nk}"),
        u,
        v,
    };
    debug_assert!(data.commutation_holds());
    Ok(data)
}
