//! Windowed search for the symmetrizer group.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use nsolenoid::multiplier::symmetrizer;
use nsolenoid::{QnRational, Result, XiElement};
use serde::Serialize;

use crate::reference::Reference;

/// A lattice point `(p₁/N^k, p₂/N^k)`, not necessarily reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct LatticePoint {
    pub p1: i64,
    pub p2: i64,
    pub k: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct BruteSymmetrizer {
    pub window_p: i64,
    pub window_k: u32,
    /// Largest exponent of the test points `h`.
    pub test_k: u32,
    pub points: Vec<LatticePoint>,
}

impl BruteSymmetrizer {
    pub fn contains(&self, g: &LatticePoint) -> bool {
        self.points.binary_search(g).is_ok()
    }
}

/// Exponent range for the test points: the window exponent plus enough
/// extra levels that every numerator up to `P` is divided out.
pub fn test_exponent(n: u64, p: i64, k: u32) -> u32 {
    let mut l = 0u32;
    let mut pw = 1i128;
    while pw <= p as i128 {
        pw *= n as i128;
        l += 1;
    }
    k + l
}

/// Numerators ordered by magnitude, so that failing points are found early.
fn numerators(p: i64) -> Vec<i64> {
    let mut v = vec![0];
    for m in 1..=p {
        v.push(m);
        v.push(-m);
    }
    v
}

/// `θ(g, h) = (p₁p₄ − p₃p₂)·α_{k+l} mod 1` for `g = (p₁, p₂)/N^k`, `h = (p₃, p₄)/N^l`,
/// each side of `Ψ(g, h) = p₁p₄·α_{k+l}` read off the unreduced representatives.
enum Phases {
    /// `α_n = c_n / D`.
    Small { c: Vec<i64>, d: i64 },
    Big { c: Vec<BigInt>, d: BigInt },
}

impl Phases {
    fn new(r: &Reference, len: usize, p: i64) -> Result<Self> {
        let vals = (0..len).map(|n| r.alpha(n)).collect::<Result<Vec<_>>>()?;
        let d = vals.iter().fold(BigInt::from(1), |acc, v| acc.lcm(v.denom()));
        let c: Vec<BigInt> = vals.iter().map(|v| v.numer() * (&d / v.denom())).collect();
        let limit = i64::MAX as i128 / (4 * (p as i128).pow(2) + 1);
        match d.to_i128().filter(|&x| x < limit) {
            Some(di) => Ok(Phases::Small {
                c: c.iter().map(|x| x.to_i64().expect("below D")).collect(),
                d: di as i64,
            }),
            None => Ok(Phases::Big { c, d }),
        }
    }

    fn vanishes(&self, coeff: i64, n: usize) -> bool {
        match self {
            Phases::Small { c, d } => (coeff * c[n]) % d == 0,
            Phases::Big { c, d } => (BigInt::from(coeff) * &c[n]).is_multiple_of(d),
        }
    }
}

/// Every `g` in the window `|p₁|, |p₂| ≤ P`, `k ≤ K` with `θ(g, h) = 0` for
/// all `h` with `|p₃|, |p₄| ≤ P` and exponent up to [`test_exponent`].
pub fn brute_symmetrizer(alpha: &XiElement, p: i64, k: u32) -> Result<BruteSymmetrizer> {
    let r = Reference::of(alpha);
    let test_k = test_exponent(alpha.modulus(), p, k);
    let phases = Phases::new(&r, (k + test_k + 1) as usize, p)?;
    let nums = numerators(p);
    let mut points = Vec::new();
    for gk in 0..=k {
        for &p1 in &nums {
            for &p2 in &nums {
                let symmetric = nums.iter().all(|&p3| {
                    nums.iter().all(|&p4| {
                        let coeff = p1 * p4 - p3 * p2;
                        (0..=test_k).all(|l| phases.vanishes(coeff, (gk + l) as usize))
                    })
                });
                if symmetric {
                    points.push(LatticePoint { p1, p2, k: gk });
                }
            }
        }
    }
    points.sort();
    Ok(BruteSymmetrizer { window_p: p, window_k: k, test_k, points })
}

#[derive(Debug, Clone, Serialize)]
pub struct SymmetrizerComparison {
    pub agrees: bool,
    pub brute_count: usize,
    pub window_count: usize,
    /// Window points on which the brute search and the closed form disagree.
    pub mismatches: Vec<LatticePoint>,
}

/// Compares [`brute_symmetrizer`] with the closed form on every window point.
pub fn compare_symmetrizer(alpha: &XiElement, p: i64, k: u32) -> Result<SymmetrizerComparison> {
    let brute = brute_symmetrizer(alpha, p, k)?;
    let desc = symmetrizer(alpha)?;
    let n = alpha.modulus();
    let mut mismatches = Vec::new();
    let mut window_count = 0;
    for gk in 0..=k {
        for p1 in -p..=p {
            for p2 in -p..=p {
                window_count += 1;
                let g = LatticePoint { p1, p2, k: gk };
                let pair = (QnRational::new(p1, gk, n)?, QnRational::new(p2, gk, n)?);
                if desc.contains(&pair) != brute.contains(&g) {
                    mismatches.push(g);
                }
            }
        }
    }
    Ok(SymmetrizerComparison {
        agrees: mismatches.is_empty(),
        brute_count: brute.points.len(),
        window_count,
        mismatches,
    })
}

/// Whether the brute set is exactly `{g : b | p₁, b | p₂}`.
pub fn is_lattice_of(brute: &BruteSymmetrizer, b: i64) -> bool {
    let mut expected = Vec::new();
    for k in 0..=brute.window_k {
        for p1 in -brute.window_p..=brute.window_p {
            for p2 in -brute.window_p..=brute.window_p {
                if p1 % b == 0 && p2 % b == 0 {
                    expected.push(LatticePoint { p1, p2, k });
                }
            }
        }
    }
    expected.sort();
    expected == brute.points
}

/// Whether the brute set is `{0}` (every representative of zero).
pub fn is_trivial(brute: &BruteSymmetrizer) -> bool {
    brute.points.iter().all(|g| g.p1.is_zero() && g.p2.is_zero())
}
