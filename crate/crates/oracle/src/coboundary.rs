//! Solving `δψ = ξ_J − ξ_R` generator by generator.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use nsolenoid::ktheory::{cohomologous, xi_cocycle};
use nsolenoid::{NadicInteger, QnRational, Result};
use serde::Serialize;

/// `ψ(p/N^k) = p·g_k` for `k ≤ K`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CochainSpec {
    pub psi_one: String,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SolveOutcome {
    /// Exactly one `ψ(1)` in the search range survives every stage.
    Solved { cochain: CochainSpec, agrees_with_library: bool },
    /// No `ψ(1)` with `|ψ(1)| ≤ bound` is integral at this stage.
    NoSolution { stage: usize, agrees_with_library: bool },
    /// Several candidates survive all `K` stages; more stages are needed.
    BoundExhausted { candidates: usize },
}

/// `c(x, y) = ξ_J(x, y) − ξ_R(x, y)`.
fn diff(j: &NadicInteger, r: &NadicInteger, x: &QnRational, y: &QnRational) -> Result<BigInt> {
    Ok(xi_cocycle(j, x, y)? - xi_cocycle(r, x, y)?)
}

/// `ψ` is additive up to `c`, so `ψ(1/N^k) = ψ(N·1/N^{k+1})` forces
/// `g_k = N·g_{k+1} − Σ_{i<N} c(i/N^{k+1}, 1/N^{k+1})`. Starting from each
/// candidate `ψ(1) = g_0` in `[−bound, bound]` the recurrence is run for
/// `K` stages; a candidate dies when some `g_k` is not an integer.
///
/// A surviving candidate is conclusive only once `N^K` exceeds
/// `|ψ(1)·b + a|` for `J − R = a/b`: a spurious candidate `g` satisfies
/// `N^k | g·b + a` at every stage it survives.
pub fn coboundary_solve(j: &NadicInteger, r: &NadicInteger, k_max: usize, bound: u64) -> Result<SolveOutcome> {
    let n = j.modulus();
    let mut sums = Vec::with_capacity(k_max);
    for k in 0..k_max {
        let x = QnRational::new(1, k as u32 + 1, n)?;
        let mut s = BigInt::zero();
        for i in 1..n {
            s += diff(j, r, &x.scale(&BigInt::from(i)), &x)?;
        }
        sums.push(s);
    }
    let bound = bound as i64;
    let mut alive: Vec<Vec<BigInt>> = (-bound..=bound).map(|g| vec![BigInt::from(g)]).collect();
    for (k, s) in sums.iter().enumerate() {
        alive.retain_mut(|gs| {
            let t = &gs[k] + s;
            if t.is_multiple_of(&BigInt::from(n)) {
                gs.push(t / n);
                true
            } else {
                false
            }
        });
        if alive.is_empty() {
            // A library witness outside the search range is consistent with no candidate.
            let library = match cohomologous(j, r)? {
                None => true,
                Some(w) => w.abs() > BigInt::from(bound),
            };
            return Ok(SolveOutcome::NoSolution { stage: k + 1, agrees_with_library: library });
        }
    }
    if alive.len() > 1 {
        return Ok(SolveOutcome::BoundExhausted { candidates: alive.len() });
    }
    let gs = alive.pop().expect("one candidate");
    let library = cohomologous(j, r)?;
    Ok(SolveOutcome::Solved {
        agrees_with_library: library.as_ref() == Some(&gs[0]),
        cochain: CochainSpec {
            psi_one: gs[0].to_string(),
            generators: gs.iter().map(ToString::to_string).collect(),
        },
    })
}

/// The least `K` for which `N^K > 2·bound`, so that a surviving candidate is unique.
pub fn stages_for_bound(n: u64, bound: u64) -> usize {
    let mut k = 0;
    let mut pw: u128 = 1;
    while pw <= 2 * bound as u128 {
        pw *= n as u128;
        k += 1;
    }
    k
}
