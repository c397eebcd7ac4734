//! Exact invariants of noncommutative solenoids.
//!
//! The twisted group algebras of `ℚ_N²` are parametrized by sequences
//! `α = (α_n)` in the group `Ξ_N`. Everything here is computed exactly for
//! rational data: multiplier phases as angles in `ℚ/ℤ`, the symmetrizer
//! group, the K₀ group as a subgroup of `ℚ_N²` or as an extension of `ℚ_N`
//! by `ℤ`, and the isomorphism decision.

pub mod arith;
pub mod classify;
pub mod encoding;
pub mod error;
pub mod ktheory;
pub mod nadic;
pub mod multiplier;
pub mod xi;

pub use error::{Error, Result};
pub use nadic::{NadicInteger, NadicRepr, PrimeSeq, QnRational};
pub use xi::{omega_lambda, omega_lambda_inv, Angle, LambdaCarrier, XiElement, XiLambdaElement};
pub use multiplier::{SolenoidClass, SymmetrizerDescription};
pub use ktheory::{Cochain, KElement, QGroupElement, ScaledSide, WeakVerdict};
pub use classify::{BundleData, Direction, IsoVerdict, IsoWitness, MonomialMatrix};
