use thiserror::Error;

/// Errors raised by the exact-arithmetic layer and the decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must be greater than 1")]
    InvalidModulus(u64),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("{0} is not a partial product of the prime sequence")]
    NotPartialProduct(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime period must be nonempty")]
    EmptyPeriod,

    #[error("N-adic integer is not in the image of the integers")]
    NotInteger,

    #[error("digit index {index} is beyond the finite prefix of length {len}")]
    PrefixExhausted { index: usize, len: usize },

    #[error("digit {digit} out of range for radix {radix}")]
    InvalidDigit { digit: u64, radix: u64 },

    #[error("denominator {den} is not coprime to modulus {modulus}")]
    DenominatorNotCoprime { den: String, modulus: u64 },

    #[error("{0} is not an N-adic rational for modulus {1}")]
    NotNadicRational(String, u64),

    #[error("base value {0} lies outside [0, 1)")]
    BaseOutOfRange(String),

    #[error("sequence value at index {index} is {value}, outside [0, 1)")]
    ValueOutOfRange { index: usize, value: String },

    #[error("question is undecidable on a finite-prefix carrier")]
    Undecidable,

    #[error("multiplicative order search exceeded {0} iterations")]
    OrderOverflow(u64),

    #[error("pair ({0}, {1}) is not an element of K_alpha")]
    NotInK(String, String),

    #[error("elements belong to different sequences alpha")]
    ContextMismatch,

    #[error("alpha is not rational periodic")]
    NotRationalPeriodic,

    #[error("invalid rescale target {target} for modulus {modulus}")]
    InvalidRescale { target: u64, modulus: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
