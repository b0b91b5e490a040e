use thiserror::Error;

/// Errors raised by the computational kernels.
///
/// Every variant is a domain error (exit code 1 at the command line); usage
/// errors are handled by the argument parser before any of this runs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^31)")]
    NotPrime(u64),

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("negative exponent at byte {offset}")]
    NegativeExponent { offset: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("leading coefficient is not certified nonzero at the available precision")]
    UncertifiedValuation,

    #[error("leading coefficient {0} is not invertible")]
    NotInvertible(String),

    #[error("precision cap {cap} exceeded before certification")]
    PrecisionCap { cap: usize },

    #[error("unsupported factor: {0}")]
    UnsupportedFactor(String),

    #[error("pair is not axis-supported ({0}); use the full flag sum instead")]
    NotAxisSupported(String),

    #[error("polynomial is not a good curve: {0}")]
    NotGood(String),

    #[error("Hensel iteration stalled")]
    HenselStall,

    #[error("precision mismatch: need {need}, have {have}")]
    PrecisionMismatch { need: usize, have: usize },

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("coweight has length {got}, datum has lattice rank {expected}")]
    CoweightLength { expected: usize, got: usize },

    #[error("coweights belong to different data: {0}")]
    MismatchedDatum(String),

    #[error("coweight {0} is not dominant")]
    NotDominant(String),

    #[error("Weyl group enumeration exceeded the cap of {cap}")]
    WeylCap { cap: usize },

    #[error("enumeration exceeded the cap of {cap} candidates")]
    EnumerationCap { cap: u64 },

    #[error("no stabilization before window cap {cap}")]
    NoStabilization { cap: u32 },

    #[error("transition unavailable: {0}")]
    TransitionUnavailable(String),

    #[error("triangular solve failed: {0}")]
    NonTriangular(String),

    #[error("transition paths disagree: {0}")]
    PathsDisagree(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
