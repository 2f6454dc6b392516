//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors raised by exact arithmetic, series construction, congruence
/// checking and campaign orchestration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Polynomial or rational-function division by the zero polynomial.
    #[error("division by zero polynomial")]
    DivisorZero,

    /// gcd(0, 0) requested.
    #[error("gcd of two zero polynomials is undefined")]
    UndefinedGcd,

    /// Evaluation of a rational function at a point where its denominator
    /// vanishes (or at 0 with a negative Laurent offset).
    #[error("pole at evaluation point {0}")]
    PoleAtPoint(String),

    /// Cyclotomic polynomial or q-integer index out of range.
    #[error("invalid index: {0}")]
    InvalidIndex(String),

    /// Congruence modulus is constant or divisible by q.
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    /// Summand family instantiated with parameters outside its domain.
    #[error("invalid family parameters: {0}")]
    InvalidFamilyParams(String),

    /// An identity was invoked outside its stated hypotheses.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// A sampled parameter point makes a denominator factor vanish.
    #[error("degenerate point: {0}")]
    DegeneratePoint(String),

    /// Malformed sweep configuration.
    #[error("config error: {0}")]
    ConfigError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
