use thiserror::Error;

use crate::coeff::CoefficientRing;

/// Errors raised by the algebraic core, the law engine and the script front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported range (p < 2^32)")]
    PrimeTooLarge(u64),
    #[error("coefficient rings differ: {0} vs {1}")]
    RingMismatch(CoefficientRing, CoefficientRing),
    #[error("division by zero")]
    DivisionByZero,
    #[error("multiplicative inverses are unavailable in {0}")]
    InverseUnavailable(CoefficientRing),
    #[error("operation unsupported over {0}")]
    UnsupportedRing(CoefficientRing),

    #[error("table has {found} entries, expected {expected}")]
    ShapeMismatch { expected: usize, found: usize },
    #[error("composition index {index} out of scope for degree {degree}")]
    IndexOutOfScope { index: usize, degree: usize },
    #[error("elements live in different backends or modules")]
    BackendMismatch,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("expected {expected} inputs, got {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("invalid degree {degree}: {reason}")]
    InvalidDegree { degree: usize, reason: &'static str },
    #[error("empty linear combination")]
    EmptyCombination,

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("no assignment for generator `{0}`")]
    MissingAssignment(String),
    #[error("malformed tree expression: {0}")]
    BadTree(String),

    #[error("point {point:?} is outside the domain of {kind}")]
    IndexOutOfDomain {
        kind: &'static str,
        point: [usize; 3],
    },

    #[error("unknown law `{0}`")]
    UnknownLaw(String),
    #[error("bad configuration: {0}")]
    BadConfig(String),

    #[error(transparent)]
    Script(#[from] crate::expr::ScriptError),
    #[error("malformed serialized value: {0}")]
    Decode(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
