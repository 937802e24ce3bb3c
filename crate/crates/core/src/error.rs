use thiserror::Error;

/// Errors raised by the algebra engine and the job front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials live in different rings")]
    RingMismatch,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,

    #[error("operation needs a proper ideal, got the unit ideal")]
    UnitIdeal,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("ring has no base/cotangent block split")]
    NotSplit,

    #[error("polynomial vanishes identically on the base variety; the component dies under localization")]
    VanishesOnBase,

    #[error("unresolved component: {0}")]
    UnresolvedComponent(String),

    #[error("ideal is not an associated prime of the given ideal")]
    NotAssociated,

    #[error("non-holonomic component of dimension {found} (expected {expected}): {ideal}")]
    NonHolonomic {
        expected: usize,
        found: usize,
        ideal: String,
    },

    #[error("invalid direct-sum split: {0}")]
    InvalidSplit(String),

    #[error("too many variables: {0} (at most {max} supported)", max = crate::poly::MAX_VARS)]
    TooManyVariables(usize),

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
