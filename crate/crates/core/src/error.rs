use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("polynomial division is not exact")]
    InexactDivision,

    #[error("resultant needs at least one operand of positive degree in the eliminated variable")]
    ResultantDegree,

    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("expression is identically zero")]
    IdenticallyZero,

    #[error("{0} is not a factor of a self-conjugate Laurent polynomial")]
    NotSelfConjugate(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
