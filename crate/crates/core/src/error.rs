use thiserror::Error;

/// Errors raised by the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScfError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parameter {0} is not bound")]
    UnboundParameter(String),
    #[error("denominator vanishes at the given binding")]
    Pole,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("mixed Grassmann basis kinds")]
    MixedBasis,
    #[error("element is not Z2-homogeneous")]
    NotHomogeneous,
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("not expressible in the generator basis: {0}")]
    NotExpressible(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("graded dimensions did not stabilize below level cutoff {0}")]
    NotStabilized(i32),
}

pub type Result<T> = std::result::Result<T, ScfError>;
