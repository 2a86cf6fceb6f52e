use std::fmt;

/// Reasons an instance is rejected after it has been parsed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationError {
    /// The minimal polynomial vanishes at zero.
    BaseIsZero { base: usize },
    /// The minimal polynomial is a scalar multiple of `x - 1`.
    BaseIsOne { base: usize },
    /// The minimal polynomial is constant.
    DegenerateMinPoly { base: usize },
    /// Variable `var` (1-based) has a zero coefficient in every equation.
    AllZeroColumn { var: usize },
    CoefficientLength { equation: usize, expected: usize, found: usize },
    BaseIndexOutOfRange { equation: usize, base: usize },
    ZeroDenominator,
    NoVariables,
}

impl ValidationError {
    /// Short machine-readable reason tag.
    pub fn reason(&self) -> &'static str {
        match self {
            ValidationError::BaseIsZero { .. } => "base-is-zero",
            ValidationError::BaseIsOne { .. } => "base-is-one",
            ValidationError::DegenerateMinPoly { .. } => "degenerate-min-poly",
            ValidationError::AllZeroColumn { .. } => "all-zero-column",
            ValidationError::CoefficientLength { .. } => "coefficient-length-mismatch",
            ValidationError::BaseIndexOutOfRange { .. } => "base-index-out-of-range",
            ValidationError::ZeroDenominator => "zero-denominator",
            ValidationError::NoVariables => "no-variables",
        }
    }
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationError::BaseIsZero { base } => write!(f, "base-is-zero (base {base})"),
            ValidationError::BaseIsOne { base } => write!(f, "base-is-one (base {base})"),
            ValidationError::DegenerateMinPoly { base } => {
                write!(f, "degenerate-min-poly (base {base} has degree 0)")
            }
            ValidationError::AllZeroColumn { var } => write!(f, "all-zero-column {var}"),
            ValidationError::CoefficientLength { equation, expected, found } => write!(
                f,
                "coefficient-length-mismatch in equation {equation}: expected {expected}, found {found}"
            ),
            ValidationError::BaseIndexOutOfRange { equation, base } => {
                write!(f, "base-index-out-of-range in equation {equation}: {base}")
            }
            ValidationError::ZeroDenominator => write!(f, "zero-denominator"),
            ValidationError::NoVariables => write!(f, "no-variables"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(ValidationError),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("element is not invertible; the minimal polynomial is reducible")]
    NotInvertible,
    #[error("base is a root of unity")]
    IsRootOfUnity,
    #[error("system is not homogeneous")]
    NotHomogeneous,
    #[error("candidate has {found} entries, system has {expected} variables")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("candidate is not a solution")]
    NotASolution,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("too many variables: {found} exceeds the configured maximum {max}")]
    TooManyVariables { found: usize, max: usize },
    #[error("resource limit exceeded: {0}")]
    ResourceLimitExceeded(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl From<ValidationError> for Error {
    fn from(e: ValidationError) -> Self {
        Error::Validation(e)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
