use thiserror::Error;

/// Errors raised by the computations in this crate.
///
/// `InvariantViolation` marks a failed internal consistency check (an
/// arithmetic identity that must hold exactly); it is never expected on valid
/// input and callers should treat it as a bug report.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid multiplication table: {invariant}")]
    InvalidTable { invariant: String },

    #[error("{what} exceeds cap ({size} > {cap})")]
    CapExceeded { what: &'static str, size: usize, cap: usize },

    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("representation is not faithful (kernel of order {kernel_order})")]
    NotFaithful { kernel_order: usize },

    #[error("tolerance breach: {0}")]
    ToleranceBreach(String),

    #[error("invalid category: {0}")]
    InvalidCategory(String),

    #[error("arrow class is not a right multiplicative system: {0}")]
    NotRightMultiplicative(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// Short machine-readable name of the violated invariant, used in
    /// structured error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidPermutation(_) => "invalid_permutation",
            Error::InvalidTable { .. } => "invalid_table",
            Error::CapExceeded { .. } => "cap_exceeded",
            Error::NotAHomomorphism(_) => "not_a_homomorphism",
            Error::InvalidRepresentation(_) => "invalid_representation",
            Error::NotFaithful { .. } => "not_faithful",
            Error::ToleranceBreach(_) => "tolerance_breach",
            Error::InvalidCategory(_) => "invalid_category",
            Error::NotRightMultiplicative(_) => "not_right_multiplicative",
            Error::InvalidInput(_) => "invalid_input",
            Error::InvariantViolation(_) => "invariant_violation",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn violation(msg: impl Into<String>) -> Error {
    Error::InvariantViolation(msg.into())
}
