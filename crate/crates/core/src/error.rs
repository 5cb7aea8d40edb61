use alloc::string::String;

/// Errors raised by the generators, the circulant algebra and the estimators.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A parameter violates its documented precondition.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter {
        /// Parameter name as it appears in the API.
        name: &'static str,
        /// The violated precondition.
        reason: String,
    },

    /// Min-max normalization or a ratio was requested for a sequence with zero range.
    #[error("sequence is constant (max == min)")]
    ConstantSequence,

    /// The variance ratio lies outside `(0, 1/4]`.
    #[error("variance ratio {0} outside (0, 1/4]")]
    RatioOutOfRange(f64),

    /// A circulant eigenvalue is too small to invert.
    #[error("singular circulant operator: |eigenvalue[{index}]| = {magnitude:e} <= tolerance {tolerance:e}")]
    SingularOperator {
        /// Index of the first offending eigenvalue.
        index: usize,
        /// Its modulus.
        magnitude: f64,
        /// Tolerance it was compared against.
        tolerance: f64,
    },

    /// Vector length does not match the operator dimension.
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch {
        /// Required length.
        expected: usize,
        /// Supplied length.
        found: usize,
    },

    /// Too few samples for the requested statistic.
    #[error("need at least {needed} values, got {found}")]
    TooShort {
        /// Minimum length.
        needed: usize,
        /// Supplied length.
        found: usize,
    },

    /// A value is NaN or infinite.
    #[error("non-finite value at index {0}")]
    NonFinite(usize),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

/// Result alias for this crate.
pub type Result<T> = core::result::Result<T, Error>;
