use alloc::string::String;

/// Errors raised by the core numerics.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A distribution or configuration parameter is outside its admissible range.
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        /// Parameter name as it appears in the API.
        name: &'static str,
        /// Offending value.
        value: f64,
        /// Admissible range.
        reason: &'static str,
    },
    /// An argument lies outside the domain of the operation.
    #[error("{what}: {value} is outside the domain")]
    Domain {
        /// Which argument.
        what: &'static str,
        /// Offending value.
        value: f64,
    },
    /// The quantity is undefined at this point (zero or wrong-signed denominator).
    #[error("singular: {0}")]
    Singular(&'static str),
    /// Inputs have incompatible shapes (split lengths, bucket counts, ...).
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// Result alias for the core crate.
pub type Result<T> = core::result::Result<T, Error>;
