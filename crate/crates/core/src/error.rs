//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by constructors, recognizers and the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A type label failed to parse or names a system outside the supported range.
    #[error("invalid type label: {0}")]
    InvalidLabel(String),
    /// A vector argument was zero where a root is required.
    #[error("zero vector where a root is required")]
    ZeroRoot,
    /// Two vectors have different ambient dimensions.
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    /// A pairing `2(b,a)/(a,a)` was not an integer.
    #[error("pairing is not integral")]
    NonIntegralPairing,
    /// A finite root was not found in the system it was looked up in.
    #[error("root {0} is not in the system")]
    RootNotInSystem(String),
    /// A parameter violates the constraints of a constructor.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// The operation is not defined for the given ambient type.
    #[error("unsupported ambient: {0}")]
    UnsupportedAmbient(String),
    /// Observed grades of a root do not form one arithmetic progression.
    #[error("grades of {root} are not an arithmetic progression inside the window: {grades:?}")]
    NotArithmetic { root: String, grades: Vec<i64> },
    /// A set of roots is not a valid subroot system model.
    #[error("invalid subroot system: {0}")]
    InvalidModel(String),
    /// A gradient violates the closed / semi-closed trichotomy.
    #[error("gradient trichotomy violated by {0} + {1}")]
    Trichotomy(String, String),
    /// The coset moduli match no classified affine type.
    #[error("unrecognized type: {0}")]
    Unrecognized(String),
    /// Oracle radii violate `inner <= check <= work` or the margin rule.
    #[error("invalid oracle configuration: {0}")]
    InvalidConfig(String),
    /// A precondition of the oracle failed, reported with a witness.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A search ran out of window before finding what it needed.
    #[error("window too small: {0}")]
    WindowTooSmall(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
