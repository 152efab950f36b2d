use alloc::string::String;

use crate::finring::Elem;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("ring of {size} elements exceeds the size cap of {cap}")]
    SizeCapExceeded { size: u128, cap: usize },
    #[error("ring `{0}` has no involution")]
    MissingInvolution(String),
    #[error("ring `{0}` has no imaginary unit")]
    MissingImaginaryUnit(String),
    #[error("ring `{0}` is not a 2x2 matrix ring")]
    NotAMatrixRing(String),
    #[error("scalar {0} is not central")]
    NonCentralScalar(Elem),
    #[error("element {0} is not a unit")]
    NotAUnit(Elem),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("ring sizes differ: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("invalid ring spec `{0}`")]
    InvalidSpec(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// A computed certificate contradicts an independent check.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
