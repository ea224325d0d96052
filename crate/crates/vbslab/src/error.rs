use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VbsError {
    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The model itself is inconsistent, e.g. unsolvable bond multiplicities.
    #[error("model condition violated: {0}")]
    ModelCondition(String),
    /// A dense object would exceed the configured size cap.
    #[error("resource cap exceeded: {what} needs {needed}, cap is {cap}")]
    ResourceCap { what: String, needed: u128, cap: u128 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = VbsError> = std::result::Result<T, E>;
