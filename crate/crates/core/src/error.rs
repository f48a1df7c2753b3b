use thiserror::Error;

/// Errors raised by the exact kernels and experiment drivers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("bound error: {0}")]
    Bound(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("degenerate evaluation: {0}")]
    Degenerate(String),
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("construction error: {0}")]
    Construction(String),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
}

impl Error {
    /// True for failures caused by the data (degenerate points, unrealizable shapes) rather
    /// than by malformed input.
    pub fn is_degeneracy(&self) -> bool {
        matches!(
            self,
            Error::Degenerate(_) | Error::Construction(_) | Error::Unsupported(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
