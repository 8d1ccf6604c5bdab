use thiserror::Error;

/// Failure modes shared by every module of the crate.
///
/// `Invalid*` variants are caller mistakes; `ResourceGuard` means a computation
/// was refused because it would exceed a configured size cap.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unknown generator id `{0}`")]
    UnknownGenerator(String),
    #[error("resource guard: {what} would reach {count}, cap is {cap}")]
    ResourceGuard { what: String, count: u128, cap: u128 },
    #[error("singular lattice basis")]
    SingularBasis,
    #[error("excluded root system component {0} (the vanishing bound does not apply)")]
    ExcludedComponent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
