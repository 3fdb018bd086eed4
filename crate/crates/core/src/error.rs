use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input failed validation (non-finite values, wrong shapes, bad grids).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Input is valid but outside the region where the requested formula applies.
    #[error("outside the domain of validity: {0}")]
    Domain(String),

    /// The truncated Fock space cannot hold the requested motional state.
    #[error("Fock truncation too small: {0}")]
    Truncation(String),

    #[error("no oscillation detected")]
    NoOscillation,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::Invalid(format!(
            "{name} must be finite, got {value}"
        )))
    }
}
