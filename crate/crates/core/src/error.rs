use thiserror::Error;

/// Errors raised by the profile, integral and estimate routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Parameters that fall outside the admissible set (caps, orders, signs).
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),

    /// An evaluation point outside the domain of the function.
    #[error("{what} = {value} lies outside the domain [{lo}, {hi}]")]
    OutOfDomain {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    /// A quantity with no finite value at the requested point
    /// (critical points for r > 1, cusp and cone points).
    #[error("singular point at rho = {rho}: {reason}")]
    Singular { rho: f64, reason: &'static str },

    /// A root could not be bracketed; usually a violated cap on `d`.
    #[error("bracketing failed: {0}")]
    Bracket(String),

    /// Numerical machinery failed to reach its tolerance.
    #[error("numerical failure: {0}")]
    Numeric(String),

    /// Malformed or non-finite input (parse errors, NaN arguments).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// `true` for errors caused by the caller's parameters rather than
    /// by the numerics.
    pub fn is_parameter_error(&self) -> bool {
        matches!(
            self,
            Error::Inadmissible(_) | Error::OutOfDomain { .. } | Error::InvalidInput(_)
        )
    }
}

impl Error {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Inadmissible(_) => "inadmissible",
            Error::OutOfDomain { .. } => "out-of-domain",
            Error::Singular { .. } => "singular",
            Error::Bracket(_) => "bracket",
            Error::Numeric(_) => "numeric",
            Error::InvalidInput(_) => "invalid-input",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{name} must be finite, got {x}")))
    }
}
