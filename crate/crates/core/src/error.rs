use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what}: series did not reach tolerance within {terms} terms (error estimate {estimate:e})")]
    NonConvergence {
        what: &'static str,
        terms: usize,
        estimate: f64,
    },

    #[error("{what}: quadrature did not converge (error estimate {estimate:e})")]
    Quadrature { what: &'static str, estimate: f64 },

    #[error("{what}: imaginary residue {residue:e} exceeds tolerance for a real-valued result")]
    ComplexResidue { what: &'static str, residue: f64 },

    #[error("divergent configuration: {0}")]
    Divergent(String),

    #[error("grid too short: need at least {needed} points, have {have}")]
    GridTooShort { needed: usize, have: usize },

    #[error("singular point: {0}")]
    Singular(String),

    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
