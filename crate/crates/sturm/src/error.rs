//! Error taxonomy shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Argument outside the domain of the operation (point outside the
    /// interval, malformed construction data, mismatched grids, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A quadrature or propagation could not reach the requested tolerance.
    #[error("accuracy error: {msg} (achieved {achieved:e})")]
    Accuracy { msg: String, achieved: f64 },

    /// NaN/overflow during propagation; carries the abscissa of failure.
    #[error("instability at x = {x}: {msg}")]
    Instability { x: f64, msg: String },

    /// Boundary form matrix is rank deficient.
    #[error("invalid boundary forms: {0}")]
    InvalidForms(String),

    /// Root bracketing or iteration failed.
    #[error("search error: {0}")]
    Search(String),

    /// Requested configuration is outside what the method supports
    /// (degenerate boundary conditions, exceptional α, ...).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// λ too close to the spectrum for a resolvent solve.
    #[error("near-spectrum: |Δ(λ)| = {det_modulus:e} below gate {gate:e}")]
    NearSpectrum { det_modulus: f64, gate: f64 },

    /// Request exceeds the intended desk scale.
    #[error("resource error: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn accuracy(msg: impl Into<String>, achieved: f64) -> Self {
        Error::Accuracy {
            msg: msg.into(),
            achieved,
        }
    }
}
