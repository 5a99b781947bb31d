//! Second-order eigenvalue and eigenfunction asymptotics.

use crate::scalar::Scalar;

/// Placeholder.
#[derive(Debug, Clone)]
pub struct AsymptoticTerms<S: Scalar> {
    pub n: usize,
    pub mu_n: S,
}
