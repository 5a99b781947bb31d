//! Eigenvalue ladders and normalized eigenfunctions.

use crate::scalar::Scalar;
use num_complex::Complex;

/// Placeholder.
#[derive(Debug, Clone)]
pub struct SpectralResult<S: Scalar> {
    pub n: usize,
    pub lambda: Complex<S>,
}
