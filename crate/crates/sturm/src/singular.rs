//! Strongly singular |x|^a potential family.

use crate::scalar::Scalar;

/// Placeholder.
#[derive(Debug, Clone)]
pub struct SingularFamily<S: Scalar> {
    pub alpha: S,
}
