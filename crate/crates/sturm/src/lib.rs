//! Sturm–Liouville operators `-y'' + q(x) y` with distributional potentials.
//!
//! The potential is never evaluated pointwise: it enters through its primitive
//! `u(x) = ∫ q`, an `L₂` function.  With the quasi-derivative
//! `y^[1] = y' - u·y` the eigenvalue equation becomes a first-order system
//! with integrable coefficients, which this crate propagates by cell-averaged
//! exponential steps.  On top of that sit
//!
//! * modified Prüfer shooting for Dirichlet spectra ([`pruefer`], [`spectrum`]),
//! * Birkhoff classification of boundary forms and the characteristic
//!   determinant Δ(λ) ([`boundary`]),
//! * second-order eigenvalue/eigenfunction asymptotics and decay-rate
//!   diagnostics ([`asymptotics`]),
//! * resolvent convergence experiments for mollified and staircase
//!   approximations ([`approximation`]),
//! * the strongly singular `|x|^α` family on `[-1, 1]` for `α > -2` via power
//!   series fundamental systems and Riccati-regularized propagation
//!   ([`singular`]).
//!
//! All numerics are generic over the floating scalar through [`scalar::Scalar`];
//! the concrete aliases below fix `f64` for ordinary use.

pub mod approximation;
pub mod asymptotics;
pub mod boundary;
pub mod error;
pub mod potential;
pub mod pruefer;
pub mod quad;
pub mod quasi;
pub mod scalar;
pub mod singular;
pub mod spectrum;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Default floating scalar for applications of this crate.
pub type Real = f64;
/// Complex numbers over [`Real`].
pub type Cplx = num_complex::Complex<Real>;

pub type Primitive = potential::Primitive<Real>;
pub type SmoothnessClass = potential::SmoothnessClass<Real>;
pub type QuasiState = quasi::QuasiState<Real>;
pub type FundamentalPair = quasi::FundamentalPair<Real>;
pub type PrueferTrajectory = pruefer::PrueferTrajectory<Real>;
pub type KernelValues = pruefer::KernelValues<Real>;
pub type BoundaryForms = boundary::BoundaryForms<Real>;
pub type RegularityReport = boundary::RegularityReport<Real>;
pub type SpectralResult = spectrum::SpectralResult<Real>;
pub type AsymptoticTerms = asymptotics::AsymptoticTerms<Real>;
pub type SingularFamily = singular::SingularFamily<Real>;
