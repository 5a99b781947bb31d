//! Floating scalar abstraction: the numerics run over `f32` or `f64`.

use num_complex::Complex;
use num_traits::{Float, FromPrimitive, NumAssign, Signed};
use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

/// Floating point scalar: `f32` or `f64`.
pub trait Scalar:
    Float
    + FromPrimitive
    + Signed
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Shorthand conversion from an `f64` constant.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("constant representable in scalar type")
    }

    #[inline]
    fn pi() -> Self {
        Self::of(std::f64::consts::PI)
    }

    #[inline]
    fn half() -> Self {
        Self::of(0.5)
    }

    #[inline]
    fn two() -> Self {
        Self::of(2.0)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Principal square root of a complex number, positive on the positive real
/// axis.
#[inline]
pub fn sqrt_principal<S: Scalar>(z: Complex<S>) -> Complex<S> {
    z.sqrt()
}

/// `cos(w)` and `sinc(w) = sin(w)/w` evaluated stably near `w² = d` for small
/// `|d|`; both are entire functions of `d = w²`.
///
/// Used by the 2×2 trace-free matrix exponential `exp(M) = cos(w)·I + sinc(w)·M`
/// with `w² = det M`.
pub fn cos_sinc_of_square<S: Scalar>(d: Complex<S>) -> (Complex<S>, Complex<S>) {
    if d.norm_sqr() < S::of(1e-12) {
        // cos(w)  = 1 - d/2 + d²/24 - d³/720
        // sinc(w) = 1 - d/6 + d²/120 - d³/5040
        let one = Complex::new(S::one(), S::zero());
        let c = one - d * S::of(0.5) + d * d * S::of(1.0 / 24.0) - d * d * d * S::of(1.0 / 720.0);
        let s = one - d * S::of(1.0 / 6.0) + d * d * S::of(1.0 / 120.0)
            - d * d * d * S::of(1.0 / 5040.0);
        (c, s)
    } else {
        let w = d.sqrt();
        (w.cos(), w.sin() / w)
    }
}
