//! Scalar abstraction: the numeric kernel is generic over the floating-point
//! type via `num-traits`. Concrete aliases for `f64` live at the crate root.

use num_traits::{Float, FloatConst, FromPrimitive};
use std::fmt;

/// Floating-point scalar usable throughout the numeric kernel.
///
/// Beyond the `num-traits` bundle this adds directed rounding steps
/// (`next_up`/`next_down`), which the interval arithmetic needs for
/// outward rounding.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + fmt::Display + fmt::Debug + Copy + 'static
{
    /// Smallest representable value strictly greater than `self`.
    fn next_up(self) -> Self;
    /// Largest representable value strictly less than `self`.
    fn next_down(self) -> Self;
}

impl Scalar for f64 {
    fn next_up(self) -> Self {
        f64::next_up(self)
    }

    fn next_down(self) -> Self {
        f64::next_down(self)
    }
}

impl Scalar for f32 {
    fn next_up(self) -> Self {
        f32::next_up(self)
    }

    fn next_down(self) -> Self {
        f32::next_down(self)
    }
}

/// Converts an `f64` literal into the working scalar type.
#[inline]
pub fn s<S: Scalar>(x: f64) -> S {
    S::from_f64(x).expect("f64 literal representable in scalar type")
}
