//! Floating-point abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Real scalar the simulator is generic over: `f32` or `f64`.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Entrywise tolerance used for invariant checks on single objects.
    fn tolerance() -> Self;

    /// Looser tolerance for products of several operators.
    fn composed_tolerance() -> Self;

    /// Converts an `f64` literal or draw into this scalar.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 is representable in every supported scalar")
    }

    /// Widens to `f64` for reporting.
    #[inline]
    fn to_f64_lossless(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Scalar for f64 {
    #[inline]
    fn tolerance() -> Self {
        1e-12
    }

    #[inline]
    fn composed_tolerance() -> Self {
        1e-10
    }
}

impl Scalar for f32 {
    #[inline]
    fn tolerance() -> Self {
        2e-6
    }

    #[inline]
    fn composed_tolerance() -> Self {
        1e-5
    }
}
