//! Scalar abstraction for landscape values and statistics.
//!
//! All numeric code in this crate is generic over [`Real`], which is
//! implemented for `f32` and `f64`. The crate root exposes concrete
//! aliases (`Instance64`, ...) for the common case.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Floating-point scalar used for fitness values, correlations and fits.
///
/// Automatically implemented for every type satisfying the super-traits,
/// in particular `f32` and `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from `f64` (rounds when the target is narrower).
    fn from_f64_lossy(value: f64) -> Self {
        Self::from_f64(value).expect("finite f64 converts to any Real")
    }

    /// Lossy widening/narrowing to `f64`.
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("Real converts to f64")
    }

    /// Largest representable value strictly below one.
    ///
    /// Used to keep copula draws inside the half-open interval `[0, 1)`.
    fn below_one() -> Self {
        Self::one() - Self::epsilon() / (Self::one() + Self::one())
    }
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + NumAssign
        + Sum
        + Debug
        + Display
        + LowerExp
        + Send
        + Sync
        + 'static
{
}
