//! Scalar abstraction: every metric, trainer, and clusterer in this crate is
//! generic over [`Real`], so the same code runs at `f32` or `f64`.

use num_traits::{Float, FromPrimitive, ToPrimitive};
use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum<Self>
    + for<'a> Sum<&'a Self>
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lift a count into the scalar type.
    fn of(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }

    /// Lift an `f64` literal into the scalar type.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }
}

impl Real for f32 {}
impl Real for f64 {}
