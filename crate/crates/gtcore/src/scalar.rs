//! Numeric abstraction shared by weights, property values, and thresholds.

use std::fmt;
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Scalar type for link weights, property values, and thresholds.
///
/// Every algorithm in this crate is generic over it; `f64` (the default used
/// by the CLI) and `f32` both qualify.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Sum<Self>
    + fmt::Debug
    + fmt::Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// A node count or degree as a scalar.
    fn from_count(c: usize) -> Self {
        Self::from_usize(c).expect("count not representable in scalar type")
    }
}

impl<T> Scalar for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + Sum<Self>
        + fmt::Debug
        + fmt::Display
        + Default
        + Send
        + Sync
        + 'static
{
}
