//! Scalar abstraction: everything in this crate is generic over the real
//! scalar type. `f32` and `f64` both qualify; concrete aliases live at the
//! crate root.

use nalgebra::RealField;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real scalar usable for all computations in this crate.
///
/// Combines `num_traits::Float` (transcendental functions) with
/// `nalgebra::RealField` (so `Complex<T>` matrices admit an SVD). Because
/// both supertraits expose same-named methods, code in this crate calls
/// them through explicit paths (`Float::sqrt(x)` etc.).
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssign
    + RealField
    + serde::Serialize
    + Send
    + Sync
    + 'static
{
    fn of(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 literal representable in scalar type")
    }

    fn of_usize(x: usize) -> Self {
        <Self as FromPrimitive>::from_usize(x).expect("usize representable in scalar type")
    }

    fn of_i64(x: i64) -> Self {
        <Self as FromPrimitive>::from_i64(x).expect("i64 representable in scalar type")
    }
}

impl<T> Scalar for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + NumAssign
        + RealField
        + serde::Serialize
        + Send
        + Sync
        + 'static
{
}
