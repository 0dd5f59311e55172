//! Scalar abstractions.
//!
//! Exact constructions run over any primitive signed integer with checked
//! arithmetic; overflow is reported, never wrapped. Spectral code runs over
//! any [`num_traits::Float`].

use std::fmt::{Debug, Display};

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Float, FromPrimitive, NumCast, PrimInt, Signed};

use crate::error::{Error, Result};

/// Signed integer scalar for exact matrices and algebra elements.
pub trait Integer:
    PrimInt + Signed + CheckedAdd + CheckedSub + CheckedMul + FromPrimitive + Debug + Display + Send + Sync + 'static
{
    fn try_from_u64(v: u64) -> Result<Self> {
        Self::from_u64(v).ok_or(Error::Overflow("integer conversion"))
    }

    fn try_from_i64(v: i64) -> Result<Self> {
        Self::from_i64(v).ok_or(Error::Overflow("integer conversion"))
    }

    fn add_checked(self, rhs: Self, what: &'static str) -> Result<Self> {
        self.checked_add(&rhs).ok_or(Error::Overflow(what))
    }

    fn sub_checked(self, rhs: Self, what: &'static str) -> Result<Self> {
        self.checked_sub(&rhs).ok_or(Error::Overflow(what))
    }

    fn mul_checked(self, rhs: Self, what: &'static str) -> Result<Self> {
        self.checked_mul(&rhs).ok_or(Error::Overflow(what))
    }
}

impl Integer for i8 {}
impl Integer for i16 {}
impl Integer for i32 {}
impl Integer for i64 {}
impl Integer for i128 {}
impl Integer for isize {}

/// Floating point scalar for the eigenvalue solvers.
pub trait Real: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {
    /// Number of mantissa bits, counting the implicit one.
    const MANTISSA_DIGITS: u32;

    fn lit(v: f64) -> Self {
        <Self as NumCast>::from(v).expect("float literal")
    }

    /// Exact conversion from an integer, or an error if precision would be lost.
    fn exact_from<T: Integer>(v: T) -> Result<Self> {
        let wide = v.to_i128().ok_or_else(|| Error::InexactConversion(v.to_string()))?;
        let limit = 1i128 << Self::MANTISSA_DIGITS;
        if wide.abs() > limit {
            return Err(Error::InexactConversion(v.to_string()));
        }
        <Self as NumCast>::from(wide).ok_or_else(|| Error::InexactConversion(v.to_string()))
    }
}

impl Real for f32 {
    const MANTISSA_DIGITS: u32 = f32::MANTISSA_DIGITS;
}

impl Real for f64 {
    const MANTISSA_DIGITS: u32 = f64::MANTISSA_DIGITS;
}
