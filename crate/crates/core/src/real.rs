//! Working-precision scalar abstraction.
//!
//! Every solver in this crate is generic over [`Real`], which is implemented
//! for `f32` and `f64`. The extra items beyond [`num_traits::Float`] are the
//! constants the error-free transforms need: the significand width, the
//! Dekker splitting factor and double-word values of pi.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, NumAssign};

mod sealed {
    pub trait Sealed {}
    impl Sealed for f32 {}
    impl Sealed for f64 {}
}

pub trait Real:
    Float
    + FloatConst
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
    + sealed::Sealed
{
    /// Number of significand bits including the implicit one.
    const SIGNIFICAND_BITS: u32;

    /// `2^ceil(p/2) + 1`, the constant used by Veltkamp/Dekker splitting.
    const SPLIT_FACTOR: Self;

    /// Leading and trailing parts of 2*pi, `hi + lo` accurate to roughly
    /// twice the working precision.
    const TWO_PI_HI: Self;
    const TWO_PI_LO: Self;

    /// Leading and trailing parts of pi/2.
    const HALF_PI_HI: Self;
    const HALF_PI_LO: Self;

    fn from_f64(x: f64) -> Self;

    fn to_f64(self) -> f64;

    #[inline]
    fn from_usize(n: usize) -> Self {
        Self::from_f64(n as f64)
    }

    #[inline]
    fn from_i64(n: i64) -> Self {
        Self::from_f64(n as f64)
    }

    /// Unit roundoff `2^-p`.
    #[inline]
    fn unit_roundoff() -> Self {
        Self::epsilon() * Self::from_f64(0.5)
    }
}

impl Real for f64 {
    const SIGNIFICAND_BITS: u32 = f64::MANTISSA_DIGITS;
    const SPLIT_FACTOR: f64 = 134_217_729.0; // 2^27 + 1

    const TWO_PI_HI: f64 = 6.283_185_307_179_586;
    const TWO_PI_LO: f64 = 2.449_293_598_294_706_4e-16;
    const HALF_PI_HI: f64 = 1.570_796_326_794_896_6;
    const HALF_PI_LO: f64 = 6.123_233_995_736_766e-17;

    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self
    }
}

impl Real for f32 {
    const SIGNIFICAND_BITS: u32 = f32::MANTISSA_DIGITS;
    const SPLIT_FACTOR: f32 = 4097.0; // 2^12 + 1

    const TWO_PI_HI: f32 = 6.283_185_5;
    const TWO_PI_LO: f32 = -1.748_455_5e-7;
    const HALF_PI_HI: f32 = 1.570_796_4;
    const HALF_PI_LO: f32 = -4.371_139e-8;

    #[inline]
    fn from_f64(x: f64) -> Self {
        x as f32
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self as f64
    }
}
