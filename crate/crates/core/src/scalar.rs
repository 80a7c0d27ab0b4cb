//! Scalar abstraction shared by every numeric module.
//!
//! Everything that touches floating point is generic over [`Real`], which is
//! implemented for `f32` and `f64`. The crate root exports `f64` aliases for
//! the common types. Closed-form quantities with integer inputs (`f0`, the
//! collision parameter) only need field arithmetic and also accept exact
//! rationals through [`Field`].

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, Num, NumAssign, ToPrimitive};

/// Real floating-point scalar.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal. Panics only if the target type cannot
    /// represent finite `f64` values at all, which no implementor does.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn from_int(x: i64) -> Self {
        Self::from_i64(x).expect("integer representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Machine epsilon of the type, as a plain value.
    #[inline]
    fn eps() -> Self {
        Self::epsilon()
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Field arithmetic with integer embedding: floats and exact rationals.
pub trait Field: Num + Clone + FromPrimitive + Debug {
    #[inline]
    fn int(x: i64) -> Self {
        Self::from_i64(x).expect("integer representable")
    }
}

impl<T: Num + Clone + FromPrimitive + Debug> Field for T {}

pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn c<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn cre<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

#[inline]
pub(crate) fn ci<T: Real>() -> C<T> {
    Complex::new(T::zero(), T::one())
}
